"""Characters at the critical level and the identities that tie them together.

Every formula whose denominator contains the degree-0 factors
``prod_{alpha>0} (1 - e^{-alpha})`` is evaluated with those factors already
folded into the finite Weyl character ch E(lambda_bar); the remaining factors
all have positive delta-degree and expand as geometric series.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .charseries import (
    AffineCharacter,
    CharacterError,
    Offset,
    QSeries,
    finite_weyl_character,
    from_finite,
    kostant_series,
    mul,
    mul_inverse_factor,
    unit,
)
from .rootdata import RootSystem, Weight, is_admissible_highest_weight, pairing

EXACT = "exact-match"
MISMATCH = "mismatch"


class AdmissibilityError(ValueError):
    """Highest weight outside the critical-level dominant set."""


@dataclass(frozen=True)
class Discrepancy:
    slice: int
    offset: Offset
    expected: int
    actual: int

    def as_record(self) -> dict:
        return {"slice": self.slice, "offset": list(self.offset),
                "expected": str(self.expected), "actual": str(self.actual)}


@dataclass(frozen=True)
class VerificationReport:
    identity_name: str
    rs_label: str
    lambda_bar: tuple
    N: int
    status: str
    first_discrepancy: Discrepancy | None = None
    details: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return self.status == EXACT

    def as_record(self) -> dict:
        return {
            "identity": self.identity_name,
            "type": self.rs_label,
            "lambda_bar": [str(x) for x in self.lambda_bar],
            "depth": self.N,
            "status": self.status,
            "first_discrepancy": self.first_discrepancy.as_record() if self.first_discrepancy else None,
            "details": self.details,
        }

    def summary(self) -> str:
        lam = ",".join(str(x) for x in self.lambda_bar)
        line = f"{'PASS' if self.ok else 'FAIL'} {self.identity_name} {self.rs_label} lambda=({lam}) N={self.N}"
        if self.first_discrepancy:
            d = self.first_discrepancy
            line += f" first discrepancy at slice {d.slice} offset {d.offset}: expected {d.expected}, got {d.actual}"
        return line


def _require_admissible(rs: RootSystem, lam: Weight) -> None:
    if not is_admissible_highest_weight(lam, rs):
        raise AdmissibilityError(
            f"{lam} is not a dominant integral weight at the critical level {-rs.dual_coxeter} for {rs.label}"
        )


def _lam_bar(lam: Weight) -> tuple[int, ...]:
    return tuple(int(x) for x in lam.finite)


def shifted_heights(rs: RootSystem, lam: Weight) -> list[int]:
    """<lam + rho, alpha^vee> for alpha in the finite positive roots."""
    lam_rho = lam + rs.rho()
    out = []
    for a in rs.positive_roots:
        k = pairing(rs, lam_rho, a)
        assert k.denominator == 1
        out.append(int(k))
    return out


def loop_product(rs: RootSystem, N: int, base: Weight | None = None) -> AffineCharacter:
    """prod_{n=1..N} prod_{beta in roots} (1 - q^{-n} e^{-beta})^{-1}."""
    c = unit(rs, N, base)
    for n in range(1, N + 1):
        for beta in rs.roots:
            c = mul_inverse_factor(c, beta, n)
    return c


def weyl_module_character(rs: RootSystem, lam: Weight, N: int) -> AffineCharacter:
    """ch V(lam) = ch E(lam_bar) / prod_{j>=1}(1-q^{-j})^l prod_{n>=1, beta}(1-q^{-n}e^{-beta})."""
    _require_admissible(rs, lam)
    c = mul(from_finite(rs, finite_weyl_character(rs, _lam_bar(lam)), N, lam), loop_product(rs, N))
    for j in range(1, N + 1):
        c = mul_inverse_factor(c, (0,) * rs.rank, j, rs.rank)
    return _tag(c, "weyl-module")


def critical_character(rs: RootSystem, lam: Weight, N: int) -> AffineCharacter:
    """ch L(lam) at the critical level."""
    _require_admissible(rs, lam)
    c = mul(from_finite(rs, finite_weyl_character(rs, _lam_bar(lam)), N, lam), loop_product(rs, N))
    for k in shifted_heights(rs, lam):
        if k <= N:
            c = mul_inverse_factor(c, (0,) * rs.rank, k)
    return _tag(c, "main")


def default_height(rs: RootSystem, N: int) -> int:
    return N * rs.height(rs.highest_root) + 10


def generic_character(rs: RootSystem, lam: Weight, N: int, H: int | None = None) -> AffineCharacter:
    """e^lam / prod over positive real roots of (1 - e^{-alpha}), offsets of height <= H."""
    if lam.rank != rs.rank:
        raise CharacterError(f"{rs.label} weights need {rs.rank} coordinates")
    H = default_height(rs, N) if H is None else H
    loops = loop_product(rs, N)
    # loop factors lower heights by at most N·ht(theta); the degree-0 part must reach that far
    inner_cap = H + max(0, -loops.min_height())
    finite_part = AffineCharacter(
        rs.label, lam, (kostant_series(rs, inner_cap),) + tuple({} for _ in range(N)), inner_cap
    )
    c = mul(finite_part, loops)
    assert c.height_cap is not None and c.height_cap >= H
    return _tag(AffineCharacter(rs.label, lam, c.slices, H), "generic")


def endring_character(rs: RootSystem, lam: Weight, N: int) -> QSeries:
    """prod_{alpha>0}(1 - q^{-<lam+rho, alpha^vee>}) / prod_{j>=1}(1 - q^{-j})^l."""
    _require_admissible(rs, lam)
    s = QSeries.one(N)
    for k in shifted_heights(rs, lam):
        s = s.mul_factor(k)
    for j in range(1, N + 1):
        s = s.mul_inverse_factor(j, rs.rank)
    return s


def qseries_as_character(rs: RootSystem, s: QSeries) -> AffineCharacter:
    zero = (0,) * rs.rank
    return AffineCharacter(rs.label, rs.zero(), tuple({zero: c} for c in s.coefficients))


def _tag(c: AffineCharacter, name: str) -> AffineCharacter:
    return AffineCharacter(c.rs_label, c.base, c.slices, c.height_cap, name)


# ---- comparisons -------------------------------------------------------------

def first_difference(expected: AffineCharacter, actual: AffineCharacter) -> Discrepancy | None:
    """First (slice, offset) in canonical order where two characters disagree."""
    N = min(expected.N, actual.N)
    for n in range(N + 1):
        a, b = expected.slices[n], actual.slices[n]
        for o in sorted(set(a) | set(b)):
            if a.get(o, 0) != b.get(o, 0):
                return Discrepancy(n, o, a.get(o, 0), b.get(o, 0))
    return None


def compare_characters(name: str, rs: RootSystem, lam: Weight, N: int,
                       expected: AffineCharacter, actual: AffineCharacter, **details) -> VerificationReport:
    d = first_difference(expected.truncate(N), actual.truncate(N))
    return VerificationReport(name, rs.label, tuple(lam.finite), N, EXACT if d is None else MISMATCH, d, details)


def verify_factorization(rs: RootSystem, lam: Weight, N: int) -> VerificationReport:
    """ch V(lam) == ch End-ring · ch L(lam), compared slice by slice."""
    lhs = weyl_module_character(rs, lam, N)
    rhs = mul(qseries_as_character(rs, endring_character(rs, lam, N)), critical_character(rs, lam, N))
    return compare_characters("factorization", rs, lam, N, lhs, rhs)


class DecompositionError(ArithmeticError):
    def __init__(self, discrepancy: Discrepancy):
        super().__init__(f"triangular division leaves a remainder at {discrepancy}")
        self.discrepancy = discrepancy


def decomposition_multiplicities(rs: RootSystem, lam: Weight, N: int) -> QSeries:
    """m_n with ch V(lam) = sum_n m_n q^{-n} ch L(lam), by triangular division."""
    V = weyl_module_character(rs, lam, N)
    L = critical_character(rs, lam, N)
    zero = (0,) * rs.rank
    assert L.slices[0].get(zero) == 1
    m: list[int] = []
    for n in range(N + 1):
        m.append(V.slices[n].get(zero, 0) - sum(m[k] * L.slices[n - k].get(zero, 0) for k in range(n)))
    recombined = mul(qseries_as_character(rs, QSeries(tuple(m))), L)
    d = first_difference(V, recombined)
    if d is not None:
        raise DecompositionError(d)
    return QSeries(tuple(m))


def verify_multiplicities(rs: RootSystem, lam: Weight, N: int) -> VerificationReport:
    """Multiplicities from division equal the End-ring series and are all >= 0."""
    try:
        m = decomposition_multiplicities(rs, lam, N)
    except DecompositionError as e:
        return VerificationReport("multiplicities", rs.label, tuple(lam.finite), N, MISMATCH, e.discrepancy,
                                  {"reason": "remainder"})
    e = endring_character(rs, lam, N)
    zero = (0,) * rs.rank
    details = {"multiplicities": [str(x) for x in m.coefficients]}
    for n, (a, b) in enumerate(zip(e.coefficients, m.coefficients)):
        if a != b:
            return VerificationReport("multiplicities", rs.label, tuple(lam.finite), N, MISMATCH,
                                      Discrepancy(n, zero, a, b), details)
        if b < 0:
            return VerificationReport("multiplicities", rs.label, tuple(lam.finite), N, MISMATCH,
                                      Discrepancy(n, zero, 0, b), {**details, "reason": "negative"})
    return VerificationReport("multiplicities", rs.label, tuple(lam.finite), N, EXACT, None, details)


def check_upper_bound(rs: RootSystem, lam: Weight, N: int, H: int | None = None) -> VerificationReport:
    """ch L(lam) <= generic formula coefficientwise, offsets of height <= H.

    A discrepancy records the generic coefficient as ``expected`` (the bound)
    and the critical coefficient as ``actual``.
    """
    H = default_height(rs, N) if H is None else H
    crit = critical_character(rs, lam, N)
    gen = generic_character(rs, lam, N, H)
    checked = 0
    for n in range(N + 1):
        for o, v in crit.slices[n].items():
            if sum(o) > H:
                continue
            checked += 1
            bound = gen.slices[n].get(o, 0)
            if v < 0 or v > bound:
                return VerificationReport("upper-bound", rs.label, tuple(lam.finite), N, MISMATCH,
                                          Discrepancy(n, o, bound, v), {"height": H})
    return VerificationReport("upper-bound", rs.label, tuple(lam.finite), N, EXACT, None,
                              {"height": H, "checked": checked})


FORMULAS = {
    "main": critical_character,
    "weyl-module": weyl_module_character,
    "generic": generic_character,
}


def character(formula: str, rs: RootSystem, lam: Weight, N: int, H: int | None = None) -> AffineCharacter:
    if formula == "generic":
        return generic_character(rs, lam, N, H)
    if formula == "endring":
        return qseries_as_character(rs, endring_character(rs, lam, N))
    try:
        return FORMULAS[formula](rs, lam, N)
    except KeyError:
        raise ValueError(f"unknown formula {formula!r}") from None
