"""Truncated formal characters with exact integer multiplicities.

An :class:`AffineCharacter` stores, for each delta-degree ``n <= N``, a sparse
map from finite offsets ``beta`` (simple-root coordinates) to the multiplicity
of ``e^(base - n·delta - beta)``.  Slices never need inverting an ``n = 0``
factor, so every slice of a module character is finitely supported; the one
exception (the Kostant series in the generic formula) carries an explicit
height cap.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .rootdata import RootSystem, Weight, build_root_system, is_dominant_integral, weyl_group

Offset = tuple[int, ...]
Terms = Mapping[Offset, int]


class CharacterError(ValueError):
    pass


def _clean(terms: Mapping[Offset, int]) -> dict[Offset, int]:
    return {k: v for k, v in sorted(terms.items()) if v}


def _height(o: Offset) -> int:
    return sum(o)


def _add(o: Offset, p: Offset) -> Offset:
    return tuple(a + b for a, b in zip(o, p))


def convolve(a: Terms, b: Terms, height_cap: int | None = None) -> dict[Offset, int]:
    out: dict[Offset, int] = defaultdict(int)
    if len(a) < len(b):
        a, b = b, a
    for kb, vb in b.items():
        for ka, va in a.items():
            k = _add(ka, kb)
            if height_cap is not None and sum(k) > height_cap:
                continue
            out[k] += va * vb
    return _clean(out)


def _accumulate(out: dict[Offset, int], terms: Terms, scale: int = 1) -> None:
    for k, v in terms.items():
        out[k] = out.get(k, 0) + scale * v


# ---- finite characters ------------------------------------------------------

@dataclass(frozen=True)
class FiniteCharacter:
    """Multiplicities of ``e^(top - offset)`` on the finite weight lattice."""

    top: tuple[int, ...]
    terms: Mapping[Offset, int]

    def __post_init__(self):
        object.__setattr__(self, "top", tuple(int(x) for x in self.top))
        object.__setattr__(self, "terms", _clean(self.terms))

    def dimension(self) -> int:
        return sum(self.terms.values())

    def __getitem__(self, offset: Offset) -> int:
        return self.terms.get(tuple(offset), 0)

    def weights(self, rs: RootSystem) -> dict[tuple[int, ...], int]:
        """Multiplicities keyed by Dynkin coordinates of the weight."""
        out = {}
        for o, m in self.terms.items():
            d = rs.root_to_dynkin(o)
            out[tuple(t - x for t, x in zip(self.top, d))] = m
        return out

    def __mul__(self, other: "FiniteCharacter") -> "FiniteCharacter":
        return FiniteCharacter(_add(self.top, other.top), convolve(self.terms, other.terms))


def _check_dominant(rs: RootSystem, lambda_bar: Sequence) -> tuple[int, ...]:
    if len(lambda_bar) != rs.rank:
        raise CharacterError(f"{rs.label} weights need {rs.rank} coordinates, got {len(lambda_bar)}")
    if not is_dominant_integral(lambda_bar):
        raise CharacterError(f"lambda_bar={tuple(lambda_bar)} is not dominant integral")
    return tuple(int(x) for x in lambda_bar)


def divide_one_minus(terms: Terms, alpha: Offset) -> dict[Offset, int]:
    """Exact quotient ``terms / (1 - e^{-alpha})``; raises if it does not divide."""
    k = next(i for i, c in enumerate(alpha) if c)
    strings: dict[Offset, dict[int, int]] = defaultdict(dict)
    for o, v in terms.items():
        t = o[k] // alpha[k]
        base = tuple(x - t * a for x, a in zip(o, alpha))
        strings[base][t] = v
    out: dict[Offset, int] = {}
    for base, line in strings.items():
        lo, hi = min(line), max(line)
        running = 0
        for t in range(lo, hi + 1):
            running += line.get(t, 0)
            if running:
                out[tuple(b + t * a for b, a in zip(base, alpha))] = running
        if running:
            raise CharacterError("numerator is not divisible by the Weyl denominator")
    return out


@lru_cache(maxsize=None)
def _weyl_character_terms(type_label: str, rank: int, lambda_bar: tuple[int, ...]) -> tuple:
    rs = build_root_system(type_label, rank)
    numerator: dict[Offset, int] = defaultdict(int)
    shifted = tuple(x + 1 for x in lambda_bar)
    for w in weyl_group(rs):
        img = w.act(shifted)
        # offset of w∘lambda from lambda, i.e. (lambda + rho) - w(lambda + rho)
        diff = rs.dynkin_to_root(tuple(a - b for a, b in zip(shifted, img)))
        numerator[tuple(int(x) for x in diff)] += w.sign
    terms = _clean(numerator)
    for alpha in rs.positive_roots:
        terms = divide_one_minus(terms, alpha)
    return tuple(sorted(terms.items()))


def finite_weyl_character(rs: RootSystem, lambda_bar: Sequence) -> FiniteCharacter:
    """ch E(lambda_bar) from the Weyl character formula (alternating sum / denominator)."""
    lam = _check_dominant(rs, lambda_bar)
    return FiniteCharacter(lam, dict(_weyl_character_terms(rs.type_label, rs.rank, lam)))


def _dominant_conjugate(rs: RootSystem, mu: tuple) -> tuple:
    A = rs.cartan_matrix
    mu = list(mu)
    while True:
        i = next((j for j, x in enumerate(mu) if x < 0), None)
        if i is None:
            return tuple(mu)
        mi = mu[i]
        for k in range(rs.rank):
            mu[k] -= mi * A[k][i]


def freudenthal_character(rs: RootSystem, lambda_bar: Sequence) -> FiniteCharacter:
    """ch E(lambda_bar) by Freudenthal's multiplicity recursion on dominant weights."""
    lam = _check_dominant(rs, lambda_bar)
    group = weyl_group(rs)
    longest = max(group, key=lambda w: w.length)
    span = rs.dynkin_to_root(tuple(a - b for a, b in zip(lam, longest.act(lam))))
    # dominant weights of E lie in lam - Q+ above the lowest weight w0(lam)
    box = [range(int(b) + 1) for b in span]
    candidates = []
    for o in _product(box):
        mu = tuple(a - b for a, b in zip(lam, rs.root_to_dynkin(o)))
        if all(x >= 0 for x in mu):
            candidates.append((sum(o), o, mu))
    candidates.sort()
    lam_rho = tuple(Fraction(x + 1) for x in lam)
    norm_top = rs.weight_form(lam_rho, lam_rho)
    mult: dict[tuple, int] = {lam: 1}
    pos = [(a, rs.root_to_dynkin(a), rs.root_form(a, a)) for a in rs.positive_roots]
    lam_height = sum(rs.dynkin_to_root(lam))
    for _, o, mu in candidates:
        if mu == lam:
            continue
        mu_rho = tuple(Fraction(x + 1) for x in mu)
        denom = norm_top - rs.weight_form(mu_rho, mu_rho)
        total = Fraction(0)
        for a, a_dyn, a_norm in pos:
            k = 1
            while True:
                nu = tuple(m + k * x for m, x in zip(mu, a_dyn))
                if sum(rs.dynkin_to_root(nu)) > lam_height:
                    break
                m_nu = mult.get(_dominant_conjugate(rs, nu), 0)
                if m_nu:
                    # (nu|alpha) = <nu, alpha^vee>·(alpha|alpha)/2
                    total += m_nu * rs.pair_finite(nu, a) * a_norm / 2
                k += 1
        if denom == 0:
            if total:
                raise CharacterError("Freudenthal recursion hit a zero denominator")
            continue
        value = 2 * total / denom
        assert value.denominator == 1 and value >= 0
        if value:
            mult[mu] = int(value)
    terms: dict[Offset, int] = {}
    for mu, m in mult.items():
        for nu in {w.act(mu) for w in group}:
            off = rs.dynkin_to_root(tuple(a - b for a, b in zip(lam, nu)))
            terms[tuple(int(x) for x in off)] = m
    return FiniteCharacter(lam, terms)


def _product(ranges):
    if not ranges:
        yield ()
        return
    for x in ranges[0]:
        for rest in _product(ranges[1:]):
            yield (x,) + rest


# ---- q-series -----------------------------------------------------------------

@dataclass(frozen=True)
class QSeries:
    """Truncated series ``sum_n c_n q^{-n}`` for n = 0..N."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @property
    def N(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def one(cls, N: int) -> "QSeries":
        return cls((1,) + (0,) * N)

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __mul__(self, other: "QSeries") -> "QSeries":
        N = min(self.N, other.N)
        a, b = self.coefficients, other.coefficients
        return QSeries(tuple(sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(N + 1)))

    def mul_factor(self, n: int, m: int = 1) -> "QSeries":
        """Multiply by (1 - q^{-n})^m."""
        c = list(self.coefficients)
        for _ in range(m):
            c = [c[s] - (c[s - n] if s >= n else 0) for s in range(len(c))]
        return QSeries(tuple(c))

    def mul_inverse_factor(self, n: int, m: int = 1) -> "QSeries":
        """Multiply by (1 - q^{-n})^{-m}."""
        if n < 1:
            raise CharacterError("q-series factor must have positive degree")
        c = list(self.coefficients)
        for _ in range(m):
            for s in range(n, len(c)):
                c[s] += c[s - n]
        return QSeries(tuple(c))

    def truncate(self, N: int) -> "QSeries":
        return QSeries(self.coefficients[: N + 1])


# ---- affine characters --------------------------------------------------------

@dataclass(frozen=True)
class AffineCharacter:
    """Truncated character: ``slices[n][beta]`` = mult of e^(base - n·delta - beta)."""

    rs_label: str
    base: Weight
    slices: tuple[Mapping[Offset, int], ...]
    height_cap: int | None = None
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        cleaned = []
        for s in self.slices:
            s = _clean(s)
            if self.height_cap is not None:
                s = {k: v for k, v in s.items() if sum(k) <= self.height_cap}
            cleaned.append(s)
        object.__setattr__(self, "slices", tuple(cleaned))

    @property
    def N(self) -> int:
        return len(self.slices) - 1

    @property
    def rank(self) -> int:
        return self.base.rank

    def slice(self, n: int) -> FiniteCharacter:
        top = tuple(int(x) for x in self.base.finite)
        return FiniteCharacter(top, self.slices[n])

    def truncate(self, N: int) -> "AffineCharacter":
        if N > self.N:
            raise CharacterError(f"cannot extend truncation {self.N} to {N}")
        return AffineCharacter(self.rs_label, self.base, self.slices[: N + 1], self.height_cap, self.provenance)

    def min_height(self) -> int:
        hs = [sum(k) for s in self.slices for k in s]
        return min(hs) if hs else 0

    def support(self) -> list[tuple[int, Offset]]:
        return [(n, o) for n, s in enumerate(self.slices) for o in s]

    def absolute_terms(self, rs: RootSystem) -> dict[tuple, int]:
        """Multiplicities keyed by (Dynkin finite weight, level, delta coefficient)."""
        out = {}
        for n, s in enumerate(self.slices):
            for o, m in s.items():
                d = rs.root_to_dynkin(o)
                fin = tuple(b - x for b, x in zip(self.base.finite, d))
                out[(fin, self.base.level, self.base.delta - n)] = m
        return out


def unit(rs: RootSystem, N: int, base: Weight | None = None) -> AffineCharacter:
    base = base if base is not None else rs.zero()
    slices = [{(0,) * rs.rank: 1}] + [{} for _ in range(N)]
    return AffineCharacter(rs.label, base, tuple(slices))


def from_finite(rs: RootSystem, ch: FiniteCharacter, N: int, base: Weight) -> AffineCharacter:
    return AffineCharacter(rs.label, base, (dict(ch.terms),) + tuple({} for _ in range(N)))


def _cap_after(cap: int | None, other_min_height: int) -> int | None:
    if cap is None:
        return None
    return cap - max(0, -other_min_height)


def _min_cap(*caps):
    caps = [c for c in caps if c is not None]
    return min(caps) if caps else None


def mul(a: AffineCharacter, b: AffineCharacter) -> AffineCharacter:
    """Product truncated at min(N_a, N_b); height caps shrink to stay exact."""
    if a.rs_label != b.rs_label:
        raise CharacterError(f"cannot multiply {a.rs_label} and {b.rs_label} characters")
    N = min(a.N, b.N)
    cap = _min_cap(_cap_after(a.height_cap, b.min_height()), _cap_after(b.height_cap, a.min_height()))
    slices = []
    for n in range(N + 1):
        acc: dict[Offset, int] = {}
        for i in range(n + 1):
            if a.slices[i] and b.slices[n - i]:
                _accumulate(acc, convolve(a.slices[i], b.slices[n - i], cap))
        slices.append(acc)
    return AffineCharacter(a.rs_label, a.base + b.base, tuple(slices), cap)


def _shift(terms: Terms, beta: Offset, cap: int | None) -> dict[Offset, int]:
    out = {}
    for k, v in terms.items():
        kk = _add(k, beta)
        if cap is None or sum(kk) <= cap:
            out[kk] = v
    return out


def mul_inverse_factor(c: AffineCharacter, beta: Sequence[int], n: int, m: int = 1) -> AffineCharacter:
    """Multiply by (1 - q^{-n} e^{-beta})^{-m}, expanded as a geometric series."""
    if n < 1:
        raise CharacterError("inverting a degree-0 factor would leave a slice with infinite support")
    if m < 0:
        raise CharacterError("multiplicity must be non-negative")
    beta = tuple(beta)
    cap = c.height_cap
    if cap is not None:
        cap -= max(0, -sum(beta)) * (c.N // n) * m
    slices = [dict(s) for s in c.slices]
    for _ in range(m):
        for s in range(n, len(slices)):
            _accumulate(slices[s], _shift(slices[s - n], beta, cap))
    return AffineCharacter(c.rs_label, c.base, tuple(slices), cap, c.provenance)


def mul_factor(c: AffineCharacter, beta: Sequence[int], n: int, m: int = 1) -> AffineCharacter:
    """Multiply by the polynomial (1 - q^{-n} e^{-beta})^m."""
    beta = tuple(beta)
    if n == 0 and c.height_cap is not None and sum(beta) < 0:
        raise CharacterError("negative-height shift of a height-capped character")
    slices = [dict(s) for s in c.slices]
    for _ in range(m):
        new = [dict(s) for s in slices]
        for s in range(len(slices)):
            if s >= n:
                _accumulate(new[s], _shift(slices[s - n], beta, c.height_cap), scale=-1)
        slices = new
    return AffineCharacter(c.rs_label, c.base, tuple(slices), c.height_cap, c.provenance)


def qdims(c: AffineCharacter) -> QSeries:
    if c.height_cap is not None:
        raise CharacterError("graded dimensions of a height-capped character are not defined")
    return QSeries(tuple(sum(s.values()) for s in c.slices))


def coefficient(c: AffineCharacter, beta: Sequence[int], n: int) -> int:
    """Multiplicity of e^(base - n·delta - beta)."""
    if n < 0 or n > c.N:
        raise CharacterError(f"delta-degree {n} outside truncation 0..{c.N}")
    beta = tuple(beta)
    if c.height_cap is not None and sum(beta) > c.height_cap:
        raise CharacterError(f"offset height {sum(beta)} above cap {c.height_cap}")
    return c.slices[n].get(beta, 0)


def kostant_series(rs: RootSystem, height_cap: int, roots: Iterable[Offset] | None = None) -> dict[Offset, int]:
    """Coefficients of 1/prod(1 - e^{-alpha}) over finite positive roots, heights <= cap."""
    roots = list(roots if roots is not None else rs.positive_roots)
    l = rs.rank
    offsets = [o for h in range(height_cap + 1) for o in _compositions(h, l)]
    series = {o: 0 for o in offsets}
    series[(0,) * l] = 1
    for alpha in roots:
        for o in offsets:  # increasing height, so o - alpha is already updated
            prev = tuple(x - a for x, a in zip(o, alpha))
            if prev in series:
                series[o] += series[prev]
    return _clean(series)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def binomial_series_coefficient(m: int, k: int) -> int:
    """Coefficient of x^k in (1 - x)^{-m}."""
    return comb(m + k - 1, k) if m else int(k == 0)
