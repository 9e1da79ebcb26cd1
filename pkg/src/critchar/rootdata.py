"""Finite root systems, their Weyl groups, and the affine scaffolding.

Weights carry their finite part in Dynkin (fundamental-weight) coordinates,
so pairing with a simple coroot is a coordinate read-off.  Roots are stored
as integer vectors in the simple-root basis.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Vector = tuple[int, ...]

VALID_RANKS = {
    "A": lambda l: l >= 1,
    "B": lambda l: l >= 2,
    "C": lambda l: l >= 2,
    "D": lambda l: l >= 4,
    "E": lambda l: l in (6, 7, 8),
    "F": lambda l: l == 4,
    "G": lambda l: l == 2,
}

DEFAULT_WEYL_CAP = 10**6
DUMP_FORMAT = "critchar-rootdata/1"


class RootSystemError(ValueError):
    """Invalid root-system request (bad type/rank, oversized group, ...)."""


def cartan_matrix(type_label: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix in Bourbaki numbering, ``A[i][j] = <alpha_j, alpha_i^vee>``."""
    type_label = type_label.upper()
    if type_label not in VALID_RANKS or not isinstance(rank, int) or not VALID_RANKS[type_label](rank):
        raise RootSystemError(f"invalid simple type {type_label}{rank}")
    l = rank
    A = [[0] * l for _ in range(l)]
    for i in range(l):
        A[i][i] = 2

    def link(i, j, a_ij=-1, a_ji=-1):
        A[i][j] = a_ij
        A[j][i] = a_ji

    if type_label in "ABCD":
        chain = l - 1 if type_label != "D" else l - 2
        for i in range(chain):
            link(i, i + 1)
        if type_label == "B":
            link(l - 2, l - 1, a_ij=-1, a_ji=-2)
        elif type_label == "C":
            link(l - 2, l - 1, a_ij=-2, a_ji=-1)
        elif type_label == "D":
            link(l - 3, l - 1)
    elif type_label == "E":
        # 1-3-4-5-6-..., node 2 hangs off node 4
        link(0, 2)
        link(1, 3)
        for i in range(2, l - 1):
            link(i, i + 1)
    elif type_label == "F":
        link(0, 1)
        link(1, 2, a_ij=-1, a_ji=-2)
        link(2, 3)
    elif type_label == "G":
        link(0, 1, a_ij=-3, a_ji=-1)
    return tuple(tuple(row) for row in A)


@dataclass(frozen=True)
class Weight:
    """Element of h* = h̄* + C·Lambda0 + C·delta with exact coordinates."""

    finite: tuple[Fraction, ...]
    level: Fraction = Fraction(0)
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(Fraction(x) for x in self.finite))
        object.__setattr__(self, "level", Fraction(self.level))
        object.__setattr__(self, "delta", Fraction(self.delta))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a + b for a, b in zip(self.finite, other.finite)),
            self.level + other.level,
            self.delta + other.delta,
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-1) * other

    def __rmul__(self, k) -> "Weight":
        return Weight(tuple(k * a for a in self.finite), k * self.level, k * self.delta)

    def __neg__(self) -> "Weight":
        return (-1) * self

    @property
    def rank(self) -> int:
        return len(self.finite)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.finite)

    def __str__(self) -> str:
        parts = [f"({', '.join(str(x) for x in self.finite)})"]
        if self.level:
            parts.append(f"{self.level}·Λ0")
        if self.delta:
            parts.append(f"{self.delta}·δ")
        return " + ".join(parts)


@dataclass(frozen=True)
class AffineRoot:
    """Real affine root ``finite_part + delta_degree·delta``."""

    finite_part: Vector
    delta_degree: int

    def __post_init__(self):
        if not any(self.finite_part):
            raise RootSystemError("imaginary roots n·delta are not real roots")
        if self.delta_degree < 0:
            raise RootSystemError("negative delta-degree")
        if self.delta_degree == 0 and any(c < 0 for c in self.finite_part):
            raise RootSystemError("degree-0 real root must be a positive finite root")


@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]  # acts on Dynkin coordinates

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1

    def act(self, v: Sequence) -> tuple:
        return tuple(sum(m * x for m, x in zip(row, v)) for row in self.matrix)


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Vector, ...]  # sorted by height, simple roots first
    root_lengths: tuple[Fraction, ...]  # (alpha_i|alpha_i) for simple roots; long roots = 2
    exponents: tuple[int, ...]
    _inv_cartan: tuple[tuple[Fraction, ...], ...] = field(repr=False, compare=False)

    @property
    def label(self) -> str:
        return f"{self.type_label}{self.rank}"

    # ---- coordinates and forms -------------------------------------------
    def root_to_dynkin(self, root: Sequence) -> tuple:
        A = self.cartan_matrix
        return tuple(sum(A[k][j] * root[j] for j in range(self.rank)) for k in range(self.rank))

    def dynkin_to_root(self, weight: Sequence) -> tuple[Fraction, ...]:
        C = self._inv_cartan
        return tuple(sum(C[k][j] * Fraction(weight[j]) for j in range(self.rank)) for k in range(self.rank))

    def root_form(self, a: Sequence, b: Sequence) -> Fraction:
        """(a|b) for vectors in the simple-root basis."""
        A, d = self.cartan_matrix, self.root_lengths
        return sum(
            (Fraction(a[i] * b[j] * A[i][j]) * d[i] / 2 for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def weight_form(self, x: Sequence, y: Sequence) -> Fraction:
        """(x|y) for finite weights in Dynkin coordinates."""
        return self.root_form(self.dynkin_to_root(x), self.dynkin_to_root(y))

    def coroot_coeffs(self, root: Sequence) -> tuple[Fraction, ...]:
        """beta^vee in the basis of simple coroots."""
        norm = self.root_form(root, root)
        return tuple(root[i] * self.root_lengths[i] / norm for i in range(self.rank))

    def pair_finite(self, weight: Sequence, root: Sequence) -> Fraction:
        """<mu, beta^vee> for a Dynkin-coordinate weight and a finite root."""
        return sum((c * Fraction(m) for c, m in zip(self.coroot_coeffs(root), weight)), Fraction(0))

    def height(self, v: Sequence) -> int:
        return sum(v)

    # ---- distinguished elements --------------------------------------------
    @property
    def simple_roots(self) -> tuple[Vector, ...]:
        return self.positive_roots[: self.rank]

    @property
    def fundamental_weights(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @property
    def highest_root(self) -> Vector:
        return self.positive_roots[-1]

    @property
    def roots(self) -> tuple[Vector, ...]:
        """All nonzero finite roots, positive ones first."""
        return self.positive_roots + tuple(tuple(-c for c in r) for r in self.positive_roots)

    @property
    def rho_bar(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(1) for _ in range(self.rank))

    @property
    def dual_coxeter(self) -> int:
        val = self.pair_finite(self.rho_bar, self.highest_root) + 1
        assert val.denominator == 1
        return int(val)

    @property
    def coxeter_number(self) -> int:
        return self.height(self.highest_root) + 1

    def zero(self) -> Weight:
        return Weight((0,) * self.rank)

    def Lambda0(self) -> Weight:
        return Weight((0,) * self.rank, level=1)

    def delta(self) -> Weight:
        return Weight((0,) * self.rank, delta=1)

    def rho(self) -> Weight:
        return Weight(self.rho_bar, level=self.dual_coxeter)

    def critical_weight(self, lambda_bar: Sequence, delta: int = 0) -> Weight:
        """lambda_bar + (-h^vee)·Lambda0 + delta·delta."""
        if len(lambda_bar) != self.rank:
            raise RootSystemError(f"expected {self.rank} coordinates, got {len(lambda_bar)}")
        return Weight(tuple(lambda_bar), level=-self.dual_coxeter, delta=delta)

    def weyl_dimension(self, lambda_bar: Sequence) -> int:
        """dim E(lambda_bar) via the Weyl dimension formula."""
        shifted = tuple(Fraction(x) + 1 for x in lambda_bar)
        num = Fraction(1)
        for a in self.positive_roots:
            num *= self.pair_finite(shifted, a) / self.pair_finite(self.rho_bar, a)
        assert num.denominator == 1
        return int(num)

    def dump(self) -> str:
        lines = [f"# {DUMP_FORMAT} {self.label}", f"h_vee {self.dual_coxeter}",
                 "exponents " + " ".join(map(str, self.exponents))]
        lines += ["cartan " + " ".join(map(str, row)) for row in self.cartan_matrix]
        lines += ["root " + " ".join(map(str, r)) for r in self.positive_roots]
        return "\n".join(lines) + "\n"


def _symmetrizer(A) -> tuple[Fraction, ...]:
    l = len(A)
    d: list[Fraction | None] = [None] * l
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(l):
            if j != i and A[i][j] and d[j] is None:
                # A[i][j] d_i = A[j][i] d_j
                d[j] = Fraction(A[i][j]) * d[i] / A[j][i]
                stack.append(j)
    return tuple(d)  # type: ignore[return-value]


def _positive_roots(A) -> list[Vector]:
    l = len(A)
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    found = set(simple)
    layer = list(simple)
    roots = list(simple)
    while layer:
        nxt = []
        for r in layer:
            for i in range(l):
                pair = sum(A[i][j] * r[j] for j in range(l))
                # p = how far down the alpha_i string through r goes
                p = 0
                down = list(r)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                if p - pair > 0:
                    up = list(r)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        nxt.sort(key=lambda v: tuple(-c for c in v))
        layer = nxt
        roots.extend(nxt)
    return roots


def exponents_from_heights(positive_roots: Sequence[Vector]) -> tuple[int, ...]:
    """Exponents as the partition dual to the height distribution of roots."""
    counts: dict[int, int] = {}
    for r in positive_roots:
        counts[sum(r)] = counts.get(sum(r), 0) + 1
    top = max(counts)
    exps = []
    for k in range(1, top + 1):
        exps += [k] * (counts.get(k, 0) - counts.get(k + 1, 0))
    return tuple(sorted(exps))


def _invert(A) -> tuple[tuple[Fraction, ...], ...]:
    from .linalg import inverse

    return tuple(tuple(row) for row in inverse([[Fraction(x) for x in row] for row in A]))


def build_root_system(type_label: str, rank: int) -> RootSystem:
    A = cartan_matrix(type_label, rank)
    d = _symmetrizer(A)
    roots = _positive_roots(A)
    # normalize so long roots (in particular theta) have squared length 2
    theta = roots[-1]
    norm = sum(Fraction(theta[i] * theta[j] * A[i][j]) * d[i] / 2 for i in range(rank) for j in range(rank))
    lengths = tuple(2 * di / norm for di in d)
    rs = RootSystem(
        type_label=type_label.upper(),
        rank=rank,
        cartan_matrix=A,
        positive_roots=tuple(roots),
        root_lengths=lengths,
        exponents=exponents_from_heights(roots),
        _inv_cartan=_invert(A),
    )
    return rs


# ---- pairing -----------------------------------------------------------------

def pairing(rs: RootSystem, lam: Weight, coroot) -> Fraction:
    """<lam, coroot> where coroot is ``"K"``, ``"D"``, a finite root or an AffineRoot."""
    if isinstance(coroot, str):
        if coroot == "K":
            return lam.level
        if coroot == "D":
            return lam.delta
        raise RootSystemError(f"unknown coroot {coroot!r}")
    if isinstance(coroot, AffineRoot):
        beta = coroot.finite_part
        return rs.pair_finite(lam.finite, beta) + 2 * coroot.delta_degree * lam.level / rs.root_form(beta, beta)
    if len(coroot) != rs.rank:
        raise RootSystemError("coroot/weight rank mismatch")
    return rs.pair_finite(lam.finite, coroot)


def positive_real_roots(rs: RootSystem, N: int) -> list[AffineRoot]:
    """Positive real roots with delta-degree at most N."""
    if N < 0:
        raise RootSystemError("N must be non-negative")
    out = [AffineRoot(r, 0) for r in rs.positive_roots]
    for n in range(1, N + 1):
        out.extend(AffineRoot(r, n) for r in rs.roots)
    return out


# ---- Weyl group --------------------------------------------------------------

def simple_reflection_matrix(rs: RootSystem, i: int) -> tuple[tuple[int, ...], ...]:
    A, l = rs.cartan_matrix, rs.rank
    # mu'_k = mu_k - mu_i A[k][i]
    return tuple(
        tuple(int(k == j) - (A[k][i] if j == i else 0) for j in range(l)) for k in range(l)
    )


def _matmul(M, N):
    return tuple(tuple(sum(M[i][k] * N[k][j] for k in range(len(N))) for j in range(len(N[0]))) for i in range(len(M)))


def weyl_group_order(rs: RootSystem) -> int:
    # product of (d_i + 1)
    order = 1
    for e in rs.exponents:
        order *= e + 1
    return order


def weyl_group(rs: RootSystem, cap: int = DEFAULT_WEYL_CAP) -> list[WeylElement]:
    """All elements of the finite Weyl group, identity first, in BFS (length) order."""
    if weyl_group_order(rs) > cap:
        raise RootSystemError(f"|W| = {weyl_group_order(rs)} for {rs.label} exceeds cap {cap}")
    return list(_weyl_group_cached(rs))


_WEYL_CACHE: dict[tuple[str, int], tuple[WeylElement, ...]] = {}


def _weyl_group_cached(rs: RootSystem) -> tuple[WeylElement, ...]:
    key = (rs.type_label, rs.rank)
    if key in _WEYL_CACHE:
        return _WEYL_CACHE[key]
    l = rs.rank
    gens = [simple_reflection_matrix(rs, i) for i in range(l)]
    identity = tuple(tuple(int(i == j) for j in range(l)) for i in range(l))
    rho = tuple(1 for _ in range(l))
    start = WeylElement((), identity)
    seen = {rho}
    elements = [start]
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i, S in enumerate(gens):
            M = _matmul(S, w.matrix)
            img = tuple(sum(r) for r in M)  # M applied to rho = row sums
            if img not in seen:
                seen.add(img)
                v = WeylElement((i,) + w.word, M)
                elements.append(v)
                queue.append(v)
    _WEYL_CACHE[key] = tuple(elements)
    return _WEYL_CACHE[key]


def act_on_root(rs: RootSystem, w: WeylElement, root: Sequence) -> Vector:
    img = rs.dynkin_to_root(w.act(rs.root_to_dynkin(root)))
    assert all(x.denominator == 1 for x in img)
    return tuple(int(x) for x in img)


def inversion_count(rs: RootSystem, w: WeylElement) -> int:
    return sum(1 for a in rs.positive_roots if sum(act_on_root(rs, w, a)) < 0)


def dot_action(w: WeylElement, lam: Weight, rs: RootSystem) -> Weight:
    """w∘lam = w(lam + rho) - rho; the finite Weyl group fixes Lambda0 and delta."""
    shifted = tuple(x + r for x, r in zip(lam.finite, rs.rho_bar))
    img = w.act(shifted)
    return Weight(tuple(x - r for x, r in zip(img, rs.rho_bar)), lam.level, lam.delta)


def is_dominant_integral(lambda_bar: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 and x >= 0 for x in lambda_bar)


def is_admissible_highest_weight(lam: Weight, rs: RootSystem) -> bool:
    """lam̄ dominant integral and level equal to -h^vee."""
    return lam.rank == rs.rank and is_dominant_integral(lam.finite) and lam.level == -rs.dual_coxeter
