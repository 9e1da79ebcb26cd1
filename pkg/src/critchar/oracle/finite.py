"""Finite-dimensional irreducible modules and structure constants, from scratch.

E(lambda_bar) is realised as the quotient of the module freely generated by
the f_i over the highest weight line (only [e_i, f_j] = delta_ij h_i is used)
by the radical of its contravariant form.  That quotient is the irreducible
module, so the Serre relations never have to be imposed by hand.  The Lie
algebra itself is read off from matrices in a faithful irreducible module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..linalg import independent_rows, solve
from ..rootdata import RootSystem, build_root_system

Matrix = list[list[Fraction]]

DEFAULT_MAX_RANK = 2


class OracleBoundError(ValueError):
    """A request exceeds the configured oracle resource bounds."""


def _zeros(r, c) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = list(zip(*B)) if B else []
    return [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in Bt] for row in A]


def commutator(A: Matrix, B: Matrix) -> Matrix:
    AB, BA = matmul(A, B), matmul(B, A)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(AB, BA)]


def _is_zero(A: Matrix) -> bool:
    return all(x == 0 for row in A for x in row)


class FiniteModule:
    """Irreducible module E(lambda_bar) with a weight basis and its contravariant form.

    Basis vectors are grouped by offset ``o`` (weight ``lambda_bar - o``).  The
    attributes ``e`` / ``f`` / ``h`` hold dense matrices of the simple
    generators; ``gram`` is the (block-diagonal, nonsingular) form.
    """

    def __init__(self, rs: RootSystem, lambda_bar: Sequence[int]):
        self.rs = rs
        self.lambda_bar = tuple(int(x) for x in lambda_bar)
        if len(self.lambda_bar) != rs.rank or any(x < 0 for x in self.lambda_bar):
            raise ValueError(f"lambda_bar={lambda_bar} is not dominant integral for {rs.label}")
        self._build()

    def _weight(self, o) -> tuple[int, ...]:
        d = self.rs.root_to_dynkin(o)
        return tuple(a - b for a, b in zip(self.lambda_bar, d))

    def _build(self) -> None:
        rs, l = self.rs, self.rs.rank
        zero = (0,) * l
        shift = lambda o, i, s=1: tuple(x + s * (j == i) for j, x in enumerate(o))
        # per offset: list of words, Gram block, maps E_i: o -> o - a_i, F_i: o - a_i -> o
        words: dict[tuple, list[tuple[int, ...]]] = {zero: [()]}
        gram: dict[tuple, Matrix] = {zero: [[Fraction(1)]]}
        Emap: dict[tuple[tuple, int], list[list[Fraction]]] = {}
        Fmap: dict[tuple[tuple, int], list[list[Fraction]]] = {}

        def coords_e(i, o, vec_coords):
            """e_i applied to a vector of space o (coords) -> coords in o - a_i."""
            src = shift(o, i, -1)
            if src not in words:
                return None
            cols = Emap[(o, i)]
            out = [Fraction(0)] * len(words[src])
            for c, x in enumerate(vec_coords):
                if x:
                    for r, y in enumerate(cols[c]):
                        out[r] += x * y
            return out

        def coords_f(i, o, vec_coords):
            """f_i applied to a vector of space o -> coords in o + a_i (None if that space is 0)."""
            tgt = shift(o, i)
            if tgt not in words:
                return None
            cols = Fmap[(tgt, i)]
            out = [Fraction(0)] * len(words[tgt])
            for c, x in enumerate(vec_coords):
                if x:
                    for r, y in enumerate(cols[c]):
                        out[r] += x * y
            return out

        frontier = [zero]
        order = [zero]
        while frontier:
            nxt = sorted({shift(o, i) for o in frontier for i in range(l)})
            new_frontier = []
            for o in nxt:
                # candidates f_i b for basis vectors b of o - a_i
                cands = []
                for i in range(l):
                    src = shift(o, i, -1)
                    if src in words:
                        cands += [(i, k) for k in range(len(words[src]))]
                if not cands:
                    continue
                lam = self._weight(o)
                # e_i f_j b' = f_j e_i b' + delta_ij h_i b'  (in space o - a_i)
                efv: dict[tuple[int, int, int], list[Fraction] | None] = {}
                for i in range(l):
                    tgt = shift(o, i, -1)
                    if tgt not in words:
                        continue
                    for (j, k) in cands:
                        src = shift(o, j, -1)
                        unit_vec = [Fraction(int(r == k)) for r in range(len(words[src]))]
                        out = [Fraction(0)] * len(words[tgt])
                        lower = shift(src, i, -1)
                        if lower in words:
                            ei = coords_e(i, src, unit_vec)
                            fj = coords_f(j, lower, ei)
                            if fj is not None:
                                out = [a + b for a, b in zip(out, fj)]
                        if i == j:
                            h_val = self._weight(src)[i]
                            out[k] += h_val
                        efv[(i, j, k)] = out
                # Gram of candidates: <f_i b, f_j b'> = <b, e_i f_j b'>
                G = []
                for (i, k) in cands:
                    tgt = shift(o, i, -1)
                    row = []
                    for (j, k2) in cands:
                        v = efv[(i, j, k2)]
                        row.append(sum((gram[tgt][k][r] * v[r] for r in range(len(v))), Fraction(0)))
                    G.append(row)
                pick = independent_rows(G)
                if not pick:
                    continue
                words[o] = [(cands[p][0],) + words[shift(o, cands[p][0], -1)][cands[p][1]] for p in pick]
                Gb = [[G[p][q] for q in pick] for p in pick]
                gram[o] = Gb
                for i in range(l):
                    src = shift(o, i, -1)
                    if src not in words:
                        continue
                    # E_i columns: e_i of each basis vector of o
                    Emap[(o, i)] = [efv[(i, cands[p][0], cands[p][1])] for p in pick]
                    # F_i columns: coords of f_i b for b in basis(src), via pairings with basis(o)
                    cols = []
                    for k in range(len(words[src])):
                        c_idx = cands.index((i, k))
                        rhs = [G[p][c_idx] for p in pick]
                        cols.append(solve(Gb, rhs))
                    Fmap[(o, i)] = cols
                order.append(o)
                new_frontier.append(o)
            frontier = new_frontier
        order.sort(key=lambda o: (sum(o), tuple(-x for x in o)))
        self.offsets_order = order
        self.words = words
        self.basis: list[tuple[tuple, int]] = [(o, k) for o in order for k in range(len(words[o]))]
        self.index = {b: n for n, b in enumerate(self.basis)}
        dim = len(self.basis)
        self.dim = dim
        self.gram = _zeros(dim, dim)
        for o in order:
            for a in range(len(words[o])):
                for b in range(len(words[o])):
                    self.gram[self.index[(o, a)]][self.index[(o, b)]] = gram[o][a][b]
        self.e, self.f, self.h = [], [], []
        for i in range(l):
            E, F, H = _zeros(dim, dim), _zeros(dim, dim), _zeros(dim, dim)
            for o in order:
                for a in range(len(words[o])):
                    col = self.index[(o, a)]
                    H[col][col] = Fraction(self._weight(o)[i])
                    if (o, i) in Emap:
                        for r, x in enumerate(Emap[(o, i)][a]):
                            E[self.index[(shift(o, i, -1), r)]][col] = x
                    up = shift(o, i)
                    if (up, i) in Fmap:
                        for r, x in enumerate(Fmap[(up, i)][a]):
                            F[self.index[(up, r)]][col] = x
            self.e.append(E)
            self.f.append(F)
            self.h.append(H)

    def offset_of(self, idx: int) -> tuple[int, ...]:
        return self.basis[idx][0]

    def character(self) -> dict[tuple[int, ...], int]:
        return {o: len(ws) for o, ws in self.words.items()}


@dataclass(frozen=True)
class BasisElement:
    kind: str  # "f", "h" or "e"
    index: int  # positive-root index for e/f, simple index for h
    offset: tuple[int, ...]  # change of offset (lambda - weight) when applied

    @property
    def name(self) -> str:
        return f"{self.kind}{self.index}"


class LieAlgebra:
    """Basis, brackets and invariant form of the finite simple Lie algebra.

    Basis order is f_gamma (by height), h_1..h_l, e_gamma (by height); root
    vectors are nested brackets ``e_gamma = [e_i, e_{gamma - alpha_i}]`` and
    ``f_gamma = [f_{gamma - alpha_i}, f_i]``, so the Chevalley antiinvolution
    swaps e_gamma and f_gamma exactly.
    """

    def __init__(self, rs: RootSystem, faithful: FiniteModule | None = None):
        self.rs = rs
        roots = list(rs.positive_roots)
        P, l = len(roots), rs.rank
        self.positive_roots = roots
        self.recipe: list[tuple[int, int] | None] = []
        root_index = {r: k for k, r in enumerate(roots)}
        for k, g in enumerate(roots):
            if k < l:
                self.recipe.append(None)
                continue
            for i in range(l):
                prev = tuple(x - (j == i) for j, x in enumerate(g))
                if prev in root_index:
                    self.recipe.append((i, root_index[prev]))
                    break
        self.elements: list[BasisElement] = (
            [BasisElement("f", k, tuple(r)) for k, r in enumerate(roots)]
            + [BasisElement("h", i, (0,) * l) for i in range(l)]
            + [BasisElement("e", k, tuple(-x for x in r)) for k, r in enumerate(roots)]
        )
        self.dim = len(self.elements)
        self.f_id = lambda k: k
        self.h_id = lambda i: P + i
        self.e_id = lambda k: P + l + k
        self.omega = [self.e_id(k) for k in range(P)] + [self.h_id(i) for i in range(l)] + [
            self.f_id(k) for k in range(P)
        ]
        if faithful is None:
            faithful = FiniteModule(rs, smallest_fundamental(rs))
        self.faithful = faithful
        mats = self.matrices(faithful)
        self.bracket = self._brackets(mats)
        self.form = self._form()

    def matrices(self, module: FiniteModule) -> list[Matrix]:
        """Matrices of every basis element acting on ``module``."""
        P, l = len(self.positive_roots), self.rs.rank
        e: list[Matrix] = [None] * P  # type: ignore[list-item]
        f: list[Matrix] = [None] * P  # type: ignore[list-item]
        for k in range(P):
            if k < l:
                e[k], f[k] = module.e[k], module.f[k]
            else:
                i, prev = self.recipe[k]
                e[k] = commutator(module.e[i], e[prev])
                f[k] = commutator(f[prev], module.f[i])
        h = [commutator(module.e[i], module.f[i]) for i in range(l)]
        return f + h + e

    def _brackets(self, mats: list[Matrix]) -> list[list[dict[int, Fraction]]]:
        by_offset: dict[tuple, list[int]] = {}
        for b, el in enumerate(self.elements):
            by_offset.setdefault(el.offset, []).append(b)
        flat = [[x for row in M for x in row] for M in mats]
        table: list[list[dict[int, Fraction]]] = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for a in range(self.dim):
            for b in range(self.dim):
                C = commutator(mats[a], mats[b])
                if _is_zero(C):
                    continue
                off = tuple(x + y for x, y in zip(self.elements[a].offset, self.elements[b].offset))
                cands = by_offset.get(off)
                if not cands:
                    raise ArithmeticError(f"bracket of {a},{b} has weight {off} outside the algebra")
                target = [x for row in C for x in row]
                system = [[flat[c][p] for c in cands] for p in range(len(target))]
                coeffs = solve(system, target)
                table[a][b] = {c: x for c, x in zip(cands, coeffs) if x}
        return table

    def _form(self) -> list[list[Fraction]]:
        rs, l, P = self.rs, self.rs.rank, len(self.positive_roots)
        simple = rs.simple_roots
        F = _zeros(self.dim, self.dim)
        hh = [[rs.root_form(simple[i], simple[j]) * 4 / (rs.root_lengths[i] * rs.root_lengths[j])
               for j in range(l)] for i in range(l)]
        for i in range(l):
            for j in range(l):
                F[self.h_id(i)][self.h_id(j)] = hh[i][j]
        for k, g in enumerate(self.positive_roots):
            ef = self.bracket[self.e_id(k)][self.f_id(k)]
            dyn = rs.root_to_dynkin(g)
            kk = next(i for i in range(l) if dyn[i])
            # (h_k | [e, f]) = ([h_k, e] | f) = <gamma, alpha_k^vee> (e | f)
            val = sum((c * hh[kk][b - P] for b, c in ef.items()), Fraction(0)) / dyn[kk]
            F[self.e_id(k)][self.f_id(k)] = val
            F[self.f_id(k)][self.e_id(k)] = val
        return F

    def bracket_vector(self, x: dict[int, Fraction], y: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in self.bracket[a][b].items():
                    out[c] = out.get(c, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}

    def form_vector(self, x: dict[int, Fraction], y: dict[int, Fraction]) -> Fraction:
        return sum((ca * cb * self.form[a][b] for a, ca in x.items() for b, cb in y.items()), Fraction(0))


def smallest_fundamental(rs: RootSystem) -> tuple[int, ...]:
    best = min(range(rs.rank), key=lambda i: (rs.weyl_dimension(rs.fundamental_weights[i]), i))
    return rs.fundamental_weights[best]


@lru_cache(maxsize=None)
def _lie_cached(type_label: str, rank: int) -> LieAlgebra:
    return LieAlgebra(build_root_system(type_label, rank))


def structure_constants(rs: RootSystem, max_rank: int = DEFAULT_MAX_RANK) -> LieAlgebra:
    """Bracket table and invariant form for the finite algebra of ``rs``."""
    if rs.rank > max_rank:
        raise OracleBoundError(f"{rs.label}: rank {rs.rank} exceeds oracle bound {max_rank}")
    return _lie_cached(rs.type_label, rs.rank)
