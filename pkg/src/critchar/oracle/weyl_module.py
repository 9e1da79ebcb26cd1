"""The Weyl module V(lambda) in a PBW basis, its contravariant form and Gram ranks.

Vectors are sparse maps ``(monomial, e_index) -> Fraction`` where a monomial is
a PBW-sorted tuple of loop generators ``(mode, basis_id)`` with negative
modes, applied left to right to the ``e_index``-th basis vector of E(lambda_bar).
Sorting by ``(mode, basis_id)`` realises the order mode ascending, then
f < h < e, then root height.
"""
from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from ..charseries import AffineCharacter, qdims
from ..formulas import EXACT, MISMATCH, VerificationReport, compare_characters, critical_character, weyl_module_character
from ..linalg import bareiss_rank
from ..rootdata import RootSystem, Weight, is_admissible_highest_weight
from .finite import DEFAULT_MAX_RANK, FiniteModule, LieAlgebra, OracleBoundError, structure_constants

Generator = tuple[int, int]  # (mode, basis id)
Monomial = tuple[Generator, ...]
State = tuple[Monomial, int]
Vector = dict[State, Fraction]

DEPTH_BOUND_TRIVIAL = 4
DEPTH_BOUND = 3


def _add_into(out: Vector, vec: Vector, scale) -> None:
    for k, v in vec.items():
        nv = out.get(k, 0) + scale * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)


class WeylModule:
    """V(lambda) for lambda = lambda_bar - h^vee·Lambda0 with its PBW normal ordering."""

    def __init__(self, rs: RootSystem, lambda_bar, max_rank: int = DEFAULT_MAX_RANK):
        self.rs = rs
        self.lie: LieAlgebra = structure_constants(rs, max_rank)
        self.lam = rs.critical_weight(tuple(lambda_bar))
        if not is_admissible_highest_weight(self.lam, rs):
            raise ValueError(f"lambda_bar={tuple(lambda_bar)} is not dominant integral")
        self.level = Fraction(-rs.dual_coxeter)
        self.E = FiniteModule(rs, tuple(int(x) for x in lambda_bar))
        # sparse columns of every basis element acting on E
        self._emat: list[list[dict[int, Fraction]]] = []
        for M in self.lie.matrices(self.E):
            cols = []
            for c in range(self.E.dim):
                cols.append({r: M[r][c] for r in range(self.E.dim) if M[r][c]})
            self._emat.append(cols)
        self._memo: dict[tuple[Generator, Monomial, int], Vector] = {}
        self._monomials: dict[int, dict[tuple, list[Monomial]]] = {}

    # ---- grading -------------------------------------------------------------
    def generator_offset(self, g: Generator) -> tuple[int, ...]:
        return self.lie.elements[g[1]].offset

    def state_grade(self, state: State) -> tuple[int, tuple[int, ...]]:
        """(delta-degree, finite offset) of a PBW state."""
        mono, e = state
        off = list(self.E.offset_of(e))
        n = 0
        for mode, b in mono:
            n -= mode
            for k, x in enumerate(self.lie.elements[b].offset):
                off[k] += x
        return n, tuple(off)

    # ---- normal ordering -----------------------------------------------------
    def apply(self, g: Generator, mono: Monomial, e: int) -> Vector:
        """g · (mono ⊗ v_e) rewritten in PBW form."""
        key = (g, mono, e)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        mode, b = g
        out: Vector = {}
        if not mono:
            if mode == 0:
                out = {((), r): c for r, c in self._emat[b][e].items()}
            elif mode < 0:
                out = {((g,), e): Fraction(1)}
            # positive modes kill E(lambda_bar)
        elif mode < 0 and g <= mono[0]:
            out = {((g,) + mono, e): Fraction(1)}
        else:
            y, rest = mono[0], mono[1:]
            # g y rest = y (g rest) + [g, y] rest
            for (m2, e2), c in self.apply(g, rest, e).items():
                _add_into(out, self.apply(y, m2, e2), c)
            s = mode + y[0]
            for cb, coef in self.lie.bracket[b][y[1]].items():
                _add_into(out, self.apply((s, cb), rest, e), coef)
            if s == 0:
                central = mode * self.lie.form[b][y[1]] * self.level
                if central:
                    _add_into(out, {(rest, e): Fraction(1)}, central)
        self._memo[key] = out
        return out

    def apply_vector(self, g: Generator, vec: Vector) -> Vector:
        out: Vector = {}
        for (mono, e), c in vec.items():
            _add_into(out, self.apply(g, mono, e), c)
        return out

    def omega(self, g: Generator) -> Generator:
        mode, b = g
        return (-mode, self.lie.omega[b])

    # ---- bases -----------------------------------------------------------------
    def _monomials_of_degree(self, n: int) -> dict[tuple, list[Monomial]]:
        """PBW monomials of delta-degree n grouped by finite offset."""
        if n in self._monomials:
            return self._monomials[n]
        gens = sorted((m, b) for m in range(-n, 0) for b in range(self.lie.dim))
        groups: dict[tuple, list[Monomial]] = defaultdict(list)

        def rec(start: int, remaining: int, acc: list[Generator]):
            if remaining == 0:
                mono = tuple(acc)
                off = [0] * self.rs.rank
                for _, b in mono:
                    for k, x in enumerate(self.lie.elements[b].offset):
                        off[k] += x
                groups[tuple(off)].append(mono)
                return
            for idx in range(start, len(gens)):
                g = gens[idx]
                if -g[0] <= remaining:
                    acc.append(g)
                    rec(idx, remaining + g[0], acc)
                    acc.pop()

        rec(0, n, [])
        self._monomials[n] = dict(groups)
        return self._monomials[n]

    def weight_space_basis(self, beta, n: int) -> list[State]:
        """PBW basis of V(lambda) at weight lambda - n·delta - beta."""
        beta = tuple(beta)
        basis = []
        for off, monos in sorted(self._monomials_of_degree(n).items()):
            need = tuple(b - o for b, o in zip(beta, off))
            es = [e for e in range(self.E.dim) if self.E.offset_of(e) == need]
            basis += [(m, e) for m in monos for e in es]
        return sorted(basis)

    def weights(self, n: int) -> list[tuple[int, ...]]:
        offs = set()
        for off in self._monomials_of_degree(n):
            for e in range(self.E.dim):
                offs.add(tuple(a + b for a, b in zip(off, self.E.offset_of(e))))
        return sorted(offs)

    # ---- contravariant form ----------------------------------------------------
    def pair(self, left: State, right: Vector) -> Fraction:
        """<left, right> with the contravariant form normalised on the top line."""
        mono, a = left
        vec = right
        for g in mono:
            vec = self.apply_vector(self.omega(g), vec)
            if not vec:
                return Fraction(0)
        total = Fraction(0)
        for (m2, e2), c in vec.items():
            assert not m2
            total += c * self.E.gram[a][e2]
        return total

    def gram_matrix(self, beta, n: int) -> list[list[Fraction]]:
        basis = self.weight_space_basis(beta, n)
        return [[self.pair(bi, {bj: Fraction(1)}) for bj in basis] for bi in basis]


@dataclass
class WeightEntry:
    delta_degree: int
    offset: tuple[int, ...]
    dim: int
    rank: int
    symmetric: bool


@dataclass
class GramReport:
    rs_label: str
    lambda_bar: tuple[int, ...]
    N: int
    entries: list[WeightEntry] = field(default_factory=list)
    complete: bool = True
    matrices: dict[tuple[int, tuple], list[list[Fraction]]] = field(default_factory=dict, repr=False)

    def as_character(self, base: Weight, field_name: str = "rank") -> AffineCharacter:
        slices: list[dict] = [{} for _ in range(self.N + 1)]
        for w in self.entries:
            slices[w.delta_degree][w.offset] = getattr(w, field_name)
        return AffineCharacter(self.rs_label, base, tuple(slices), provenance=f"gram-{field_name}")

    def qdims(self, field_name: str = "rank") -> tuple[int, ...]:
        out = [0] * (self.N + 1)
        for w in self.entries:
            out[w.delta_degree] += getattr(w, field_name)
        return tuple(out)

    def as_record(self) -> dict:
        return {
            "type": self.rs_label,
            "lambda_bar": list(self.lambda_bar),
            "depth": self.N,
            "complete": self.complete,
            "weights": [
                {"delta_degree": w.delta_degree, "finite_offset": list(w.offset), "dim": str(w.dim),
                 "rank": str(w.rank), "symmetric": w.symmetric}
                for w in self.entries
            ],
        }


def depth_bound(lambda_bar) -> int:
    return DEPTH_BOUND_TRIVIAL if not any(lambda_bar) else DEPTH_BOUND


def simple_quotient_dims(rs: RootSystem, lam: Weight, N: int, max_depth: int | None = None,
                         max_rank: int = DEFAULT_MAX_RANK, keep_matrices: bool = False) -> GramReport:
    """dim L(lam) at every weight of delta-degree <= N as Gram ranks on V(lam).

    Degrees beyond ``max_depth`` are skipped and the report is flagged incomplete.
    """
    lam_bar = tuple(int(x) for x in lam.finite)
    if not is_admissible_highest_weight(lam, rs):
        raise ValueError(f"{lam} is not admissible for {rs.label}")
    bound = depth_bound(lam_bar) if max_depth is None else max_depth
    V = WeylModule(rs, lam_bar, max_rank=max_rank)
    depth = min(N, bound)
    report = GramReport(rs.label, lam_bar, depth, complete=depth == N)
    for n in range(depth + 1):
        for beta in V.weights(n):
            G = V.gram_matrix(beta, n)
            sym = all(G[i][j] == G[j][i] for i in range(len(G)) for j in range(i))
            report.entries.append(WeightEntry(n, beta, len(G), bareiss_rank(G), sym))
            if keep_matrices:
                report.matrices[(n, beta)] = G
    return report


def compare_oracle_vs_formula(rs: RootSystem, lam: Weight, N: int, **kwargs) -> VerificationReport:
    """Gram ranks against the critical-level character, weight by weight."""
    report = simple_quotient_dims(rs, lam, N, **kwargs)
    crit = critical_character(rs, lam, report.N)
    ranks = report.as_character(lam)
    details = {"complete": report.complete, "qdims": [str(x) for x in report.qdims()],
               "symmetric": all(w.symmetric for w in report.entries)}
    out = compare_characters("oracle", rs, lam, report.N, crit, ranks, **details)
    if out.ok and not (report.complete and details["symmetric"]):
        return VerificationReport(out.identity_name, out.rs_label, out.lambda_bar, out.N, MISMATCH, None, details)
    return out


def compare_enumeration_vs_formula(rs: RootSystem, lam: Weight, N: int, max_rank: int = DEFAULT_MAX_RANK) -> VerificationReport:
    """PBW basis counts of V(lam) against the Weyl-module character."""
    lam_bar = tuple(int(x) for x in lam.finite)
    V = WeylModule(rs, lam_bar, max_rank=max_rank)
    slices: list[dict] = []
    for n in range(N + 1):
        slices.append({beta: len(V.weight_space_basis(beta, n)) for beta in V.weights(n)})
    counted = AffineCharacter(rs.label, lam, tuple(slices), provenance="pbw-count")
    return compare_characters("pbw-enumeration", rs, lam, N, weyl_module_character(rs, lam, N), counted)


def format_gram(report: GramReport) -> str:
    """Row-major text dump of every retained Gram matrix."""
    lines = [f"# critchar-gram/1 {report.rs_label} lambda={','.join(map(str, report.lambda_bar))} depth={report.N}"]
    for (n, beta), G in sorted(report.matrices.items()):
        lines.append(f"weight delta_degree={n} offset={','.join(map(str, beta))} size={len(G)}")
        lines += [" ".join(str(x) for x in row) for row in G]
    return "\n".join(lines) + "\n"
