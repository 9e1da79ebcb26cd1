"""Acceptance gate: eight criteria, exact equality, one PASS/FAIL line each.

The lines are printed directly and repeated in the pytest terminal summary.
"""
import random
from fractions import Fraction
from itertools import product

import pytest

from conftest import ACCEPTANCE_LINES, SMALL_TYPES
from critchar.charseries import AffineCharacter, finite_weyl_character, freudenthal_character, mul
from critchar.formulas import (
    check_upper_bound,
    decomposition_multiplicities,
    endring_character,
    verify_factorization,
)
from critchar.oracle.finite import structure_constants
from critchar.oracle.weyl_module import (
    compare_enumeration_vs_formula,
    compare_oracle_vs_formula,
    simple_quotient_dims,
)
from critchar.rootdata import build_root_system, inversion_count, weyl_group

SWEEP = [("A", 1, (0,)), ("A", 1, (1,)), ("A", 2, (0, 0)), ("A", 2, (1, 0)),
         ("C", 2, (0, 0)), ("C", 2, (0, 1)), ("G", 2, (0, 0)), ("G", 2, (1, 0))]


def record(name: str, failures: list[str], checked: int) -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"{status} {name}: {checked} cases" + (f"; first failure: {failures[0]}" if failures else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failures, line


def test_criterion_1_oracle_a1():
    rs = build_root_system("A", 1)
    failures, n = [], 0
    for lam, N in [((0,), 4), ((1,), 3), ((2,), 3)]:
        r = compare_oracle_vs_formula(rs, rs.critical_weight(lam), N)
        n += 1
        if not r.ok:
            failures.append(r.summary())
    anchor = simple_quotient_dims(rs, rs.critical_weight((0,)), 2).qdims()
    if anchor != (1, 3, 8):
        failures.append(f"anchor qdims {anchor}")
    record("1 Gram ranks = critical character, A1", failures, n + 1)


def test_criterion_2_oracle_a2():
    rs = build_root_system("A", 2)
    r = compare_oracle_vs_formula(rs, rs.critical_weight((0, 0)), 2)
    record("2 Gram ranks = critical character, A2", [] if r.ok else [r.summary()], 1)


def test_criterion_3_factorization():
    failures = []
    for t, l, lam in SWEEP:
        rs = build_root_system(t, l)
        r = verify_factorization(rs, rs.critical_weight(lam), 8)
        if not r.ok:
            failures.append(r.summary())
    record("3 factorization at N=8", failures, len(SWEEP))


def test_criterion_4_pbw():
    failures, cases = [], [(("A", 1), (0,), 4), (("A", 1), (1,), 4), (("A", 2), (0, 0), 3), (("A", 2), (1, 0), 3)]
    for key, lam, N in cases:
        rs = build_root_system(*key)
        r = compare_enumeration_vs_formula(rs, rs.critical_weight(lam), N)
        if not r.ok:
            failures.append(r.summary())
    record("4 Weyl-module formula = PBW enumeration", failures, len(cases))


def test_criterion_5_multiplicities():
    failures = []
    for t, l, lam in SWEEP:
        rs = build_root_system(t, l)
        L = rs.critical_weight(lam)
        m = decomposition_multiplicities(rs, L, 8)
        e = endring_character(rs, L, 8)
        if m != e or min(m.coefficients) < 0:
            failures.append(f"{rs.label} {lam}: {m.coefficients} vs {e.coefficients}")
    record("5 decomposition multiplicities = endomorphism ring", failures, len(SWEEP))


def test_criterion_6_upper_bound():
    failures = []
    for t, l, lam in SWEEP:
        rs = build_root_system(t, l)
        r = check_upper_bound(rs, rs.critical_weight(lam), 6)
        if not r.ok:
            failures.append(r.summary())
    record("6 critical <= generic at N=6", failures, len(SWEEP))


def test_criterion_7_weyl_vs_freudenthal():
    failures, n = [], 0
    for t, l in SMALL_TYPES:
        rs = build_root_system(t, l)
        for lam in product(range(4), repeat=l):
            n += 1
            if finite_weyl_character(rs, lam).terms != freudenthal_character(rs, lam).terms:
                failures.append(f"{rs.label} {lam}")
    record("7 Weyl character = Freudenthal", failures, n)


def _random_character(rng, rs, N=3):
    offs = list(product(range(-1, 3), repeat=rs.rank))
    slices = tuple({o: rng.randint(-3, 3) for o in rng.sample(offs, rng.randint(0, 3))} for _ in range(N + 1))
    return AffineCharacter(rs.label, rs.zero(), tuple({o: m for o, m in s.items() if m} for s in slices))


def test_criterion_8_structural():
    failures, n = [], 0
    for t, l in SMALL_TYPES:
        rs = build_root_system(t, l)
        for w in weyl_group(rs):
            n += 1
            if inversion_count(rs, w) != w.length:
                failures.append(f"inversions {rs.label} {w.word}")
    for t, l in [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("G", 2)]:
        L = structure_constants(build_root_system(t, l))
        for a, b, c in product(range(L.dim), repeat=3):
            n += 1
            x, y, z = {a: Fraction(1)}, {b: Fraction(1)}, {c: Fraction(1)}
            total: dict = {}
            for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
                for k, v in L.bracket_vector(p, L.bracket_vector(q, r)).items():
                    total[k] = total.get(k, 0) + v
            if any(total.values()):
                failures.append(f"Jacobi {t}{l} {(a, b, c)}")
    for key, lam, N in [(("A", 1), (0,), 4), (("A", 1), (1,), 3), (("A", 1), (2,), 3), (("A", 2), (0, 0), 2)]:
        rs = build_root_system(*key)
        for w in simple_quotient_dims(rs, rs.critical_weight(lam), N).entries:
            n += 1
            if not w.symmetric:
                failures.append(f"Gram asymmetric {rs.label} {lam} {w.delta_degree} {w.offset}")
    rng = random.Random(20261014)
    for k in range(1000):
        rs = build_root_system("A", 1 + k % 2)
        a, b, c = (_random_character(rng, rs) for _ in range(3))
        n += 1
        if mul(a, b) != mul(b, a) or mul(mul(a, b), c) != mul(a, mul(b, c)):
            failures.append(f"mul case {k}")
    record("8 structural suites", failures, n)
