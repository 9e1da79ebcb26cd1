from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from critchar.formulas import critical_character, weyl_module_character
from critchar.charseries import freudenthal_character
from critchar.linalg import bareiss_rank
from critchar.oracle.finite import FiniteModule, OracleBoundError, smallest_fundamental, structure_constants
from critchar.oracle.weyl_module import (
    WeylModule,
    compare_enumeration_vs_formula,
    compare_oracle_vs_formula,
    format_gram,
    simple_quotient_dims,
)
from critchar.rootdata import build_root_system


def unit(b):
    return {b: Fraction(1)}


def test_a1_structure_constants(a1):
    L = structure_constants(a1)
    e, f, h = L.e_id(0), L.f_id(0), L.h_id(0)
    assert L.bracket[h][e] == {e: 2}
    assert L.bracket[h][f] == {f: -2}
    assert L.bracket[e][f] == {h: 1}
    assert L.form[e][f] == 1 and L.form[h][h] == 2 and L.form[e][e] == 0


@pytest.mark.parametrize("key", [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("G", 2)])
def test_jacobi_and_invariance(key):
    L = structure_constants(build_root_system(*key))
    for a, b, c in product(range(L.dim), repeat=3):
        x, y, z = unit(a), unit(b), unit(c)
        total = {}
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            for k, v in L.bracket_vector(p, L.bracket_vector(q, r)).items():
                total[k] = total.get(k, 0) + v
        assert not any(total.values())
        assert L.form_vector(L.bracket_vector(x, y), z) == L.form_vector(x, L.bracket_vector(y, z))


@pytest.mark.parametrize("key", [("A", 2), ("C", 2), ("G", 2)])
def test_form_normalised_on_highest_root(key):
    rs = build_root_system(*key)
    L = structure_constants(rs)
    k = rs.positive_roots.index(rs.highest_root)
    e, f = L.e_id(k), L.f_id(k)
    h = L.bracket_vector(unit(e), unit(f))
    # (h_theta|h_theta) = 4/(theta|theta) times (e|f)^2 scaling
    assert L.form_vector(h, h) == 2 * L.form[e][f] ** 2


def test_rank_bound():
    with pytest.raises(OracleBoundError):
        structure_constants(build_root_system("A", 3))
    assert structure_constants(build_root_system("A", 3), max_rank=3).dim == 15


@pytest.mark.parametrize("key,lam", [(("A", 1), (2,)), (("A", 2), (1, 1)), (("C", 2), (0, 1)), (("G", 2), (1, 0))])
def test_finite_module_matches_freudenthal(key, lam):
    rs = build_root_system(*key)
    E = FiniteModule(rs, lam)
    assert E.character() == freudenthal_character(rs, lam).terms
    assert bareiss_rank(E.gram) == E.dim


def test_smallest_fundamental():
    assert smallest_fundamental(build_root_system("G", 2)) == (1, 0)
    assert smallest_fundamental(build_root_system("C", 2)) == (1, 0)


def test_normal_order_a1(a1):
    V = WeylModule(a1, (0,))
    L = V.lie
    e, f, h = L.e_id(0), L.f_id(0), L.h_id(0)
    # h(1) h(-1) v = -2·(h|h)·v at level -2
    assert V.apply((1, h), ((-1, h),), 0) == {((), 0): -4}
    assert V.apply((1, e), ((-1, h),), 0) == {}
    # e(0) f(-1) v = h(-1) v
    assert V.apply((0, e), ((-1, f),), 0) == {(((-1, h),), 0): 1}
    # e(-1) f(-1) v = f(-1) e(-1) v + h(-2) v
    assert V.apply((-1, e), ((-1, f),), 0) == {(((-1, f), (-1, e)), 0): 1, (((-2, h),), 0): 1}


def test_weight_space_basis_dims(a1):
    V = WeylModule(a1, (0,))
    assert len(V.weight_space_basis((0,), 0)) == 1
    assert len(V.weight_space_basis((0,), 1)) == 1
    assert len(V.weight_space_basis((0,), 2)) == 3
    assert len(V.weight_space_basis((1,), 1)) == 1


def test_gram_examples(a1):
    V = WeylModule(a1, (0,))
    assert V.gram_matrix((0,), 0) == [[1]]
    assert V.gram_matrix((0,), 1) == [[-4]]
    G = V.gram_matrix((0,), 2)
    assert len(G) == 3 and bareiss_rank(G) == 2
    assert all(G[i][j] == G[j][i] for i in range(3) for j in range(3))


@pytest.mark.parametrize("key,lam,N", [(("A", 1), (0,), 4), (("A", 1), (1,), 3), (("A", 1), (2,), 3),
                                       (("A", 2), (0, 0), 2)])
def test_oracle_matches_critical(key, lam, N):
    rs = build_root_system(*key)
    r = compare_oracle_vs_formula(rs, rs.critical_weight(lam), N)
    assert r.ok, r.summary()


def test_oracle_qdims_a1(a1):
    rep = simple_quotient_dims(a1, a1.critical_weight((0,)), 4)
    assert rep.qdims("rank") == (1, 3, 8, 18, 38)
    assert rep.qdims("dim") == (1, 3, 9, 22, 51)
    assert rep.complete and all(w.symmetric for w in rep.entries)


def test_incomplete_beyond_bound(a1):
    rep = simple_quotient_dims(a1, a1.critical_weight((1,)), 5)
    assert not rep.complete and rep.N == 3
    assert not compare_oracle_vs_formula(a1, a1.critical_weight((1,)), 5).ok
    assert simple_quotient_dims(a1, a1.critical_weight((1,)), 2).complete


def test_state_grade_consistent(a2):
    V = WeylModule(a2, (1, 0))
    for n in range(3):
        for beta in V.weights(n):
            for state in V.weight_space_basis(beta, n):
                assert V.state_grade(state) == (n, beta)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_raising_operators_preserve_grading(data):
    rs = build_root_system("A", 1)
    V = WeylModule(rs, (1,))
    n = data.draw(st.integers(0, 3))
    beta = data.draw(st.sampled_from(V.weights(n)))
    basis = V.weight_space_basis(beta, n)
    state = data.draw(st.sampled_from(basis))
    b = data.draw(st.integers(0, V.lie.dim - 1))
    mode = data.draw(st.integers(-1, 1))
    image = V.apply((mode, b), *state)
    expected = (n - mode, tuple(x + y for x, y in zip(beta, V.lie.elements[b].offset)))
    assert all(V.state_grade(s) == expected for s in image)


@pytest.mark.parametrize("key,lam,N", [(("A", 1), (0,), 4), (("A", 2), (0, 0), 3), (("A", 2), (1, 1), 2)])
def test_pbw_enumeration(key, lam, N):
    rs = build_root_system(*key)
    assert compare_enumeration_vs_formula(rs, rs.critical_weight(lam), N).ok


def test_format_gram(a1):
    rep = simple_quotient_dims(a1, a1.critical_weight((0,)), 1, keep_matrices=True)
    text = format_gram(rep)
    assert text.splitlines()[0].startswith("# critchar-gram/1 A1")
    assert "weight delta_degree=1 offset=0 size=1\n-4" in text
