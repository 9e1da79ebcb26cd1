from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import SMALL_TYPES
from critchar.rootdata import (
    AffineRoot,
    RootSystemError,
    Weight,
    act_on_root,
    build_root_system,
    dot_action,
    inversion_count,
    is_admissible_highest_weight,
    pairing,
    positive_real_roots,
    weyl_group,
)

# standard tables, independent of the height-partition derivation
KNOWN = {
    ("A", 1): (1, 2, (1,)),
    ("A", 2): (3, 3, (1, 2)),
    ("A", 3): (6, 4, (1, 2, 3)),
    ("B", 2): (4, 3, (1, 3)),
    ("B", 3): (9, 5, (1, 3, 5)),
    ("C", 2): (4, 3, (1, 3)),
    ("C", 3): (9, 4, (1, 3, 5)),
    ("D", 4): (12, 6, (1, 3, 3, 5)),
    ("G", 2): (6, 4, (1, 5)),
    ("F", 4): (24, 9, (1, 5, 7, 11)),
    ("E", 6): (36, 12, (1, 4, 5, 7, 8, 11)),
    ("E", 7): (63, 18, (1, 5, 7, 9, 11, 13, 17)),
    ("E", 8): (120, 30, (1, 7, 11, 13, 17, 19, 23, 29)),
}


@pytest.mark.parametrize("key", sorted(KNOWN))
def test_root_counts_and_invariants(key):
    rs = build_root_system(*key)
    n_pos, h_vee, exps = KNOWN[key]
    assert len(rs.positive_roots) == n_pos
    assert rs.dual_coxeter == h_vee
    assert rs.exponents == exps
    assert sum(rs.exponents) == n_pos
    assert all(min(r) >= 0 for r in rs.positive_roots)
    assert rs.root_form(rs.highest_root, rs.highest_root) == 2
    assert all(rs.pair_finite(rs.rho_bar, a) == 1 for a in rs.simple_roots)
    # Casimir route: (theta | theta + 2 rho_bar) = 2 h^vee
    theta_dyn = rs.root_to_dynkin(rs.highest_root)
    casimir = rs.weight_form(theta_dyn, [t + 2 for t in theta_dyn])
    assert casimir == 2 * rs.dual_coxeter
    assert max(rs.exponents) == rs.coxeter_number - 1


def test_a1_a2_g2_examples():
    a1 = build_root_system("A", 1)
    assert a1.positive_roots == ((1,),) and a1.dual_coxeter == 2 and a1.exponents == (1,)
    a2 = build_root_system("A", 2)
    assert len(a2.positive_roots) == 3 and a2.exponents == (1, 2) and a2.dual_coxeter == 3
    g2 = build_root_system("G", 2)
    assert len(g2.positive_roots) == 6 and g2.dual_coxeter == 4


@pytest.mark.parametrize("bad", [("A", 0), ("B", 1), ("D", 3), ("E", 5), ("F", 3), ("G", 3), ("X", 2)])
def test_invalid_types_rejected(bad):
    with pytest.raises(RootSystemError):
        build_root_system(*bad)


def test_pairing_examples(a1, a2):
    for rs in (a1, a2):
        for a in rs.simple_roots:
            assert pairing(rs, rs.rho(), a) == 1
            assert pairing(rs, rs.delta(), a) == 0
        lam = -rs.dual_coxeter * rs.Lambda0()
        assert pairing(rs, lam, "K") == -rs.dual_coxeter
        assert pairing(rs, rs.delta(), "D") == 1
        assert pairing(rs, rs.Lambda0(), "D") == 0
        assert pairing(rs, rs.delta(), "K") == 0


def test_affine_coroot_pairing(a1):
    # delta - alpha has coroot K - alpha^vee
    lam = Weight((1,), level=-2)
    assert pairing(a1, lam, AffineRoot((-1,), 1)) == -1 + (-2)


@given(st.lists(st.fractions(max_denominator=5), min_size=2, max_size=2),
       st.lists(st.fractions(max_denominator=5), min_size=2, max_size=2),
       st.fractions(max_denominator=5))
def test_pairing_is_bilinear(x, y, k):
    rs = build_root_system("A", 2)
    wx, wy = Weight(tuple(x), k), Weight(tuple(y), 1)
    for a in rs.roots:
        assert pairing(rs, wx + wy, a) == pairing(rs, wx, a) + pairing(rs, wy, a)
        assert pairing(rs, k * wx, a) == k * pairing(rs, wx, a)


def test_positive_real_roots(a1, a2):
    assert positive_real_roots(a1, 0) == [AffineRoot((1,), 0)]
    one = positive_real_roots(a1, 1)
    assert set(one) == {AffineRoot((1,), 0), AffineRoot((1,), 1), AffineRoot((-1,), 1)}
    assert len(positive_real_roots(a2, 2)) == 3 + 6 + 6
    for r in positive_real_roots(a2, 3):
        assert any(r.finite_part)


def test_affine_root_rejects_imaginary():
    with pytest.raises(RootSystemError):
        AffineRoot((0, 0), 1)
    with pytest.raises(RootSystemError):
        AffineRoot((-1, 0), 0)


def test_weyl_group_sizes(a1, a2, c2):
    W = weyl_group(a1)
    assert len(W) == 2 and sorted(w.length for w in W) == [0, 1]
    W = weyl_group(a2)
    assert len(W) == 6 and max(w.length for w in W) == 3
    assert len(weyl_group(c2)) == 8
    assert weyl_group(a2)[0].word == ()


def test_weyl_group_cap():
    with pytest.raises(RootSystemError):
        weyl_group(build_root_system("E", 8))
    with pytest.raises(RootSystemError):
        weyl_group(build_root_system("B", 3), cap=10)


@pytest.mark.parametrize("key", SMALL_TYPES + [("D", 4)])
def test_weyl_group_permutes_roots_and_lengths(key):
    rs = build_root_system(*key)
    roots = set(rs.roots)
    W = weyl_group(rs)
    assert len({w.matrix for w in W}) == len(W)
    for w in W:
        assert {act_on_root(rs, w, a) for a in roots} == roots
        if rs.rank <= 3:
            assert inversion_count(rs, w) == w.length


def test_sign_is_multiplicative(a2):
    W = weyl_group(a2)
    by_matrix = {w.matrix: w for w in W}
    for u, v in product(W, W):
        M = tuple(tuple(sum(u.matrix[i][k] * v.matrix[k][j] for k in range(2)) for j in range(2)) for i in range(2))
        assert by_matrix[M].sign == u.sign * v.sign


def test_dot_action_examples(a1):
    s, e = weyl_group(a1)[1], weyl_group(a1)[0]
    lam = a1.critical_weight((0,))
    assert dot_action(e, lam, a1) == lam
    alpha = Weight((2,))
    assert dot_action(s, lam, a1) == lam - alpha
    lam = a1.critical_weight((1,))
    assert dot_action(s, lam, a1) == lam - 2 * alpha


def test_dot_action_is_group_action(a2):
    W = weyl_group(a2)
    by_matrix = {w.matrix: w for w in W}
    for coords in product(range(-2, 3), repeat=2):
        lam = Weight(coords, level=-3, delta=Fraction(1, 2))
        for u, v in product(W, W):
            M = tuple(tuple(sum(u.matrix[i][k] * v.matrix[k][j] for k in range(2)) for j in range(2)) for i in range(2))
            uv = by_matrix[M]
            assert dot_action(uv, lam, a2) == dot_action(u, dot_action(v, lam, a2), a2)
            assert dot_action(u, lam, a2).level == lam.level


def test_admissibility(a1):
    assert is_admissible_highest_weight(-2 * a1.Lambda0(), a1)
    assert not is_admissible_highest_weight(Weight((1,), level=-3), a1)
    assert not is_admissible_highest_weight(Weight((-1,), level=-2), a1)
    assert not is_admissible_highest_weight(Weight((Fraction(1, 2),), level=-2), a1)


def test_dump_is_line_per_root(g2):
    text = g2.dump()
    assert text.startswith("# critchar-rootdata/1 G2")
    assert sum(1 for line in text.splitlines() if line.startswith("root ")) == 6
