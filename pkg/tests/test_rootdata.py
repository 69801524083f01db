from __future__ import annotations

import pytest

from hecke_forge.exactalg import q
from hecke_forge.rootdata import (AffineRoot, InadmissibleType, build_root_system, count_levels_between)

# number of affine Weyl group elements of each length, A2: 1 + 3 + 6 + 9 + 12 + 15 (hand count)
A2_GROWTH = [1, 3, 6, 9, 12, 15]


def test_a1_coordinates(a1):
    assert a1.orbits == ("nat",)
    assert a1.simple == ((q(2),),)
    assert a1.alpha0 == AffineRoot((q(-2),), q(1), "nat")
    assert a1.z0 == (q(1) / 4,)


def test_bc1_alpha0_is_half_of_a_long_root(bc1):
    assert bc1.orbits == ("sharp", "flat")
    assert bc1.alpha0 == AffineRoot((q(-1),), q(1) / 2, "flat")


def test_root_counts():
    expect = {("A", 2): 6, ("B", 2): 8, ("G", 2): 12, ("BC", 2): 12, ("D", 4): 24, ("F", 4): 48, ("E", 6): 72}
    for (t, n), k in expect.items():
        assert len(build_root_system(t, n).roots) == k, (t, n)


def test_g2_highest_root():
    rs = build_root_system("G", 2)
    assert rs.orbit[rs.theta] == "nat"
    assert rs.inner(rs.theta, rs.theta) == 3 * rs.inner(rs.simple[0], rs.simple[0])


def test_f4_orbits():
    rs = build_root_system("F", 4)
    assert sorted(rs.orbit.values()).count("nat") == 24


def test_coroot_pairing_is_two():
    for t, n in (("A", 2), ("B", 2), ("G", 2), ("BC", 2)):
        rs = build_root_system(t, n)
        for a in rs.roots:
            assert rs.pairing(a, a) == 2


def test_length_growth(a2):
    counts = [0] * 6
    for w in a2.enumerate_weyl(5):
        counts[a2.length(w)] += 1
    assert counts == A2_GROWTH


def test_a1_elements_up_to_three(a1):
    assert len(a1.enumerate_weyl(3)) == 7


def test_reduced_words_and_inverse(a2):
    w = a2.word_to_elem([1, 2, 0, 1])
    assert a2.length(w) == 4
    assert a2.word_to_elem(a2.reduced_word(w)) == w
    assert (w * w.inverse()).is_identity()


def test_braid_relations_hold_in_the_group(a2, bc1):
    s = a2.s
    assert s(1) * s(2) * s(1) == s(2) * s(1) * s(2)
    assert bc1.coxeter[0][1] is None


def test_bruhat_order(a1):
    s0, s1 = a1.s(0), a1.s(1)
    assert a1.bruhat_leq(s1, s0 * s1)
    assert a1.bruhat_leq(a1.identity(), s0)
    assert not a1.bruhat_leq(s1 * s0, s0 * s1)


def test_act_on_poly_reflects(a1):
    x = a1.x_var(0)
    assert a1.act_on_poly(a1.s(1), x) == -x
    # s0 reflects in the wall 1 - 2x = 0
    assert a1.act_on_poly(a1.s(0), x) == -x + 1


def test_levels_between_offsets():
    assert count_levels_between(q(0), q(5) / 2, 0) == 2
    assert count_levels_between(q(0), q(5) / 2, q(1) / 2) == 2
    assert count_levels_between(q(0), q(3), q(1) / 2) == 3


def test_bad_type():
    with pytest.raises(InadmissibleType):
        build_root_system("Z", 3)
