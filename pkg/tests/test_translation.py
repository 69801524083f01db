from __future__ import annotations

from hecke_forge.nilhecke import NilOp
from hecke_forge.translation import (a1_example_check, basis_element, gamma_predicate, gamma_product,
                                     gamma_rule_check, hc_degree_drop, param_element, shift_identity_holds,
                                     star)


def test_unit_translations_compose_to_identity(a1):
    e = a1.identity()
    up, down = basis_element(a1, {"nat": 1}, e), basis_element(a1, {"nat": -1}, e)
    assert up.op == NilOp.identity(a1)
    prod = star(down, up)
    assert prod.d == {"nat": 0}
    x, c = a1.x_var(0), a1.param_var("nat")
    assert prod.op == NilOp.mult(a1, (x * 2 - c) * (-x * 2 - c + 1))
    assert prod.decompose(4)[1]


def test_parameter_commutes_up_to_shift(a1, bc1):
    for rs in (a1, bc1):
        for d in ({o: 1 for o in rs.orbits}, {o: -1 for o in rs.orbits}):
            for w in rs.enumerate_weyl(2):
                a = basis_element(rs, d, w)
                assert shift_identity_holds(a)
                assert hc_degree_drop(a)


def test_shift_identity_detects_wrong_shift(a1):
    a = basis_element(a1, {"nat": 1}, a1.s(1))
    lhs = star(param_element(a1, "nat"), a)
    rhs = star(a, param_element(a1, "nat"))
    assert lhs.op != rhs.op


def test_associativity(a1):
    w = [a1.s(0), a1.s(1), a1.word_to_elem([0, 1])]
    a = basis_element(a1, {"nat": 1}, w[0])
    b = basis_element(a1, {"nat": -1}, w[1])
    c = basis_element(a1, {"nat": 0}, w[2])
    assert star(star(c, b), a).op == star(c, star(b, a)).op


def test_gamma_rule_a1(a1):
    for d in (-1, 0, 1):
        for e in (-1, 0, 1):
            for w in a1.enumerate_weyl(2):
                for y in a1.enumerate_weyl(2):
                    assert gamma_rule_check(a1, {"nat": d}, {"nat": e}, w, y, 4)


def test_gamma_identity_factor(a1):
    s1 = a1.s(1)
    assert gamma_predicate(a1, {"nat": 0}, {"nat": 0}, a1.identity(), s1)
    assert gamma_product(a1, {"nat": 0}, {"nat": 0}, a1.identity(), s1, 4) == "gamma"


def test_a1_example_small():
    report = a1_example_check(2)
    assert report["ok"], report["failures"]
    assert report["membership"] > 0 and report["converse"] > 0
