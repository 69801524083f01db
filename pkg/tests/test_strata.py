from __future__ import annotations

import pytest

from hecke_forge.exactalg import ParamPoint, q
from hecke_forge.rootdata import build_root_system
from hecke_forge.strata import (CosetMismatch, MClass, circuit_witnesses, circuits, expected_classes,
                                m_c, psi_bar, stratum_compare)


@pytest.mark.parametrize("typ,rank", [("A", 2), ("D", 4), ("BC", 1)])
def test_circuits_match_reference(typ, rank):
    rs = build_root_system(typ, rank)
    assert circuits(rs) == expected_classes(rs)


@pytest.mark.parametrize("typ,rank", [("BC", 2), ("G", 2)])
def test_witnesses_are_dependencies(typ, rank):
    rs = build_root_system(typ, rank)
    config = set(psi_bar(rs))
    for m, members in circuit_witnesses(rs).items():
        hsum = [sum((a * v[i] for a, v, _ in members), q(0)) for i in range(rs.rank)]
        assert all(x == 0 for x in hsum)
        assert all((v, o) in config for _, v, o in members)
        pvec = [q(0)] * len(rs.orbits)
        for a, _, o in members:
            pvec[rs.orbits.index(o)] -= a
        assert MClass.from_vector(rs.orbits, pvec) == m


def test_g2_contains_reference_and_more():
    rs = build_root_system("G", 2)
    got, ref = circuits(rs), expected_classes(rs)
    assert ref < got
    extra = {m.symbol() for m in got - ref}
    assert extra == {"c♮ + 3*c♯", "c♮ - 3*c♯", "2*c♮ + 3*c♯", "2*c♮ - 3*c♯"}


def test_mclass_normalizes():
    m = MClass.from_vector(("nat", "sharp"), [q(-2), q(4) / 3])
    assert m.coeffs == (3, -2)
    assert m.render() == "3*c_nat - 2*c_sharp"


def test_single_orbit_has_one_class(a2):
    assert circuits(a2) == {MClass(("nat",), (1,))}


def test_stratum_compare_bc1(bc1):
    c = ParamPoint.rational({"sharp": q(1) / 3, "flat": q(1) / 5})
    same = ParamPoint.rational({"sharp": q(4) / 3, "flat": q(6) / 5})
    flip = ParamPoint.rational({"sharp": q(-5) / 3, "flat": q(-4) / 5})
    assert stratum_compare(bc1, c, same)["relation"] == "same"
    assert stratum_compare(bc1, c, flip)["relation"] == "antipodal"
    mixed = ParamPoint.rational({"sharp": q(4) / 3, "flat": q(-4) / 5})
    assert stratum_compare(bc1, c, mixed)["relation"] == "neither"


def test_irrational_parameters_prune_classes(bc1):
    # c_sharp = 1/2 + k, c_flat = 1/2 - k with k irrational: only c_sharp + c_flat is rational
    c = ParamPoint.of({"sharp": (q(1) / 2, (1,)), "flat": (q(1) / 2, (-1,))})
    assert m_c(bc1, c) == {MClass(bc1.orbits, (1, 1))}


def test_coset_mismatch(bc1):
    c = ParamPoint.rational({"sharp": q(1) / 3, "flat": 0})
    with pytest.raises(CosetMismatch):
        stratum_compare(bc1, c, ParamPoint.rational({"sharp": q(1) / 2, "flat": 0}))


def test_equal_transcendental_parameters(bc1):
    c = ParamPoint.of({"sharp": (0, (1,)), "flat": (0, (1,))})
    assert m_c(bc1, c) == {MClass(bc1.orbits, (1, -1))}
    indep = ParamPoint.of({"sharp": (0, (1, 0)), "flat": (0, (0, 1))})
    assert m_c(bc1, indep) == set()
    rational = ParamPoint.rational({"sharp": q(1) / 3, "flat": q(2) / 7})
    assert m_c(bc1, rational) == circuits(bc1)


def test_a1_antipodal_open(a1):
    rep = stratum_compare(a1, ParamPoint.rational({"nat": q(1) / 3}), ParamPoint.rational({"nat": q(-2) / 3}))
    assert rep["relation"] == "antipodal" and rep["open"] and rep["open_prime"]


def _brute_force_classes(rs):
    """Subsets of size <= rank + 1 whose h-parts have a one-dimensional kernel of full support."""
    import itertools
    from hecke_forge.exactalg import nullspace
    config = psi_bar(rs)
    out = set()
    for k in range(2, rs.rank + 2):
        for sub in itertools.combinations(config, k):
            rows = [[v[i] for v, _ in sub] for i in range(rs.rank)]
            ker = nullspace(rows, k)
            if len(ker) != 1 or not all(ker[0]):
                continue
            vec = [q(0)] * len(rs.orbits)
            for a, (_, o) in zip(ker[0], sub):
                vec[rs.orbits.index(o)] -= a
            if any(vec):
                out.add(MClass.from_vector(rs.orbits, vec))
    return out


@pytest.mark.parametrize("typ,rank", [("BC", 1), ("A", 2), ("BC", 2), ("G", 2), ("B", 2)])
def test_circuits_match_brute_force(typ, rank):
    rs = build_root_system(typ, rank)
    assert circuits(rs) == _brute_force_classes(rs)
