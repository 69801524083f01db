from __future__ import annotations

import pytest

from hecke_forge.chambers import fundamental_chamber
from hecke_forge.clans import (antipodal, antipodal_search, arrangement_regions, clan_of, clan_regions,
                               cone_generators, kz_bound, kz_gamma, kz_genericity, local_chambers,
                               phi_c_lambda, region_of, strict_feasible_point, widetilde)
from hecke_forge.exactalg import q
from hecke_forge.nilhecke import LengthBoundExceeded


def test_feasible_point_solver():
    # x > 0, y > 0, x + y < 1
    p = strict_feasible_point([((1, 0), 0), ((0, 1), 0), ((-1, -1), 1)], 2)
    assert p is not None and p[0] > 0 and p[1] > 0 and p[0] + p[1] < 1
    assert strict_feasible_point([((1,), 0), ((-1,), 0)], 1) is None


def test_cone_generators_quadrant():
    lin, rays = cone_generators([(1, 0), (0, 1)], 2)
    assert lin == []
    assert sorted(rays) == [(0, 1), (1, 0)]


def test_regions_of_two_lines():
    fns = [((1, 0), 0), ((0, 1), 0)]
    assert len(arrangement_regions(fns, 2)) == 4
    with pytest.raises(ValueError):
        region_of(fns, (0, 1))


def test_a1_clans_integral(a1):
    walls = phi_c_lambda(a1, 1)
    assert len(walls) == 2
    regions = clan_regions(a1, 1)
    assert [r.point for r in regions] == [(q(-3) / 2,), (q(0),), (q(3) / 2,)]
    assert [r.is_generic() for r in regions] == [True, False, True]


def test_a1_clans_half_integral(a1):
    regions = clan_regions(a1, q(1) / 2)
    assert len(regions) == 1 and regions[0].is_generic()


def test_bc1_clans(bc1):
    assert len(clan_regions(bc1, {"sharp": q(1) / 2, "flat": q(1) / 2})) == 3


def test_clan_of_point(a1):
    r = clan_of(a1, 1, None, (q(7),))
    assert r.is_generic() and r.contains((q(2),))


def test_local_chambers_and_widetilde(a1):
    assert len(local_chambers(a1, 0)) == 6
    k0 = fundamental_chamber(a1)
    assert widetilde(k0, 0).signs in {r.signs for r in local_chambers(a1, 0)}


def test_antipodes_a1(a1):
    found = [antipodal_search(a1, 0, None, {"nat": d}, a1.identity()) for d in (0, 1, 2)]
    assert [a1.render_word(y) for y in found] == ["s1", "s0*s1", "s1*s0*s1"]
    k0 = fundamental_chamber(a1)
    from hecke_forge.chambers import act_chamber
    R = widetilde(k0, 0)
    S = widetilde(act_chamber(found[0].inverse(), k0), 0)
    assert antipodal(R, S) and antipodal(S, R)


def test_antipode_length_bound(a1):
    with pytest.raises(LengthBoundExceeded):
        antipodal_search(a1, 0, None, {"nat": 0}, a1.word_to_elem([0, 1, 0]), maxlen=2)


def test_kz_choice(a1):
    N = kz_bound(a1, 1)
    assert N == 4
    gamma = kz_gamma(a1, N)
    rep = kz_genericity(a1, 1, None, gamma, list(a1.finite_weyl()))
    assert rep["all_generic"]
    bad = kz_genericity(a1, 1, None, (q(0),), [a1.identity()])
    assert not bad["all_generic"]
    assert bad["cases"][0]["point"] == [str(q(1) / 4)] or bad["cases"][0]["point"] == ["1/4"]
