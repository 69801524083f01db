from __future__ import annotations

import pytest

from hecke_forge.chambers import (act_chamber, dinv, distance, einv, fundamental_chamber, in_interval,
                                  make_chamber, minimal_gallery, same_chamber)
from hecke_forge.exactalg import Poly, q


def test_kappa0_point(a1):
    k0 = fundamental_chamber(a1)
    assert k0.u == (q(1) / 12,) and k0.z == (q(1) / 4,)


def test_walls_between_kappa0_and_its_reflection(a1):
    k0 = fundamental_chamber(a1)
    sk = act_chamber(a1.s(1), k0)
    x, c = a1.x_var(0), a1.param_var("nat")
    assert distance(k0, sk) == 3
    assert dinv(k0, sk) == -x * 2 - c
    assert dinv(sk, k0) == x * 2 - c
    assert einv(k0, sk) == x * 2


def test_gallery_crossing_order(a1):
    k0 = fundamental_chamber(a1)
    G = minimal_gallery(k0, act_chamber(a1.s(1), k0))
    x, c = a1.x_var(0), a1.param_var("nat")
    assert [w.poly(a1) for w in G.walls] == [x * 2 - c, x * 2, -x * 2 - c]
    for A, B in zip(G.chambers, G.chambers[1:]):
        assert distance(A, B) == 1


def test_parameter_translation(a1):
    k0, k1 = fundamental_chamber(a1), fundamental_chamber(a1, {"nat": 1})
    assert distance(k0, k1) == 2
    # both separating Psi-walls are negative on kappa_1, so no factor is picked up
    assert dinv(k0, k1) == Poly.const(1, a1.nvars)


def test_bc1_distances(bc1):
    k0 = fundamental_chamber(bc1)
    for i in range(2):
        assert distance(k0, act_chamber(bc1.s(i), k0)) == 3


def test_same_chamber_and_interval(a1):
    k0 = fundamental_chamber(a1)
    other = make_chamber(a1, [q(1) / 20], [q(1) / 5])
    assert same_chamber(k0, other)
    G = minimal_gallery(k0, act_chamber(a1.s(1), k0))
    for M in G.chambers:
        assert in_interval(M, G.source, G.target)
    far = act_chamber(a1.s(0), k0)
    assert not in_interval(far, k0, act_chamber(a1.s(1), k0))


def test_points_on_walls_are_rejected(a1):
    with pytest.raises(ValueError):
        make_chamber(a1, [q(1) / 2], [q(1) / 4])
    with pytest.raises(ValueError):
        make_chamber(a1, [q(1) / 3], [0])


def test_gallery_variants_are_minimal(a2):
    k0 = fundamental_chamber(a2)
    D = act_chamber(a2.word_to_elem([1, 2, 0]), fundamental_chamber(a2, {"nat": 1}))
    n = distance(k0, D)
    for v in range(4):
        G = minimal_gallery(k0, D, v)
        assert len(G) == n and same_chamber(G.target, D)
