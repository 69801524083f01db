"""Acceptance gate: one test per criterion, at the stated tolerances.

Every check is exact (rational arithmetic), so "zero tolerance" means plain
equality.  Suite-driven criteria go through ``run_suite`` so the gate and
``hecke-forge verify`` exercise the same code; failing cases print their
reproduction command.
"""
from __future__ import annotations

import subprocess
import sys
import time

import pytest

from hecke_forge.cli.suites import run_suite
from hecke_forge.clans import clan_regions, kz_genericity
from hecke_forge.exactalg import q
from hecke_forge.rootdata import build_root_system
from hecke_forge.strata import circuits, expected_classes
from hecke_forge.translation import a1_example_check

SMALL_TYPES = [("A", 1), ("A", 2), ("BC", 1), ("B", 2), ("G", 2)]


def _failures(rep: dict) -> list:
    return [(c["name"], c["detail"], c["repro"]) for c in rep["cases"] if not c["ok"]]


def _run_all(suite: str, types, **kw) -> list:
    bad = []
    for typ, rank in types:
        rep = run_suite(suite, typ, rank, **kw)
        assert rep["total"] > 0, (suite, typ, rank)
        bad += [(typ, rank) + f for f in _failures(rep)]
    return bad


def test_criterion_01_demazure_suite():
    start = time.perf_counter()
    bad = _run_all("demazure", SMALL_TYPES)
    elapsed = time.perf_counter() - start
    assert not bad
    assert elapsed < 60, f"demazure suite took {elapsed:.1f}s"


def test_criterion_02_iota_embedding():
    # every shift in {-1, 0, 1}^orbits; words up to length 4
    assert not _run_all("iota", SMALL_TYPES, maxlen=4)


def test_criterion_03_basis_desk_check():
    for typ, rank in [("A", 1), ("A", 2)]:
        rep = run_suite("basis", typ, rank, maxlen=5)
        names = [c["name"] for c in rep["cases"]]
        assert sum(n.startswith("roundtrip") for n in names) == 50
        assert sum(n.startswith("independence") for n in names) >= 10
        assert any(n.startswith("nonminimal") for n in names)
        assert not _failures(rep), (typ, rank)


def test_criterion_04_a1_example():
    report = a1_example_check(4)
    assert report["L"] == 4
    assert report["membership"] and report["closure"] and report["converse"]
    assert report["ok"], report["failures"]


@pytest.mark.parametrize("typ,rank", [("A", 2), ("D", 4), ("BC", 1), ("BC", 2), ("F", 4), ("G", 2)])
def test_criterion_05_stratification(typ, rank):
    rs = build_root_system(typ, rank)
    got, ref = circuits(rs), expected_classes(rs)
    missing = sorted(m.symbol() for m in ref - got)
    extra = sorted(m.symbol() for m in got - ref)
    assert got == ref, f"missing {missing}, extra {extra}"


def test_criterion_06_gallery_anchors():
    assert not _run_all("galleries", [("A", 1), ("A", 2), ("BC", 1)])


def test_criterion_07_gamma_rule():
    for typ, rank in [("A", 1), ("BC", 1)]:
        rs = build_root_system(typ, rank)
        rep = run_suite("gamma", typ, rank, maxlen=6)
        # the full shift grid, words of length <= 3
        assert rep["total"] == 9 ** len(rs.orbits)
        assert not _failures(rep), (typ, rank)


def test_criterion_08_shift_identity_and_hc():
    assert not _run_all("hc", [("A", 1), ("BC", 1), ("A", 2)])


def test_criterion_09_clans_and_kz():
    assert not _run_all("clans", [("A", 1), ("BC", 1)])
    a1 = build_root_system("A", 1)
    regions = clan_regions(a1, 1)
    assert [r.is_generic() for r in regions] == [True, False, True]
    rep = kz_genericity(a1, 1, None, (q(-3),), [a1.identity()])
    assert rep["all_generic"] and rep["cases"][0]["point"] == ["13/4"]
    assert not kz_genericity(a1, 1, None, (q(0),), [a1.identity()])["all_generic"]


def test_criterion_10_cli_determinism():
    runs = [("demazure", "A", "2"), ("galleries", "BC", "1"), ("clans", "A", "1"), ("hc", "A", "1"),
            ("strata", "A", "2")]
    for suite, typ, rank in runs:
        cmd = [sys.executable, "-m", "hecke_forge.cli.main", "verify", suite, "--type", typ, "--rank", rank,
               "--seed", "7", "--json"]
        first = subprocess.run(cmd, capture_output=True)
        second = subprocess.run(cmd, capture_output=True)
        assert first.returncode == 0, first.stderr.decode()
        assert second.returncode == 0
        assert first.stdout == second.stdout
