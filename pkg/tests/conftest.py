from __future__ import annotations

import pytest

from hecke_forge.rootdata import build_root_system


@pytest.fixture(scope="session")
def a1():
    return build_root_system("A", 1)


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A", 2)


@pytest.fixture(scope="session")
def bc1():
    return build_root_system("BC", 1)
