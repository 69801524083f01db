"""Exact computations with nil-Hecke operators, alcove galleries and parameter strata."""
from __future__ import annotations

__version__ = "0.1.0"
SCHEMA = "hecke-forge/1"
