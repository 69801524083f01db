"""Circuits of the finite Psi-configuration and the induced parameter strata.

The circuits are the matroid circuits of the h-parts of ``Psi_bar`` whose
dependency has a nonzero parameter part.  Parallel h-parts give circuits of
size two; every other circuit picks one element on each line of a circuit
of the distinct line directions, so we enumerate the (much smaller) set of
lines and expand sign/orbit choices afterwards.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .exactalg import ZERO, ParamPoint, param_eval, nullspace, q
from .rootdata import ORBIT_SYMBOL, RootSystem


class CosetMismatch(ValueError):
    """Parameters do not differ by an integral vector."""


@dataclass(frozen=True)
class MClass:
    """Primitive integer covector on the orbit parameters, up to sign."""

    orbits: tuple
    coeffs: tuple

    @classmethod
    def from_vector(cls, orbits: tuple, vec: Iterable) -> "MClass":
        vec = [q(x) for x in vec]
        den = 1
        for x in vec:
            den = den * int(x.denominator) // gcd(den, int(x.denominator))
        ints = [int(x * den) for x in vec]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        ints = [x // g for x in ints]
        first = next(x for x in ints if x)
        if first < 0:
            ints = [-x for x in ints]
        return cls(tuple(orbits), tuple(ints))

    def functional(self) -> dict:
        return {o: c for o, c in zip(self.orbits, self.coeffs) if c}

    def render(self) -> str:
        parts = []
        for o, c in zip(self.orbits, self.coeffs):
            if not c:
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {mag}c_{o}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def symbol(self) -> str:
        out = self.render()
        for o, sym in ORBIT_SYMBOL.items():
            out = out.replace(f"c_{o}", f"c{sym}")
        return out


def psi_bar(rs: RootSystem) -> list[tuple[tuple, str]]:
    """Pairs ``(h-part, orbit)`` standing for ``h-part - c_orbit``."""
    return list(rs.psi_bar())


def _lines(config):
    lines: dict = {}
    for v, o in config:
        first = next(x for x in v if x)
        key = tuple(x / first for x in v)
        lines.setdefault(key, []).append((first, o))
    return lines


def circuit_witnesses(rs: RootSystem) -> dict:
    """Map each class to one circuit producing it, as ``[(coeff, h-part, orbit), ...]``."""
    orbits = rs.orbits
    idx = {o: i for i, o in enumerate(orbits)}
    out: dict = {}

    def add(members):
        vec = [ZERO] * len(orbits)
        for d, _, o in members:
            vec[idx[o]] -= d
        if any(vec):
            out.setdefault(MClass.from_vector(orbits, vec), members)

    lines = _lines(psi_bar(rs))
    # parallel pairs: lam * (s1 v - c_o1) - (s2 v - c_o2) with lam = s2 / s1
    for key, elems in lines.items():
        for (s1, o1), (s2, o2) in itertools.combinations(elems, 2):
            add([(s2 / s1, tuple(s1 * x for x in key), o1), (q(-1), tuple(s2 * x for x in key), o2)])
    if len(orbits) == 1 and out:
        return out
    keys = sorted(lines)
    r = rs.rank
    for k in range(3, r + 2):
        for combo in itertools.combinations(keys, k):
            rows = [[combo[j][i] for j in range(k)] for i in range(r)]
            ker = nullspace(rows, k)
            if len(ker) != 1 or not all(ker[0]):
                continue
            for choice in itertools.product(*(lines[key] for key in combo)):
                # element j is s_j * line_j - c_oj; coefficient a_j / s_j kills the h-part
                add([(aj / sj, tuple(sj * x for x in key), oj)
                     for aj, key, (sj, oj) in zip(ker[0], combo, choice)])
    return out


def circuits(rs: RootSystem) -> set:
    """The set of classes ``[mu_sigma]`` over all circuits."""
    return set(circuit_witnesses(rs))


def m_c(rs: RootSystem, c: ParamPoint, classes: set | None = None) -> set:
    classes = circuits(rs) if classes is None else classes
    return {m for m in classes if param_eval(m.functional(), c).is_rational()}


def _check_coset(rs: RootSystem, c: ParamPoint, c2: ParamPoint) -> None:
    a, b = c.as_dict(), c2.as_dict()
    for o in rs.orbits:
        x, y = a[o], b[o]
        n = max(len(x.b), len(y.b))
        bx = tuple(x.b) + (ZERO,) * (n - len(x.b))
        by = tuple(y.b) + (ZERO,) * (n - len(y.b))
        if bx != by or (q(x.a) - q(y.a)).denominator != 1:
            raise CosetMismatch(f"orbit {o}: parameters differ by a non-integral amount")


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def stratum_compare(rs: RootSystem, c: ParamPoint, c2: ParamPoint) -> dict:
    """Compare the c-facets of ``c`` and ``c2`` (same coset of integral shifts)."""
    _check_coset(rs, c, c2)
    classes = sorted(m_c(rs, c), key=lambda m: m.coeffs)
    s1 = [_sign(param_eval(m.functional(), c).a) for m in classes]
    s2 = [_sign(param_eval(m.functional(), c2).a) for m in classes]
    if s1 == s2:
        rel = "same"
    elif s1 == [-x for x in s2]:
        rel = "antipodal"
    else:
        rel = "neither"
    return {"relation": rel, "open": all(s1), "open_prime": all(s2),
            "classes": [m.render() for m in classes], "signs": s1, "signs_prime": s2}


def expected_classes(rs: RootSystem) -> set:
    """The classes listed in the literature for the types with a known answer."""
    orb = rs.orbits
    mk = lambda **kw: MClass.from_vector(orb, [kw.get(o, 0) for o in orb])
    if len(orb) == 1:
        return {mk(**{orb[0]: 1})}
    if rs.type == "BC" and rs.rank == 1:
        return {mk(sharp=1), mk(flat=1), mk(sharp=1, flat=1), mk(sharp=1, flat=-1)}
    if rs.type == "BC":
        out = {mk(nat=1), mk(sharp=1), mk(flat=1)}
        for e in (1, -1):
            out |= {mk(nat=1, sharp=2 * e), mk(nat=1, flat=2 * e), mk(sharp=1, flat=e)}
            for e2 in (1, -1):
                out.add(mk(nat=1, sharp=e, flat=e2))
        return out
    if rs.type in ("F", "G"):
        out = {mk(nat=1), mk(sharp=1)}
        for e in (1, -1):
            out |= {mk(nat=1, sharp=e), mk(nat=1, sharp=2 * e)}
        return out
    raise KeyError(f"no reference list for {rs.name()}")
