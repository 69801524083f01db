"""Finite and affine root data, the affine Weyl group and its Bruhat order.

Points of the affine space are rational vectors ``z`` of length ``r`` (the
rank); linear functionals are covectors in the same coordinates.  For types
A and G the coordinates are the first ``r`` restricted epsilon functions, so
``A1`` has simple root ``2x``; all other types use epsilon coordinates (E6
and E7 use simple-root coordinates).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .exactalg import ONE, ZERO, Poly, RatFunc, mat_inv, q, qstr, rref

ORBITS = ("nat", "sharp", "flat")
ORBIT_SYMBOL = {"nat": "♮", "sharp": "♯", "flat": "♭"}
HALF = q("1/2")


class InadmissibleType(ValueError):
    """Unknown type letter or rank out of range."""


def _floor(v) -> int:
    v = q(v)
    return int(v.numerator // v.denominator)


def _ceil(v) -> int:
    return -_floor(-q(v))


def count_levels_between(lo, hi, offset) -> int:
    """Number of ``n`` in ``offset + Z`` with ``-n`` strictly between lo and hi."""
    lo, hi = (q(lo), q(hi)) if lo <= hi else (q(hi), q(lo))
    s = -q(offset)
    return max(0, _ceil(hi - s) - _floor(lo - s) - 1)


def levels_between(lo, hi, offset) -> list:
    """The levels ``n`` in ``offset + Z`` with ``-n`` strictly between lo and hi."""
    lo, hi = (q(lo), q(hi)) if lo <= hi else (q(hi), q(lo))
    s = -q(offset)
    ks = range(_floor(lo - s) + 1, _ceil(hi - s))
    return [-(k + s) for k in ks]


@dataclass(frozen=True)
class AffineRoot:
    """The affine function ``z -> coeffs . z + level`` tagged with its orbit."""

    coeffs: tuple
    level: object
    orbit: str

    def value(self, z: Sequence) -> object:
        return sum((a * q(v) for a, v in zip(self.coeffs, z)), ZERO) + self.level

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(tuple(-a for a in self.coeffs), -self.level, self.orbit)

    def finite(self) -> tuple:
        return self.coeffs

    def render(self, names: Sequence[str] | None = None) -> str:
        r = len(self.coeffs)
        names = names or [f"x{i + 1}" for i in range(r)]
        p = Poly.linear(list(self.coeffs), self.level)
        return p.render(names)


@dataclass(frozen=True)
class Family:
    """Finite part and level offset of a set ``{alpha + n : n in offset + Z}``."""

    coeffs: tuple
    orbit: str
    offset: object


class WeylElem:
    """Affine map ``z -> A z + b`` of the affine space, hashable."""

    __slots__ = ("A", "b", "_hash")

    def __init__(self, A, b):
        self.A = tuple(tuple(q(x) for x in row) for row in A)
        self.b = tuple(q(x) for x in b)
        self._hash = hash((self.A, self.b))

    @classmethod
    def identity(cls, r: int) -> "WeylElem":
        return cls([[ONE if i == j else ZERO for j in range(r)] for i in range(r)], [ZERO] * r)

    @classmethod
    def translation(cls, nu: Sequence) -> "WeylElem":
        r = len(nu)
        return cls([[ONE if i == j else ZERO for j in range(r)] for i in range(r)], nu)

    @property
    def rank(self) -> int:
        return len(self.b)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElem) and self.A == other.A and self.b == other.b

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        A1, b1, A2, b2 = self.A, self.b, other.A, other.b
        r = len(b1)
        A = [[sum((A1[i][k] * A2[k][j] for k in range(r)), ZERO) for j in range(r)] for i in range(r)]
        b = [sum((A1[i][k] * b2[k] for k in range(r)), ZERO) + b1[i] for i in range(r)]
        return WeylElem(A, b)

    def inverse(self) -> "WeylElem":
        return _inverse(self)

    def apply(self, z: Sequence) -> tuple:
        r = len(self.b)
        return tuple(sum((self.A[i][k] * q(z[k]) for k in range(r)), ZERO) + self.b[i] for i in range(r))

    def finite_part(self) -> "WeylElem":
        return WeylElem(self.A, [ZERO] * len(self.b))

    def is_identity(self) -> bool:
        return self == WeylElem.identity(len(self.b))

    def sort_key(self):
        return (self.A, self.b)

    def __repr__(self) -> str:
        return f"WeylElem(A={[[qstr(x) for x in row] for row in self.A]}, b={[qstr(x) for x in self.b]})"


@lru_cache(maxsize=None)
def _inverse(w: WeylElem) -> WeylElem:
    Ai = mat_inv(w.A)
    r = len(w.b)
    b = [-sum((Ai[i][k] * w.b[k] for k in range(r)), ZERO) for i in range(r)]
    return WeylElem(Ai, b)


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), ZERO)


# --- type catalogue -----------------------------------------------------------

def _eps(m: int, *pairs) -> tuple:
    v = [ZERO] * m
    for i, c in pairs:
        v[i] += q(c)
    return tuple(v)


def _closure(simple: list[tuple], ip) -> list[tuple]:
    """All roots generated from ``simple`` by simple reflections."""
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for a in frontier:
            for s in simple:
                k = 2 * ip(a, s) / ip(s, s)
                b = tuple(x - k * y for x, y in zip(a, s))
                if b not in roots:
                    roots.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(roots)


def _catalogue(typ: str, n: int):
    """Ambient data: (ambient dim, simple roots, extra roots, coordinate map kind)."""
    if typ == "A":
        if n < 1:
            raise InadmissibleType("A_n needs n >= 1")
        m = n + 1
        simple = [_eps(m, (i, 1), (i + 1, -1)) for i in range(n)]
        return m, simple, "sumzero"
    if typ == "B":
        if n < 2:
            raise InadmissibleType("B_n needs n >= 2")
        simple = [_eps(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_eps(n, (n - 1, 1))]
        return n, simple, "eps"
    if typ == "C":
        if n < 2:
            raise InadmissibleType("C_n needs n >= 2")
        simple = [_eps(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_eps(n, (n - 1, 2))]
        return n, simple, "eps"
    if typ == "BC":
        if n < 1:
            raise InadmissibleType("BC_n needs n >= 1")
        simple = [_eps(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_eps(n, (n - 1, 1))]
        return n, simple, "eps"
    if typ == "D":
        if n < 4:
            raise InadmissibleType("D_n needs n >= 4")
        simple = [_eps(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_eps(n, (n - 2, 1), (n - 1, 1))]
        return n, simple, "eps"
    if typ == "F":
        if n != 4:
            raise InadmissibleType("F needs rank 4")
        h = HALF
        simple = [_eps(4, (1, 1), (2, -1)), _eps(4, (2, 1), (3, -1)), _eps(4, (3, 1)),
                  _eps(4, (0, h), (1, -h), (2, -h), (3, -h))]
        return 4, simple, "eps"
    if typ == "G":
        if n != 2:
            raise InadmissibleType("G needs rank 2")
        simple = [_eps(3, (0, 1), (1, -1)), _eps(3, (0, -2), (1, 1), (2, 1))]
        return 3, simple, "sumzero"
    if typ == "E":
        if n not in (6, 7, 8):
            raise InadmissibleType("E needs rank 6, 7 or 8")
        h = HALF
        e8 = [_eps(8, (0, h), (7, h), (1, -h), (2, -h), (3, -h), (4, -h), (5, -h), (6, -h)),
              _eps(8, (0, 1), (1, 1))] + [_eps(8, (i, 1), (i - 1, -1)) for i in range(1, 7)]
        return 8, e8[:n], ("eps" if n == 8 else "simple")
    raise InadmissibleType(f"unknown type {typ!r}")


def _orbit_of(typ: str, n: int, sq, nonreduced: bool) -> str:
    if typ in ("A", "D", "E"):
        return "nat"
    if typ == "BC":
        return "flat" if nonreduced else ("nat" if sq == 2 else "sharp")
    if typ == "B":
        return "nat" if sq == 2 else "sharp"
    if typ == "C":
        return "flat" if sq == 4 else "nat"
    if typ == "F":
        return "nat" if sq == 2 else "sharp"
    if typ == "G":
        return "nat" if sq == 6 else "sharp"
    raise InadmissibleType(typ)


class RootSystem:
    """Finite root system with its affinization and affine Weyl group."""

    def __init__(self, typ: str, rank: int):
        typ = typ.upper()
        self.type = typ
        self.rank = rank
        m, simple_amb, kind = _catalogue(typ, rank)
        ip = _dot
        roots_amb = _closure(simple_amb, ip)
        nonred = set()
        if typ == "BC":
            doubles = [tuple(2 * x for x in a) for a in roots_amb if ip(a, a) == 1]
            nonred = set(doubles)
            roots_amb = sorted(set(roots_amb) | nonred)
        r = rank
        if kind == "eps":
            coord = lambda v: tuple(v)
            gram = [[ONE if i == j else ZERO for j in range(r)] for i in range(r)]
        elif kind == "sumzero":
            coord = lambda v: tuple(v[i] - v[m - 1] for i in range(m - 1))
            gram = [[(ONE if i == j else ZERO) - ONE / m for j in range(r)] for i in range(r)]
        else:
            cols = list(zip(*simple_amb))

            def coord(v, cols=cols):
                red, piv = rref([list(row) + [x] for row, x in zip(cols, v)])
                out = [ZERO] * r
                for i, p in enumerate(piv):
                    out[p] = red[i][r]
                return tuple(out)

            gram = [[ip(a, b) for b in simple_amb] for a in simple_amb]
        self.ambient_dim = m
        self.gram = tuple(tuple(q(x) for x in row) for row in gram)
        self._amb = {coord(a): a for a in roots_amb}
        self.roots = tuple(sorted(self._amb))
        self.simple = tuple(coord(a) for a in simple_amb)
        self.nonreduced = frozenset(coord(a) for a in nonred)
        self.orbit = {a: _orbit_of(typ, rank, ip(amb, amb), a in self.nonreduced)
                      for a, amb in self._amb.items()}
        self.orbits = tuple(o for o in ORBITS if o in set(self.orbit.values()))
        # simple-root expansions, positivity, highest root
        self._simple_cols = [list(x) for x in zip(*self.simple)]
        self.positive = tuple(a for a in self.roots if self._height(a) > 0)
        self.theta = max(self.positive, key=lambda a: (self._height(a), a))
        # affine data
        if self.theta in self.nonreduced:
            a0 = AffineRoot(tuple(-x / 2 for x in self.theta), HALF, self.orbit[self.theta])
        else:
            a0 = AffineRoot(tuple(-x for x in self.theta), ONE, self.orbit[self.theta])
        self.alpha0 = a0
        self.affine_simple = (a0,) + tuple(AffineRoot(a, ZERO, self.orbit[a]) for a in self.simple)
        self.families = self._families()
        self.positive_families = tuple(f for f in self.families if self._height(f.coeffs) > 0)
        self.nvars = len(self.orbits) + r
        self.param_index = {o: i for i, o in enumerate(self.orbits)}
        self.var_names = tuple(f"c_{o}" for o in self.orbits) + tuple(f"x{i + 1}" for i in range(r))
        self.z0 = self._alcove_barycenter()
        self.coxeter = self._coxeter_matrix()
        self.simple_reflections = tuple(self.reflection(a) for a in self.affine_simple)
        self.coroot_basis = self._coroot_basis()
        self._poly_img_cache: dict = {}
        self._len_cache: dict = {}
        self._bruhat_cache: dict = {}
        self._word_cache: dict = {}

    # --- finite data ------------------------------------------------------
    def name(self) -> str:
        return f"{self.type}{self.rank}"

    def _height(self, a) -> object:
        red, piv = rref([row + [x] for row, x in zip(self._simple_cols, a)])
        return sum((row[-1] for row in red), ZERO)

    def simple_expansion(self, a) -> tuple:
        red, piv = rref([row + [x] for row, x in zip(self._simple_cols, a)])
        out = [ZERO] * self.rank
        for i, p in enumerate(piv):
            out[p] = red[i][-1]
        return tuple(out)

    def inner(self, a, b) -> object:
        r = self.rank
        return sum((a[i] * self.gram[i][j] * b[j] for i in range(r) for j in range(r)), ZERO)

    def coroot(self, a) -> tuple:
        """Point of the coordinate space representing the coroot of covector ``a``."""
        norm = self.inner(a, a)
        r = self.rank
        return tuple(2 * sum((self.gram[i][j] * a[j] for j in range(r)), ZERO) / norm for i in range(r))

    def pairing(self, a, b) -> object:
        """``<a, b^vee>``."""
        return _dot(a, self.coroot(b))

    def is_reduced(self, a) -> bool:
        return tuple(a) not in self.nonreduced

    def _families(self) -> tuple:
        fams = []
        for a in self.roots:
            if a in self.nonreduced:
                fams.append(Family(tuple(x / 2 for x in a), self.orbit[a], HALF))
            else:
                fams.append(Family(a, self.orbit[a], ZERO))
        return tuple(fams)

    def psi_bar(self) -> tuple:
        """The finite configuration ``{(alpha_bar, orbit)}`` underlying the Psi walls."""
        return tuple((f.coeffs, f.orbit) for f in self.families)

    def _alcove_barycenter(self) -> tuple:
        r = self.rank
        verts = []
        for subset in itertools.combinations(self.affine_simple, r):
            rows = [list(a.coeffs) + [-a.level] for a in subset]
            red, piv = rref(rows)
            if len(piv) == r and r not in piv:
                z = [ZERO] * r
                for i, p in enumerate(piv):
                    z[p] = red[i][r]
                verts.append(z)
        return tuple(sum((v[i] for v in verts), ZERO) / len(verts) for i in range(r))

    def _coxeter_matrix(self) -> tuple:
        out = []
        for a in self.affine_simple:
            row = []
            for b in self.affine_simple:
                if a == b:
                    row.append(1)
                    continue
                k = self.pairing(a.coeffs, b.coeffs) * self.pairing(b.coeffs, a.coeffs)
                row.append({0: 2, 1: 3, 2: 4, 3: 6}.get(int(k)) if k != 4 else None)
            out.append(tuple(row))
        return tuple(out)

    def _coroot_basis(self) -> tuple:
        basis = [self.coroot(a) for a in self.simple]
        if self.type == "BC":
            basis[-1] = self.coroot(tuple(2 * x for x in self.simple[-1]))
        return tuple(basis)

    # --- affine roots and reflections -------------------------------------
    def reflection(self, alpha: AffineRoot) -> WeylElem:
        cv = self.coroot(alpha.coeffs)
        r = self.rank
        A = [[(ONE if i == j else ZERO) - cv[i] * alpha.coeffs[j] for j in range(r)] for i in range(r)]
        b = [-alpha.level * cv[i] for i in range(r)]
        return WeylElem(A, b)

    def act_on_root(self, w: WeylElem, alpha: AffineRoot) -> AffineRoot:
        Ai = w.inverse().A
        r = self.rank
        new = tuple(sum((alpha.coeffs[i] * Ai[i][j] for i in range(r)), ZERO) for j in range(r))
        level = alpha.level - _dot(new, w.b)
        return AffineRoot(new, level, alpha.orbit)

    def is_affine_root(self, alpha: AffineRoot) -> bool:
        for f in self.families:
            if f.coeffs == tuple(alpha.coeffs) and f.orbit == alpha.orbit:
                lv = q(alpha.level) - f.offset
                if lv.denominator == 1:
                    return True
        return False

    def root_poly(self, alpha: AffineRoot) -> Poly:
        k = len(self.orbits)
        return Poly.linear([ZERO] * k + list(alpha.coeffs), alpha.level)

    def psi_poly(self, alpha: AffineRoot) -> Poly:
        """The Psi-wall function ``alpha - c_alpha``."""
        k = len(self.orbits)
        coeffs = [ZERO] * k + list(alpha.coeffs)
        coeffs[self.param_index[alpha.orbit]] = -ONE
        return Poly.linear(coeffs, alpha.level)

    def param_var(self, orbit: str) -> Poly:
        return Poly.var(self.param_index[orbit], self.nvars)

    def x_var(self, i: int) -> Poly:
        return Poly.var(len(self.orbits) + i, self.nvars)

    # --- action on the polynomial ring ------------------------------------
    def poly_images(self, w: WeylElem) -> tuple:
        """Images of the variables under ``f -> f o w^{-1}``."""
        imgs = self._poly_img_cache.get(w)
        if imgs is None:
            wi = w.inverse()
            k = len(self.orbits)
            r = self.rank
            ims: list = [None] * k
            ident = w.is_identity()
            for i in range(r):
                if ident:
                    ims.append(None)
                    continue
                p = Poly.linear([ZERO] * k + list(wi.A[i]), wi.b[i])
                ims.append(None if p == self.x_var(i) else p)
            imgs = tuple(ims)
            self._poly_img_cache[w] = imgs
        return imgs

    def act_on_poly(self, w: WeylElem, f: Poly) -> Poly:
        return f.subst(self.poly_images(w))

    def act_on_ratfunc(self, w: WeylElem, f: RatFunc) -> RatFunc:
        return f.subst(self.poly_images(w))

    # --- lengths and words ------------------------------------------------
    def identity(self) -> WeylElem:
        return WeylElem.identity(self.rank)

    def s(self, i: int) -> WeylElem:
        return self.simple_reflections[i]

    def length(self, w: WeylElem) -> int:
        v = self._len_cache.get(w)
        if v is None:
            p = self.z0
            pw = w.apply(p)
            v = 0
            for f in self.positive_families:
                v += count_levels_between(_dot(f.coeffs, p), _dot(f.coeffs, pw), f.offset)
            self._len_cache[w] = v
        return v

    def is_right_descent(self, w: WeylElem, i: int) -> bool:
        return self.affine_simple[i].value(w.inverse().apply(self.z0)) < 0

    def is_left_descent(self, w: WeylElem, i: int) -> bool:
        return self.affine_simple[i].value(w.apply(self.z0)) < 0

    def reduced_word(self, w: WeylElem) -> tuple:
        word = self._word_cache.get(w)
        if word is None:
            out = []
            cur = w
            while not cur.is_identity():
                for i in range(len(self.affine_simple)):
                    if self.is_left_descent(cur, i):
                        out.append(i)
                        cur = self.s(i) * cur
                        break
                else:  # pragma: no cover - impossible for a valid element
                    raise RuntimeError("no descent found for non-identity element")
            word = tuple(out)
            self._word_cache[w] = word
        return word

    def word_to_elem(self, word: Iterable[int]) -> WeylElem:
        w = self.identity()
        for i in word:
            w = w * self.s(i)
        return w

    def render_word(self, w: WeylElem) -> str:
        word = self.reduced_word(w)
        return "e" if not word else "*".join(f"s{i}" for i in word)

    def bruhat_leq(self, u: WeylElem, v: WeylElem) -> bool:
        key = (u, v)
        hit = self._bruhat_cache.get(key)
        if hit is not None:
            return hit
        lu, lv = self.length(u), self.length(v)
        if lu > lv:
            res = False
        elif lu == lv:
            res = u == v
        elif lu == 0:
            res = True
        else:
            i = self.reduced_word(v)[0]
            sv = self.s(i) * v
            if self.is_left_descent(u, i):
                res = self.bruhat_leq(self.s(i) * u, sv)
            else:
                res = self.bruhat_leq(u, sv)
        self._bruhat_cache[key] = res
        return res

    def enumerate_weyl(self, L: int) -> list:
        """All elements of length at most ``L``, ordered by length then discovery."""
        e = self.identity()
        out = [e]
        seen = {e}
        layer = [e]
        for k in range(L):
            nxt = []
            for w in layer:
                for i in range(len(self.affine_simple)):
                    ws = w * self.s(i)
                    if ws not in seen and self.length(ws) == k + 1:
                        seen.add(ws)
                        nxt.append(ws)
            out.extend(nxt)
            layer = nxt
        return out

    def finite_weyl(self) -> list:
        """The finite Weyl group, generated by the simple reflections of Delta."""
        gens = [self.reflection(a) for a in self.affine_simple[1:]]
        e = self.identity()
        out = [e]
        seen = {e}
        layer = [e]
        while layer:
            nxt = []
            for w in layer:
                for g in gens:
                    wg = w * g
                    if wg not in seen:
                        seen.add(wg)
                        nxt.append(wg)
            out.extend(nxt)
            layer = nxt
        return out

    # --- serialization ------------------------------------------------------
    def describe(self) -> dict:
        cov = lambda a: [qstr(x) for x in a]
        return {
            "type": self.type,
            "rank": self.rank,
            "orbits": list(self.orbits),
            "variables": list(self.var_names),
            "gram": [cov(row) for row in self.gram],
            "simple_roots": [cov(a) for a in self.simple],
            "highest_root": cov(self.theta),
            "alpha0": {"coeffs": cov(self.alpha0.coeffs), "level": qstr(self.alpha0.level),
                       "orbit": self.alpha0.orbit},
            "roots": [{"coeffs": cov(a), "orbit": self.orbit[a],
                       "reduced": a not in self.nonreduced} for a in self.roots],
            "coxeter_matrix": [[("inf" if m is None else m) for m in row] for row in self.coxeter],
            "coroot_basis": [cov(v) for v in self.coroot_basis],
            "z0": cov(self.z0),
        }


_SYSTEMS: dict = {}


def build_root_system(typ: str, rank: int) -> RootSystem:
    """Cached constructor for :class:`RootSystem`."""
    key = (typ.upper(), int(rank))
    rs = _SYSTEMS.get(key)
    if rs is None:
        rs = RootSystem(*key)
        _SYSTEMS[key] = rs
    return rs
