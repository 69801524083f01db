"""Clans of ``h^1`` for fixed ``(c, lambda)``, the local chamber arrangement on
``a = P x h^1`` and the genericity test behind the choice of the KZ idempotent.

Everything here is a finite arrangement of affine functionals with rational
coefficients.  Feasibility of strict systems is decided by Fourier-Motzkin
elimination over Q, which also hands back an interior point by
back-substitution (midpoint of the admissible interval at every step).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import ceil
from typing import Mapping, Sequence

from .chambers import Chamber, act_chamber, fundamental_chamber
from .exactalg import ONE, ZERO, nullspace, q, qstr
from .nilhecke import LengthBoundExceeded
from .rootdata import AffineRoot, RootSystem, WeylElem, _dot

# An affine functional is a pair (linear coefficients, constant) standing for
# ``h -> coeffs . h + const``.


# --- exact strict-inequality solver -------------------------------------------------

def _normalize(ineq):
    coeffs, const = ineq
    lead = next((x for x in coeffs if x), None)
    if lead is None:
        return None, const
    s = abs(lead)
    return tuple(x / s for x in coeffs), const / s


def _prune(ineqs):
    """Scale to a unit leading coefficient and keep the tightest of parallel rows.

    Returns None when a constant row is violated.
    """
    best: dict = {}
    for ineq in ineqs:
        coeffs, const = _normalize(ineq)
        if coeffs is None:
            if const <= 0:
                return None
            continue
        if coeffs not in best or const < best[coeffs]:
            best[coeffs] = const
    return sorted(best.items())


def _eliminate(ineqs, k):
    keep, pos, neg = [], [], []
    for coeffs, const in ineqs:
        a = coeffs[k]
        (pos if a > 0 else neg if a < 0 else keep).append((coeffs, const))
    for (cp, bp), (cn, bn) in itertools.product(pos, neg):
        sp, sn = 1 / cp[k], 1 / -cn[k]
        keep.append((tuple(x * sp + y * sn for x, y in zip(cp, cn)), bp * sp + bn * sn))
    return keep


def strict_feasible_point(ineqs: Sequence, dim: int) -> tuple | None:
    """A rational point with ``coeffs . h + const > 0`` for every row, or None."""
    systems = []
    cur = _prune(ineqs)
    if cur is None:
        return None
    for k in range(dim):
        systems.append(cur)
        cur = _prune(_eliminate(cur, k))
        if cur is None:
            return None
    point = [ZERO] * dim
    for k in reversed(range(dim)):
        lo = hi = None
        for coeffs, const in systems[k]:
            a = coeffs[k]
            if not a:
                continue
            rest = const + sum((coeffs[j] * point[j] for j in range(k + 1, dim)), ZERO)
            bound = -rest / a
            if a > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            point[k] = (lo + hi) / 2
        elif lo is not None:
            point[k] = lo + 1
        elif hi is not None:
            point[k] = hi - 1
    return tuple(point)


def _evaluate(fn, h) -> object:
    return _dot(fn[0], h) + fn[1]


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def cone_generators(rows: Sequence[tuple], dim: int) -> tuple[list, list]:
    """Lineality basis and extreme rays of ``{h : r . h >= 0 for r in rows}``."""
    rows = [tuple(r) for r in rows if any(r)]
    lineal = nullspace(rows, dim) if rows else [tuple(ONE if i == j else ZERO for i in range(dim))
                                                for j in range(dim)]
    lineal = [tuple(v) for v in lineal]
    free = dim - len(lineal)
    rays: list = []
    if free <= 0:
        return lineal, rays
    seen = set()
    for sub in itertools.combinations(rows, free - 1):
        ker = nullspace(list(sub) + lineal, dim)
        if len(ker) != 1:
            continue
        v = tuple(ker[0])
        for cand in (v, tuple(-x for x in v)):
            if all(_dot(r, cand) >= 0 for r in rows):
                lead = next(abs(x) for x in cand if x)
                key = tuple(x / lead for x in cand)
                if key not in seen:
                    seen.add(key)
                    rays.append(key)
    return lineal, sorted(rays)


# --- regions ---------------------------------------------------------------------------

@dataclass
class Region:
    """A connected component of the complement of a finite arrangement."""

    functionals: list
    signs: tuple
    point: tuple
    labels: list = field(default_factory=list)
    _generic: bool | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.point)

    def contains(self, h: Sequence) -> bool:
        return all(_sgn(_evaluate(fn, h)) == s for fn, s in zip(self.functionals, self.signs))

    def cone_rows(self) -> list:
        return [tuple(s * x for x in fn[0]) for fn, s in zip(self.functionals, self.signs)]

    def recession(self) -> tuple[list, list]:
        """Generators of ``{h : R + h inside R}``: lineality basis and rays."""
        return cone_generators(self.cone_rows(), self.dim)

    def is_generic(self) -> bool:
        """The recession cone is full-dimensional."""
        if self._generic is None:
            rows = [(r, ZERO) for r in self.cone_rows() if any(r)]
            self._generic = strict_feasible_point(rows, self.dim) is not None
        return self._generic

    def describe(self) -> dict:
        lineal, rays = self.recession()
        return {"point": [qstr(x) for x in self.point], "signs": list(self.signs),
                "walls": list(self.labels), "generic": self.is_generic(),
                "lineality": [[qstr(x) for x in v] for v in lineal],
                "rays": [[qstr(x) for x in v] for v in rays]}


def _hyperplane_key(fn):
    coeffs, const = _normalize(fn)
    return coeffs, const


def arrangement_regions(functionals: Sequence, dim: int, labels: Sequence[str] | None = None) -> list[Region]:
    """All regions, found by splitting along one distinct hyperplane at a time."""
    functionals = list(functionals)
    hyper = []
    seen = set()
    for fn in functionals:
        if not any(fn[0]):
            raise ValueError("constant functional in an arrangement")
        key = _hyperplane_key(fn)
        if key not in seen:
            seen.add(key)
            hyper.append((key[0], key[1]))
    cells = [[]]
    for h in hyper:
        nxt = []
        for cell in cells:
            for s in (1, -1):
                cand = cell + [(tuple(s * x for x in h[0]), s * h[1])]
                if strict_feasible_point(cand, dim) is not None:
                    nxt.append(cand)
        cells = nxt
    out = []
    for cell in cells:
        pt = strict_feasible_point(cell, dim)
        signs = tuple(_sgn(_evaluate(fn, pt)) for fn in functionals)
        out.append(Region(functionals, signs, pt, list(labels or [])))
    out.sort(key=lambda r: r.point)
    return out


def region_of(functionals: Sequence, point: Sequence, labels: Sequence[str] | None = None) -> Region:
    """The region through a point off every hyperplane."""
    point = tuple(q(x) for x in point)
    signs = tuple(_sgn(_evaluate(fn, point)) for fn in functionals)
    if 0 in signs:
        raise ValueError("point lies on a hyperplane of the arrangement")
    return Region(list(functionals), signs, point, list(labels or []))


# --- clans -----------------------------------------------------------------------------

def _cmap(rs: RootSystem, c) -> dict:
    if isinstance(c, Mapping):
        return {o: q(c.get(o, 0)) for o in rs.orbits}
    if isinstance(c, (list, tuple)):
        return {o: q(v) for o, v in zip(rs.orbits, c)}
    return {o: q(c) for o in rs.orbits}


def _lam(rs: RootSystem, lam) -> tuple:
    if lam is None:
        return tuple(ZERO for _ in range(rs.rank))
    lam = tuple(q(x) for x in lam)
    if len(lam) != rs.rank:
        raise ValueError(f"lambda needs {rs.rank} coordinates")
    return lam


def phi_c_lambda(rs: RootSystem, c, lam=None) -> list[AffineRoot]:
    """Affine roots with ``alpha(lambda) = c_alpha``; one level at most per family."""
    c, lam = _cmap(rs, c), _lam(rs, lam)
    out = []
    for f in rs.families:
        n = c[f.orbit] - _dot(f.coeffs, lam)
        if (n - f.offset).denominator == 1:
            out.append(AffineRoot(f.coeffs, n, f.orbit))
    return sorted(out, key=lambda a: (a.coeffs, a.level, a.orbit))


def phi_lambda(rs: RootSystem, lam=None) -> list[AffineRoot]:
    return phi_c_lambda(rs, {o: 0 for o in rs.orbits}, lam)


def _root_fn(a: AffineRoot):
    return (tuple(a.coeffs), q(a.level))


def clan_regions(rs: RootSystem, c, lam=None) -> list[Region]:
    roots = phi_c_lambda(rs, c, lam)
    fns = [_root_fn(a) for a in roots]
    labels = [a.render(rs.var_names[len(rs.orbits):]) for a in roots]
    if not fns:
        return [Region([], (), tuple(ZERO for _ in range(rs.rank)), [])]
    return arrangement_regions(fns, rs.rank, labels)


def clan_of(rs: RootSystem, c, lam, point: Sequence) -> Region:
    roots = phi_c_lambda(rs, c, lam)
    return region_of([_root_fn(a) for a in roots], point,
                     [a.render(rs.var_names[len(rs.orbits):]) for a in roots])


def is_generic_clan(r: Region) -> bool:
    return r.is_generic()


# --- local chambers ----------------------------------------------------------------------

def local_functionals(rs: RootSystem, c, lam=None) -> tuple[list, list]:
    """Functionals on ``a`` (coordinates ``u`` then ``z``) for the local arrangement."""
    k = len(rs.orbits)
    fns, labels = [], []
    for a in phi_lambda(rs, lam):
        fns.append((tuple([ZERO] * k) + tuple(a.coeffs), q(a.level)))
        labels.append(rs.root_poly(a).render(rs.var_names))
    for a in phi_c_lambda(rs, c, lam):
        u = [ZERO] * k
        u[rs.orbits.index(a.orbit)] = -ONE
        fns.append((tuple(u) + tuple(a.coeffs), q(a.level)))
        labels.append(rs.psi_poly(a).render(rs.var_names))
    return fns, labels


def local_chambers(rs: RootSystem, c, lam=None) -> list[Region]:
    fns, labels = local_functionals(rs, c, lam)
    dim = len(rs.orbits) + rs.rank
    if not fns:
        return [Region([], (), tuple(ZERO for _ in range(dim)), [])]
    return arrangement_regions(fns, dim, labels)


def widetilde(C: Chamber, c, lam=None) -> Region:
    """The local chamber containing the global chamber ``C``."""
    fns, labels = local_functionals(C.rs, c, lam)
    return region_of(fns, C.u + C.z, labels)


def antipodal(R1: Region, R2: Region) -> bool:
    """Every local wall changes sign (the wall sets contain both signs of each Phi_lambda root)."""
    return R1.functionals == R2.functionals and all(a == -b for a, b in zip(R1.signs, R2.signs))


def antipodal_search(rs: RootSystem, c, lam, d, w: WeylElem, maxlen: int = 6) -> WeylElem | None:
    """Shortest ``y`` with ``widetilde(y^-1 kappa_d)`` antipodal to ``widetilde(w^-1 kappa_0)``."""
    if rs.length(w) > maxlen:
        raise LengthBoundExceeded(f"{rs.render_word(w)} exceeds bound {maxlen}")
    base = widetilde(act_chamber(w.inverse(), fundamental_chamber(rs)), c, lam)
    kd = fundamental_chamber(rs, d)
    for y in rs.enumerate_weyl(maxlen):
        if antipodal(base, widetilde(act_chamber(y.inverse(), kd), c, lam)):
            return y
    return None


# --- KZ genericity ---------------------------------------------------------------------

def coroot_combination(rs: RootSystem, coeffs: Sequence) -> tuple:
    """``sum_i coeffs[i] * alpha_i^vee`` as a point of the coordinate space."""
    out = [ZERO] * rs.rank
    for k, v in zip(coeffs, rs.coroot_basis):
        out = [a + q(k) * b for a, b in zip(out, v)]
    return tuple(out)


def kz_bound(rs: RootSystem, c, lam=None) -> int:
    """``N`` such that ``<alpha, gamma> <= -N`` on ``R^+`` puts every point in a generic clan."""
    levels = [abs(a.level) for a in phi_c_lambda(rs, c, lam)]
    return 2 * (int(ceil(max(levels, default=ZERO))) + 1)


def kz_gamma(rs: RootSystem, N: int) -> tuple:
    """A coroot-lattice element with ``<alpha, gamma> <= -N`` for all positive roots."""
    rho2 = [ZERO] * rs.rank
    for a in rs.positive:
        if rs.is_reduced(a):
            rho2 = [x + y for x, y in zip(rho2, rs.coroot(a))]
    low = min(_dot(a, rho2) for a in rs.simple)
    k = int(ceil(q(N) / low))
    return tuple(-k * x for x in rho2)


def kz_genericity(rs: RootSystem, c, lam, gamma: Sequence, wlist: Sequence[WeylElem]) -> dict:
    """Clan genericity at ``w^-1 nu_0 - w^-1 gamma`` for each ``w``."""
    gamma = tuple(q(x) for x in gamma)
    cases = []
    for w in wlist:
        wi = w.inverse()
        shift = wi.finite_part().apply(gamma)
        pt = tuple(a - b for a, b in zip(wi.apply(rs.z0), shift))
        clan = clan_of(rs, c, lam, pt)
        cases.append({"w": rs.render_word(w), "point": [qstr(x) for x in pt], "generic": clan.is_generic()})
    return {"gamma": [qstr(x) for x in gamma], "pairings": [qstr(_dot(a, gamma)) for a in rs.simple],
            "cases": cases, "all_generic": all(x["generic"] for x in cases)}
