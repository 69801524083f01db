"""Chambers of the periodic arrangement of Phi- and Psi-walls on ``P x h^1``.

A chamber is stored as a rational interior point ``(u, z)``: ``u`` holds one
parameter value per orbit and ``z`` is a point of the affine space.  Chamber
identity is decided by the absence of separating walls.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exactalg import ZERO, Poly, q, qstr
from .rootdata import AffineRoot, RootSystem, WeylElem, _dot, levels_between

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


class NotAdjacent(ValueError):
    """The chambers are neither adjacent across a Phi-wall nor Phi-equivalent."""


class PerturbationExhausted(RuntimeError):
    """No admissible endpoint perturbation was found."""


class ChamberMismatch(ValueError):
    """Composable morphisms must share their middle chamber."""


@dataclass(frozen=True)
class Wall:
    """``kind == 'phi'``: the zero set of ``root``; ``'psi'``: of ``root - c_orbit``."""

    kind: str
    root: AffineRoot

    def value(self, u: Mapping[str, object], z: Sequence) -> object:
        v = self.root.value(z)
        if self.kind == "psi":
            v -= u[self.root.orbit]
        return v

    def poly(self, rs: RootSystem) -> Poly:
        return rs.psi_poly(self.root) if self.kind == "psi" else rs.root_poly(self.root)

    def sort_key(self):
        return (self.kind, self.root.coeffs, self.root.level, self.root.orbit)

    def render(self, rs: RootSystem) -> str:
        return self.poly(rs).render(rs.var_names)


@dataclass(frozen=True)
class Chamber:
    """Interior point ``(u, z)`` of a chamber; ``u`` is ordered like ``rs.orbits``."""

    rs: RootSystem = field(compare=False, hash=False, repr=False)
    u: tuple
    z: tuple
    eps: object = field(default=None, compare=False)

    def u_map(self) -> dict:
        return dict(zip(self.rs.orbits, self.u))

    def key(self) -> tuple:
        return (self.u, self.z)

    def sign(self, wall: Wall) -> int:
        v = wall.value(self.u_map(), self.z)
        return (v > 0) - (v < 0)

    def point(self) -> tuple:
        return self.u + self.z

    def describe(self) -> dict:
        return {"u": {o: qstr(v) for o, v in zip(self.rs.orbits, self.u)},
                "z": [qstr(v) for v in self.z]}


def is_interior(rs: RootSystem, u: Sequence, z: Sequence) -> bool:
    umap = dict(zip(rs.orbits, u))
    for f in rs.families:
        a = _dot(f.coeffs, z) + f.offset
        if a.denominator == 1:
            return False
        b = a - umap[f.orbit]
        if b.denominator == 1:
            return False
    return True


def _certified_eps(rs: RootSystem) -> object:
    z0 = rs.z0
    m0 = None
    for f in rs.families:
        a = _dot(f.coeffs, z0) + f.offset
        frac = a - (a.numerator // a.denominator)
        for v in (frac, 1 - frac):
            if v and (m0 is None or v < m0):
                m0 = v
    u0max = max(abs(x) for x in generic_direction(rs))
    return m0 / (2 * (1 + u0max))


def generic_direction(rs: RootSystem) -> tuple:
    return tuple(q(1) / p for p in PRIMES[: len(rs.orbits)])


def make_chamber(rs: RootSystem, u: Sequence, z: Sequence, eps=None) -> Chamber:
    u = tuple(q(x) for x in u)
    z = tuple(q(x) for x in z)
    if not is_interior(rs, u, z):
        raise ValueError("point lies on a wall")
    return Chamber(rs, u, z, eps)


def _dvec(rs: RootSystem, d) -> tuple:
    if d is None:
        return tuple(ZERO for _ in rs.orbits)
    if isinstance(d, Mapping):
        return tuple(q(d.get(o, 0)) for o in rs.orbits)
    return tuple(q(x) for x in d)


def fundamental_chamber(rs: RootSystem, d=None) -> Chamber:
    """``kappa_d``: the chamber through ``(d + eps u0, z0)``."""
    eps = _certified_eps(rs)
    u0 = generic_direction(rs)
    dv = _dvec(rs, d)
    u = tuple(x + eps * y for x, y in zip(dv, u0))
    return make_chamber(rs, u, rs.z0, eps)


def act_chamber(w: WeylElem, C: Chamber) -> Chamber:
    return Chamber(C.rs, C.u, w.apply(C.z), C.eps)


def translate_chamber(d, C: Chamber) -> Chamber:
    dv = _dvec(C.rs, d)
    return Chamber(C.rs, tuple(a + b for a, b in zip(C.u, dv)), C.z, C.eps)


def separating_walls(C: Chamber, D: Chamber) -> list[Wall]:
    """Walls whose functions change sign between the interior points."""
    rs = C.rs
    cu, du = C.u_map(), D.u_map()
    out = []
    for f in rs.positive_families:
        a, b = _dot(f.coeffs, C.z), _dot(f.coeffs, D.z)
        for n in levels_between(a, b, f.offset):
            out.append(Wall("phi", AffineRoot(f.coeffs, n, f.orbit)))
    for f in rs.families:
        a = _dot(f.coeffs, C.z) - cu[f.orbit]
        b = _dot(f.coeffs, D.z) - du[f.orbit]
        for n in levels_between(a, b, f.offset):
            out.append(Wall("psi", AffineRoot(f.coeffs, n, f.orbit)))
    return sorted(out, key=Wall.sort_key)


def distance(C: Chamber, D: Chamber) -> int:
    return len(separating_walls(C, D))


def same_chamber(C: Chamber, D: Chamber) -> bool:
    return not separating_walls(C, D)


def in_interval(M: Chamber, C: Chamber, D: Chamber) -> bool:
    """``M`` lies in ``[C, D]``, checked through the sign-set inclusions."""
    walls = set(separating_walls(C, D)) | set(separating_walls(C, M)) | set(separating_walls(M, D))
    for w in walls:
        sc, sm, sd = C.sign(w), M.sign(w), D.sign(w)
        # positive on C and D forces positive on M; negative likewise
        if sc == sd and sm != sc:
            return False
    return True


def dinv(C: Chamber, D: Chamber) -> Poly:
    """Product of the Psi separators that are positive on ``D``."""
    rs = C.rs
    out = Poly.const(1, rs.nvars)
    for w in separating_walls(C, D):
        if w.kind == "psi" and D.sign(w) > 0:
            out = out * w.poly(rs)
    return out


def oriented_phi(C: Chamber, w: Wall) -> AffineRoot:
    """The sign of the Phi-wall root that is positive on ``C``."""
    return w.root if C.sign(w) > 0 else -w.root


def einv(C: Chamber, D: Chamber) -> Poly:
    """Product of the Phi separators oriented positively on ``C``."""
    rs = C.rs
    out = Poly.const(1, rs.nvars)
    for w in separating_walls(C, D):
        if w.kind == "phi":
            out = out * rs.root_poly(oriented_phi(C, w))
    return out


@dataclass
class Gallery:
    chambers: list
    walls: list

    def __len__(self) -> int:
        return len(self.walls)

    @property
    def source(self) -> Chamber:
        return self.chambers[0]

    @property
    def target(self) -> Chamber:
        return self.chambers[-1]

    def describe(self) -> dict:
        rs = self.chambers[0].rs
        return {"chambers": [c.describe() for c in self.chambers],
                "walls": [{"kind": w.kind, "function": w.render(rs)} for w in self.walls]}


def _crossings(C: Chamber, p_u, p_z, walls):
    out = []
    cu = C.u_map()
    for w in walls:
        a = w.value(cu, C.z)
        b = w.value(dict(zip(C.rs.orbits, p_u)), p_z)
        out.append((a / (a - b), w))
    return out


def _walk(C: Chamber, target: Chamber, qu, qz) -> Gallery | None:
    rs = C.rs
    walls = separating_walls(C, target)
    cr = sorted(_crossings(C, qu, qz, walls), key=lambda t: t[0])
    ts = [t for t, _ in cr]
    if len(set(ts)) != len(ts):
        return None
    chambers = [C]
    for k in range(1, len(cr)):
        t = (ts[k - 1] + ts[k]) / 2
        u = tuple(a + t * (b - a) for a, b in zip(C.u, qu))
        z = tuple(a + t * (b - a) for a, b in zip(C.z, qz))
        chambers.append(Chamber(rs, u, z, C.eps))
    if cr:
        chambers.append(target)
    return Gallery(chambers, [w for _, w in cr])


def minimal_gallery(C: Chamber, D: Chamber, variant: int = 0) -> Gallery:
    """Segment walk from ``C`` to ``D``.

    ``variant`` selects alternative deterministic perturbations of the
    endpoint (0 is the canonical one); used to produce distinct galleries.
    """
    rs = C.rs
    n_target = distance(C, D)
    dim_u, dim_z = len(C.u), len(C.z)
    if variant == 0:
        g = _walk(C, D, D.u, D.z)
        if g is not None:
            return g
    schedule = []
    for k in range(len(PRIMES)):
        direction = [q(1) / PRIMES[(k + i + variant) % len(PRIMES)] * (1 if (i + variant) % 2 == 0 else -1)
                     for i in range(dim_u + dim_z)]
        for j in range(1, 8):
            schedule.append([x / (PRIMES[k] ** j) for x in direction])
    for off in schedule:
        qu = tuple(a + b for a, b in zip(D.u, off[:dim_u]))
        qz = tuple(a + b for a, b in zip(D.z, off[dim_u:]))
        if not is_interior(rs, qu, qz):
            continue
        moved = Chamber(rs, qu, qz, D.eps)
        if separating_walls(moved, D):
            continue
        g = _walk(C, D, qu, qz)
        if g is not None:
            assert len(g) == n_target
            return g
    raise PerturbationExhausted("no perturbation separates the crossing parameters")


def perturbed_chamber(C: Chamber, offset: Sequence) -> Chamber | None:
    """Another interior point of the same chamber, or None."""
    rs = C.rs
    k = len(C.u)
    u = tuple(a + q(b) for a, b in zip(C.u, offset[:k]))
    z = tuple(a + q(b) for a, b in zip(C.z, offset[k:]))
    if not is_interior(rs, u, z):
        return None
    D = Chamber(rs, u, z, C.eps)
    return D if not separating_walls(C, D) else None


def gallery_from_points(C: Chamber, D: Chamber, start: Chamber, end: Chamber) -> Gallery | None:
    """Segment walk between alternative interior points of ``C`` and ``D``."""
    g = _walk(start, end, end.u, end.z)
    if g is None:
        return None
    g.chambers[0] = C
    g.chambers[-1] = D
    return g
