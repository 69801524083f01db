"""Hom-spaces of the chamber category: gallery operators and the tau-basis.

``tau_basis_elem(C, D, w)`` is ``w o tau_G`` for the canonical segment-walk
gallery ``G`` from ``C`` to ``w^{-1} D``.  Its support is checked at run time
to have ``w`` as unique Bruhat-maximal element with an invertible
coefficient, which is what the triangular elimination in :func:`decompose`
relies on.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .chambers import (Chamber, ChamberMismatch, Gallery, NotAdjacent, act_chamber, dinv,
                       fundamental_chamber, minimal_gallery, oriented_phi, same_chamber,
                       separating_walls)
from .exactalg import Poly, RatFunc, div_linear, monic_linear
from .nilhecke import (Iota, LengthBoundExceeded, NilOp, iota_relations, triangular_decompose)
from .rootdata import RootSystem, WeylElem

DEFAULT_MAXLEN = 6


class LeadingTermViolation(RuntimeError):
    """A tau-basis candidate does not have the expected leading term."""


@dataclass
class HomElement:
    op: NilOp
    source: Chamber
    target: Chamber
    decomposition: dict | None = field(default=None, compare=False)

    def decompose(self, maxlen: int = DEFAULT_MAXLEN) -> tuple[dict, bool]:
        coeffs, member = decompose(self.source, self.target, self.op, maxlen)
        self.decomposition = coeffs
        return coeffs, member


# --- gallery operators --------------------------------------------------------

def tau_step(C: Chamber, D: Chamber) -> NilOp:
    rs = C.rs
    walls = separating_walls(C, D)
    phis = [w for w in walls if w.kind == "phi"]
    if phis:
        if len(walls) != 1:
            raise NotAdjacent("a Phi-wall crossing must be the only separating wall")
        from .nilhecke import demazure
        return demazure(rs, oriented_phi(C, phis[0]))
    return NilOp.mult(rs, dinv(C, D))


def _apply_step(X: NilOp, C: Chamber, D: Chamber, wall) -> NilOp:
    rs = C.rs
    if wall.kind == "phi":
        return X.left_demazure(oriented_phi(C, wall))
    if D.sign(wall) > 0:
        return X.scale(wall.poly(rs))
    return X


def tau_gallery(G: Gallery) -> NilOp:
    """``tau_{C_{n-1},C_n} o ... o tau_{C_0,C_1}``."""
    rs = G.chambers[0].rs
    X = NilOp.identity(rs)
    for k, wall in enumerate(G.walls):
        X = _apply_step(X, G.chambers[k], G.chambers[k + 1], wall)
    return X


def dinv_gallery(G: Gallery) -> Poly:
    rs = G.chambers[0].rs
    out = Poly.const(1, rs.nvars)
    for k, wall in enumerate(G.walls):
        if wall.kind == "psi" and G.chambers[k + 1].sign(wall) > 0:
            out = out * wall.poly(rs)
    return out


def _invert_with(lead: RatFunc, candidates) -> RatFunc:
    """Inverse of ``lead`` whose numerator factors over ``candidates``."""
    num = lead.num
    factors: dict = {}
    changed = True
    while not num.is_const() and changed:
        changed = False
        for l in candidates:
            qt = div_linear(num, l)
            if qt is not None:
                num = qt
                factors[l] = factors.get(l, 0) + 1
                changed = True
                break
    if not num.is_const():
        raise LeadingTermViolation("leading coefficient is not a product of walls")
    inv_num = Poly.const(1 / num.const_value(), lead.nvars)
    for l, m in lead.den:
        inv_num = inv_num * (l ** m)
    return RatFunc.make(inv_num, factors)


class TauBasis:
    """Cached tau-basis of ``Hom(C, D)`` up to a length bound."""

    def __init__(self, C: Chamber, D: Chamber, maxlen: int = DEFAULT_MAXLEN):
        self.C, self.D, self.maxlen = C, D, maxlen
        self.rs = C.rs
        self._cache: dict = {}

    def gallery(self, w: WeylElem, variant: int = 0) -> Gallery:
        return minimal_gallery(self.C, act_chamber(w.inverse(), self.D), variant)

    def element(self, w: WeylElem) -> tuple[NilOp, RatFunc, RatFunc]:
        """(operator, leading coefficient, its inverse)."""
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        rs = self.rs
        if rs.length(w) > self.maxlen:
            raise LengthBoundExceeded(f"{rs.render_word(w)} exceeds bound {self.maxlen}")
        G = self.gallery(w)
        op = tau_gallery(G).left_group(w)
        for v in op.terms:
            if v != w and not rs.bruhat_leq(v, w):
                raise LeadingTermViolation(f"support element {rs.render_word(v)} not below {rs.render_word(w)}")
        lead = op.coeff(w)
        if lead.is_zero():
            raise LeadingTermViolation("vanishing leading coefficient")
        cands = []
        for wall in G.walls:
            p = rs.act_on_poly(w, wall.poly(rs))
            cands.append(monic_linear(p)[1])
        inv = _invert_with(lead, cands)
        hit = (op, lead, inv)
        self._cache[w] = hit
        return hit

    def basis_fn(self, v: WeylElem):
        op, lead, inv = self.element(v)
        return op, lead, inv


_BASES: dict = {}


def tau_basis(C: Chamber, D: Chamber, maxlen: int = DEFAULT_MAXLEN) -> TauBasis:
    key = (C.rs.name(), C.key(), D.key())
    tb = _BASES.get(key)
    if tb is None:
        tb = TauBasis(C, D, maxlen)
        _BASES[key] = tb
    tb.maxlen = max(tb.maxlen, maxlen)
    return tb


def tau_basis_elem(C: Chamber, D: Chamber, w: WeylElem, maxlen: int = DEFAULT_MAXLEN) -> HomElement:
    op = tau_basis(C, D, maxlen).element(w)[0]
    return HomElement(op, C, D, {w: RatFunc.const(1, C.rs.nvars)})


def decompose(C: Chamber, D: Chamber, a: NilOp, maxlen: int = DEFAULT_MAXLEN) -> tuple[dict, bool]:
    """Right tau-coordinates of ``a`` in ``Hom(C, D)`` and the membership flag."""
    tb = tau_basis(C, D, maxlen)

    def basis(v):
        op, lead, inv = tb.element(v)
        return op, _Lead(lead, inv)

    coeffs = triangular_decompose(a, basis, maxlen)
    return coeffs, all(f.is_poly() for f in coeffs.values())


class _Lead:
    """Leading coefficient with a precomputed inverse (duck-types RatFunc.inverse)."""

    def __init__(self, lead: RatFunc, inv: RatFunc):
        self.lead, self.inv = lead, inv

    def inverse(self) -> RatFunc:
        return self.inv


def rebuild(C: Chamber, D: Chamber, coeffs: Mapping[WeylElem, RatFunc], maxlen: int = DEFAULT_MAXLEN) -> NilOp:
    tb = tau_basis(C, D, maxlen)
    out = NilOp.zero(C.rs)
    for w, f in coeffs.items():
        out = out + tb.element(w)[0].right_mul(f)
    return out


def compose_hom(g: HomElement, f: HomElement) -> HomElement:
    if not same_chamber(g.source, f.target):
        raise ChamberMismatch("source of the left factor differs from target of the right factor")
    return HomElement(g.op.compose(f.op), f.source, g.target)


# --- embedding check ---------------------------------------------------------

def iota_words(rs: RootSystem, io: Iota, depth: int) -> list[tuple[tuple, NilOp]]:
    """Distinct images of words of length <= depth in the generators s_i, x_k."""
    gens = [(f"s{i}", io.s(i)) for i in range(len(rs.affine_simple))]
    gens += [(f"x{k + 1}", io.x(k)) for k in range(rs.rank)]
    seen = {NilOp.identity(rs): ()}
    layer = [((), NilOp.identity(rs))]
    for _ in range(depth):
        nxt = []
        for word, op in layer:
            for name, g in gens:
                new = op.compose(g)
                if new not in seen:
                    seen[new] = word + (name,)
                    nxt.append((word + (name,), new))
        layer = nxt
    return [(w, op) for op, w in seen.items()]


def verify_iota(rs: RootSystem, d: Mapping[str, object] | None = None, depth: int = 2) -> dict:
    """Relations on the generator images and membership of word images."""
    io = Iota(rs, d)
    rels = iota_relations(rs, io.d)
    kd = fundamental_chamber(rs, io.d)
    failures = [label for label, ok in rels if not ok]
    n_words = 0
    for word, op in iota_words(rs, io, depth):
        n_words += 1
        _, member = decompose(kd, kd, op, max(depth, 0))
        if not member:
            failures.append("word " + "*".join(word))
    return {"relations": len(rels), "words": n_words, "failures": failures, "ok": not failures}
