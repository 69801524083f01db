"""Operators on the polynomial ring in localized normal form ``sum g_w . w``.

A term ``g . w`` acts by ``f -> g * (w f)`` where ``(w f)(z) = f(w^{-1} z)``.
Composition therefore follows ``(g w)(g' w') = g * w(g') * (w w')``.
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping

from .exactalg import ONE, ZERO, Poly, RatFunc, q
from .rootdata import AffineRoot, RootSystem, WeylElem


class NonPolynomialImage(ArithmeticError):
    """An operator sent a polynomial outside the polynomial ring."""


class InternalBasisError(RuntimeError):
    """Triangular elimination left a residual; the basis data is inconsistent."""


class LengthBoundExceeded(RuntimeError):
    """An elimination needed an element longer than the session bound."""


class DegreeUnbounded(RuntimeError):
    """Formula and probe for the canonical degree disagree."""


class NilOp:
    """Finite sum ``sum_w g_w . w`` with rational-function coefficients."""

    __slots__ = ("rs", "terms", "_hash")

    def __init__(self, rs: RootSystem, terms: Mapping[WeylElem, RatFunc] | None = None):
        self.rs = rs
        self.terms = {w: g for w, g in (terms or {}).items() if g.num.terms}
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, rs: RootSystem) -> "NilOp":
        return cls(rs, {})

    @classmethod
    def identity(cls, rs: RootSystem) -> "NilOp":
        return cls(rs, {rs.identity(): RatFunc.const(1, rs.nvars)})

    @classmethod
    def mult(cls, rs: RootSystem, f) -> "NilOp":
        if isinstance(f, Poly):
            f = RatFunc.from_poly(f)
        elif not isinstance(f, RatFunc):
            f = RatFunc.const(f, rs.nvars)
        return cls(rs, {rs.identity(): f})

    @classmethod
    def group(cls, rs: RootSystem, w: WeylElem, coeff=None) -> "NilOp":
        g = coeff if coeff is not None else RatFunc.const(1, rs.nvars)
        return cls(rs, {w: g})

    # queries --------------------------------------------------------------
    def support(self) -> list:
        return sorted(self.terms, key=lambda w: (self.rs.length(w), self.rs.reduced_word(w)))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: WeylElem) -> RatFunc:
        return self.terms.get(w, RatFunc.const(0, self.rs.nvars))

    def max_length(self) -> int:
        return max((self.rs.length(w) for w in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, NilOp) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # linear structure -------------------------------------------------------
    def __add__(self, other: "NilOp") -> "NilOp":
        t = dict(self.terms)
        for w, g in other.terms.items():
            t[w] = t[w] + g if w in t else g
        return NilOp(self.rs, t)

    def __neg__(self) -> "NilOp":
        return NilOp(self.rs, {w: -g for w, g in self.terms.items()})

    def __sub__(self, other: "NilOp") -> "NilOp":
        return self + (-other)

    def scale(self, f) -> "NilOp":
        """Left multiplication by a function (or constant)."""
        if isinstance(f, Poly):
            f = RatFunc.from_poly(f)
        return NilOp(self.rs, {w: g * f for w, g in self.terms.items()})

    def right_mul(self, f) -> "NilOp":
        """``self o (multiplication by f)``."""
        if isinstance(f, Poly):
            f = RatFunc.from_poly(f)
        elif not isinstance(f, RatFunc):
            return self.scale(q(f))
        rs = self.rs
        return NilOp(rs, {w: g * rs.act_on_ratfunc(w, f) for w, g in self.terms.items()})

    def left_group(self, u: WeylElem) -> "NilOp":
        """``u o self``."""
        rs = self.rs
        return NilOp(rs, {u * w: rs.act_on_ratfunc(u, g) for w, g in self.terms.items()})

    def left_demazure(self, gamma: AffineRoot) -> "NilOp":
        """``theta_gamma o self`` computed term by term."""
        rs = self.rs
        gp = rs.root_poly(gamma)
        inv = RatFunc.make(Poly.const(1, rs.nvars), {gp: 1})
        s = rs.reflection(gamma)
        acc: dict = {}
        for w, g in self.terms.items():
            acc.setdefault(w, []).append(g * inv)
            acc.setdefault(s * w, []).append(-(rs.act_on_ratfunc(s, g) * inv))
        return NilOp(rs, {w: RatFunc.sum(v, rs.nvars) for w, v in acc.items()})

    def compose(self, other: "NilOp") -> "NilOp":
        """``self o other``."""
        rs = self.rs
        acc: dict = {}
        for u, g in self.terms.items():
            for v, h in other.terms.items():
                acc.setdefault(u * v, []).append(g * rs.act_on_ratfunc(u, h))
        return NilOp(rs, {w: RatFunc.sum(v, rs.nvars) for w, v in acc.items()})

    __matmul__ = compose

    def __mul__(self, other) -> "NilOp":
        if isinstance(other, NilOp):
            return self.compose(other)
        return self.right_mul(other)

    def subst_params(self, images) -> "NilOp":
        return NilOp(self.rs, {w: g.subst(images) for w, g in self.terms.items()})

    def specialize_params(self, values: Mapping[str, object]) -> "NilOp":
        rs = self.rs
        idx = {rs.param_index[o]: v for o, v in values.items()}
        return NilOp(rs, {w: g.partial_eval(idx) for w, g in self.terms.items()})

    # action ---------------------------------------------------------------
    def apply_rat(self, f) -> RatFunc:
        rs = self.rs
        if isinstance(f, Poly):
            f = RatFunc.from_poly(f)
        return RatFunc.sum([g * rs.act_on_ratfunc(w, f) for w, g in self.terms.items()], rs.nvars)

    def render(self) -> str:
        rs = self.rs
        if not self.terms:
            return "0"
        parts = [f"({self.terms[w].render(rs.var_names)}) · [{rs.render_word(w)}]" for w in self.support()]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"NilOp({self.render()})"


# --- public operations --------------------------------------------------------

def demazure(rs: RootSystem, alpha: AffineRoot) -> NilOp:
    """``theta_alpha = alpha^{-1} e - alpha^{-1} s_alpha``."""
    if not any(alpha.coeffs):
        raise ValueError("Demazure operator of a constant functional")
    return NilOp.identity(rs).left_demazure(alpha)


def simple_demazure(rs: RootSystem, i: int) -> NilOp:
    return demazure(rs, rs.affine_simple[i])


def simple_reflection_op(rs: RootSystem, i: int) -> NilOp:
    return NilOp.group(rs, rs.s(i))


def op_compose(a: NilOp, b: NilOp) -> NilOp:
    return a.compose(b)


def op_add(a: NilOp, b: NilOp) -> NilOp:
    return a + b


def op_scale(a: NilOp, f) -> NilOp:
    return a.scale(f)


def op_apply(a: NilOp, f: Poly) -> Poly:
    """Image of a polynomial; raises when it leaves the polynomial ring."""
    img = a.apply_rat(f)
    if not img.is_poly():
        raise NonPolynomialImage(img.render(a.rs.var_names))
    return img.num


def pushforward_t(d: Mapping[str, object], a: NilOp) -> NilOp:
    """Substitute ``c_o -> c_o - d_o`` in every coefficient."""
    rs = a.rs
    images = param_shift_images(rs, d)
    if all(im is None for im in images):
        return a
    return a.subst_params(images)


def param_shift_images(rs: RootSystem, d: Mapping[str, object]) -> list:
    images: list = [None] * rs.nvars
    for o, v in d.items():
        v = q(v)
        if v:
            i = rs.param_index[o]
            images[i] = Poly.var(i, rs.nvars) - v
    return images


def shift_poly(rs: RootSystem, f, d: Mapping[str, object]):
    images = param_shift_images(rs, d)
    if all(im is None for im in images):
        return f
    return f.subst(images)


def word_op(rs: RootSystem, word: Iterable[int], gen: Callable[[int], NilOp]) -> NilOp:
    out = NilOp.identity(rs)
    for i in word:
        out = out.compose(gen(i))
    return out


def theta_word(rs: RootSystem, w: WeylElem) -> NilOp:
    """``theta_w`` along the canonical reduced word of ``w``."""
    cache = rs.__dict__.setdefault("_theta_cache", {})
    hit = cache.get(w)
    if hit is None:
        op = NilOp.identity(rs)
        for i in reversed(rs.reduced_word(w)):
            op = op.left_demazure(rs.affine_simple[i])
        hit = op
        cache[w] = hit
    return hit


def triangular_decompose(a: NilOp, basis: Callable[[WeylElem], tuple], bound: int | None):
    """Write ``a = sum_v B_v o f_v`` where ``basis(v) = (B_v, lead_v)``.

    ``B_v`` has Bruhat-maximal support ``v`` with coefficient ``lead_v``.
    Returns the coefficient map; raises on residuals or length overflow.
    """
    rs = a.rs
    residual = a
    coeffs: dict = {}
    guard = 0
    while not residual.is_zero():
        guard += 1
        if guard > 10_000:  # pragma: no cover - defensive
            raise InternalBasisError("elimination did not terminate")
        sup = residual.support()
        maxima = [v for v in sup if not any(u != v and rs.bruhat_leq(v, u) for u in sup)]
        for v in maxima:
            if bound is not None and rs.length(v) > bound:
                raise LengthBoundExceeded(f"needs {rs.render_word(v)} of length {rs.length(v)} > {bound}")
            op, lead = basis(v)
            a_v = residual.coeff(v)
            f = rs.act_on_ratfunc(v.inverse(), a_v * lead.inverse())
            coeffs[v] = coeffs[v] + f if v in coeffs else f
            residual = residual - op.right_mul(f)
            if v in residual.terms:
                raise InternalBasisError(f"coefficient at {rs.render_word(v)} did not cancel")
    return {v: f for v, f in coeffs.items() if f}


def theta_coeffs(a: NilOp, bound: int | None = None) -> tuple[dict, bool]:
    """Right coefficients ``c_w`` with ``a = sum theta_w c_w`` and integrality flag."""
    rs = a.rs

    def basis(v):
        op = theta_word(rs, v)
        return op, op.coeff(v)

    coeffs = triangular_decompose(a, basis, bound)
    return coeffs, all(f.is_poly() for f in coeffs.values())


def from_theta_coeffs(rs: RootSystem, coeffs: Mapping[WeylElem, RatFunc]) -> NilOp:
    out = NilOp.zero(rs)
    for w, f in coeffs.items():
        out = out + theta_word(rs, w).right_mul(f)
    return out


# --- the DAHA embedding ------------------------------------------------------

class Iota:
    """Generator images of the embedding twisted by a parameter shift ``d``."""

    def __init__(self, rs: RootSystem, d: Mapping[str, object] | None = None):
        self.rs = rs
        self.d = {o: q((d or {}).get(o, 0)) for o in rs.orbits}
        self._cache: dict = {}

    def f(self, poly: Poly) -> NilOp:
        return NilOp.mult(self.rs, shift_poly(self.rs, poly, self.d))

    def x(self, i: int) -> NilOp:
        return self.f(self.rs.x_var(i))

    def param(self, orbit: str) -> NilOp:
        return self.f(self.rs.param_var(orbit))

    def one_minus_s(self, i: int) -> NilOp:
        key = ("T", i)
        hit = self._cache.get(key)
        if hit is None:
            rs = self.rs
            a = rs.affine_simple[i]
            lin = rs.root_poly(a) - (rs.param_var(a.orbit) - self.d[a.orbit])
            hit = simple_demazure(rs, i).scale(lin)
            self._cache[key] = hit
        return hit

    def s(self, i: int) -> NilOp:
        key = ("s", i)
        hit = self._cache.get(key)
        if hit is None:
            hit = NilOp.identity(self.rs) - self.one_minus_s(i)
            self._cache[key] = hit
        return hit

    def word(self, word: Iterable[int]) -> NilOp:
        return word_op(self.rs, word, self.s)

    def element(self, w: WeylElem) -> NilOp:
        return self.word(self.rs.reduced_word(w))


def iota(rs: RootSystem, d: Mapping[str, object] | None = None) -> Iota:
    return Iota(rs, d)


def iota_relations(rs: RootSystem, d: Mapping[str, object] | None = None) -> list[tuple[str, bool]]:
    """Check the defining relations on the images; returns (label, ok) pairs."""
    io = Iota(rs, d)
    out = []
    one = NilOp.identity(rs)
    n = len(rs.affine_simple)
    for i in range(n):
        out.append((f"involution s{i}", io.s(i).compose(io.s(i)) == one))
    for i, j in itertools.combinations(range(n), 2):
        m = rs.coxeter[i][j]
        if m is None:
            continue
        lhs = io.word([i, j] * (m // 2) + ([i] if m % 2 else []))
        rhs = io.word([j, i] * (m // 2) + ([j] if m % 2 else []))
        out.append((f"braid s{i},s{j} (m={m})", lhs == rhs))
    for i in range(n):
        a = rs.affine_simple[i]
        for k in range(rs.rank):
            mu = [ZERO] * rs.rank
            mu[k] = ONE
            mu_root = AffineRoot(tuple(mu), ZERO, a.orbit)
            smu = rs.act_on_root(rs.s(i), mu_root)
            lhs = io.s(i).compose(io.x(k)) - io.f(rs.root_poly(smu)).compose(io.s(i))
            pair = rs.pairing(tuple(mu), a.coeffs)
            rhs = NilOp.mult(rs, (rs.param_var(a.orbit) - io.d[a.orbit]).scale(pair))
            out.append((f"s{i} x{k + 1} - x^(s mu) s{i}", lhs == rhs))
    return out


# --- canonical degree -----------------------------------------------------------

def _grouped_symbol_nonzero(a: NilOp, top: int) -> bool:
    rs = a.rs
    groups: dict = {}
    for w, g in a.terms.items():
        if g.degree() != top:
            continue
        tn, tden = g.top()
        sym = RatFunc.make(tn, {l: m for l, m in tden})
        groups.setdefault(w.finite_part(), []).append(sym)
    return any(not RatFunc.sum(v, rs.nvars).is_zero() for v in groups.values())


def _probe_degree(a: NilOp, maxdeg: int):
    rs = a.rs
    k = len(rs.orbits)
    best = None
    for deg in range(maxdeg + 1):
        for combo in itertools.combinations_with_replacement(range(rs.rank), deg):
            mono = Poly.const(1, rs.nvars)
            for i in combo:
                mono = mono * Poly.var(k + i, rs.nvars)
            img = a.apply_rat(mono)
            if img.is_zero():
                continue
            v = img.degree() - deg
            best = v if best is None else max(best, v)
    return best


def canonical_degree(a: NilOp):
    """Least ``n`` with ``a(S_{<=m}) in S_{<=m+n}``; ``None`` for the zero operator."""
    if a.is_zero():
        return None
    formula = max(g.degree() for g in a.terms.values())
    if _grouped_symbol_nonzero(a, formula):
        return formula
    probe = _probe_degree(a, max(2, 2 * max(a.rs.length(w) for w in a.terms)))
    if probe is not None and probe > formula:
        raise DegreeUnbounded(f"probe {probe} exceeds formula {formula}")
    return probe
