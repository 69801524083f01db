"""Translation bimodules ``B<d> = Hom(kappa_0, kappa_d)`` and the star product."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .cat_a import (DEFAULT_MAXLEN, HomElement, decompose, iota_words, tau_basis)
from .chambers import act_chamber, distance, fundamental_chamber, in_interval
from .exactalg import ZERO, Poly, RatFunc, q, qstr, solve
from .nilhecke import Iota, NilOp, canonical_degree, pushforward_t, simple_demazure, triangular_decompose
from .rootdata import RootSystem, WeylElem


def _dmap(rs: RootSystem, d) -> dict:
    if d is None:
        return {o: ZERO for o in rs.orbits}
    if isinstance(d, Mapping):
        return {o: q(d.get(o, 0)) for o in rs.orbits}
    return {o: q(v) for o, v in zip(rs.orbits, d)}


def _dkey(d: Mapping) -> tuple:
    return tuple(sorted((k, q(v)) for k, v in d.items()))


@dataclass
class BimodElement:
    """An element of ``B<d>`` given by its operator."""

    op: NilOp
    d: dict

    @property
    def rs(self) -> RootSystem:
        return self.op.rs

    def hom(self) -> HomElement:
        rs = self.rs
        return HomElement(self.op, fundamental_chamber(rs), fundamental_chamber(rs, self.d))

    def decompose(self, maxlen: int = DEFAULT_MAXLEN) -> tuple[dict, bool]:
        rs = self.rs
        return decompose(fundamental_chamber(rs), fundamental_chamber(rs, self.d), self.op, maxlen)


def basis_element(rs: RootSystem, d, w: WeylElem, maxlen: int = DEFAULT_MAXLEN) -> BimodElement:
    d = _dmap(rs, d)
    tb = tau_basis(fundamental_chamber(rs), fundamental_chamber(rs, d), maxlen)
    return BimodElement(tb.element(w)[0], d)


def param_element(rs: RootSystem, orbit: str, shift=0) -> BimodElement:
    """Multiplication by ``c_orbit + shift`` as an element of ``B<0>``."""
    return BimodElement(NilOp.mult(rs, rs.param_var(orbit) + q(shift)), _dmap(rs, None))


def star(a2: BimodElement, a1: BimodElement) -> BimodElement:
    """``a2 * a1 = (t_{d1})_* a2 o a1`` in ``B<d1 + d2>``."""
    op = pushforward_t(a1.d, a2.op).compose(a1.op)
    return BimodElement(op, {o: a1.d[o] + a2.d[o] for o in a1.d})


def shift_identity_holds(a: BimodElement) -> bool:
    rs = a.rs
    for o in rs.orbits:
        lhs = star(param_element(rs, o, a.d[o]), a)
        rhs = star(a, param_element(rs, o))
        if lhs.op != rhs.op:
            return False
    return True


def hc_degree_drop(a: BimodElement) -> bool:
    """Parameter commutators do not raise the canonical degree."""
    rs = a.rs
    base = canonical_degree(a.op)
    for o in rs.orbits:
        comm = star(param_element(rs, o), a).op - star(a, param_element(rs, o)).op
        deg = canonical_degree(comm)
        if deg is not None and (base is None or deg > base):
            return False
    return True


# --- graded gamma rule -------------------------------------------------------------

def gamma_predicate(rs: RootSystem, d, e, w: WeylElem, y: WeylElem, literal: bool = False) -> bool:
    """Interval condition for ``gamma^{d,w} * gamma^{e,y} = gamma^{d+e,wy}``.

    The concatenated gallery passes through ``y^{-1} kappa_e``; ``literal``
    uses ``y^{-1} kappa_d`` instead.
    """
    d, e = _dmap(rs, d), _dmap(rs, e)
    de = {o: d[o] + e[o] for o in rs.orbits}
    mid = act_chamber(y.inverse(), fundamental_chamber(rs, d if literal else e))
    end = act_chamber((w * y).inverse(), fundamental_chamber(rs, de))
    return in_interval(mid, fundamental_chamber(rs, None), end)


def gamma_product(rs: RootSystem, d, e, w: WeylElem, y: WeylElem, maxlen: int = DEFAULT_MAXLEN) -> str:
    """Classify the product in the associated graded: 'gamma', 'zero' or 'other'."""
    d, e = _dmap(rs, d), _dmap(rs, e)
    de = {o: d[o] + e[o] for o in rs.orbits}
    k0 = fundamental_chamber(rs)
    n_top = distance(k0, act_chamber(w.inverse(), fundamental_chamber(rs, d))) + \
        distance(k0, act_chamber(y.inverse(), fundamental_chamber(rs, e)))
    prod = star(basis_element(rs, d, w, maxlen), basis_element(rs, e, y, maxlen))
    coeffs, member = prod.decompose(maxlen)
    if not member:
        return "other"
    kde = fundamental_chamber(rs, de)
    wy = w * y
    top = {}
    for v, f in coeffs.items():
        dv = distance(k0, act_chamber(v.inverse(), kde))
        if dv > n_top:
            return "other"
        if dv == n_top:
            top[v] = f
    if not top:
        return "zero"
    if set(top) == {wy} and top[wy] == RatFunc.const(1, rs.nvars):
        return "gamma"
    return "other"


def gamma_rule_check(rs: RootSystem, d, e, w: WeylElem, y: WeylElem, maxlen: int = DEFAULT_MAXLEN) -> bool:
    pred = gamma_predicate(rs, d, e, w, y)
    got = gamma_product(rs, d, e, w, y, maxlen)
    return got == ("gamma" if pred else "zero")


# --- specialization ------------------------------------------------------------------

@dataclass
class SpecializedElement:
    """Operator with parameters fixed to ``c``; lives in ``B^{c'<-c}``."""

    op: NilOp
    c_prime: dict
    c: dict

    def describe(self) -> dict:
        return {"c": {k: qstr(v) for k, v in self.c.items()},
                "c_prime": {k: qstr(v) for k, v in self.c_prime.items()},
                "op": self.op.render()}


def specialize(a: BimodElement, c) -> SpecializedElement:
    rs = a.rs
    c = _dmap(rs, c)
    return SpecializedElement(a.op.specialize_params(c), {o: c[o] - a.d[o] for o in rs.orbits}, c)


def decompose_specialized(rs: RootSystem, d, op: NilOp, c, maxlen: int = DEFAULT_MAXLEN) -> tuple[dict, bool]:
    """Coordinates of a specialized operator against the specialized tau-basis."""
    d, c = _dmap(rs, d), _dmap(rs, c)
    tb = tau_basis(fundamental_chamber(rs), fundamental_chamber(rs, d), maxlen)
    idx = {rs.param_index[o]: v for o, v in c.items()}
    cache = rs.__dict__.setdefault("_spec_cache", {})

    class _Lead:
        def __init__(self, inv):
            self.inv = inv

        def inverse(self):
            return self.inv

    def basis(v):
        key = (id(tb), _dkey(c), v)
        hit = cache.get(key)
        if hit is None:
            bop, lead, inv = tb.element(v)
            hit = (bop.specialize_params(c), _Lead(inv.partial_eval(idx)))
            cache[key] = hit
        return hit

    coeffs = triangular_decompose(op, basis, maxlen)
    return coeffs, all(f.is_poly() for f in coeffs.values())


# --- the rank-one example ---------------------------------------------------------

def _a1_words(rs: RootSystem, io: Iota, L: int):
    return iota_words(rs, io, L)


def a1_generators(rs: RootSystem) -> list[tuple[str, NilOp]]:
    return [("1", NilOp.identity(rs)), ("d1", simple_demazure(rs, 1)), ("d0", simple_demazure(rs, 0))]


def converse_solve(rs: RootSystem, target: NilOp, c, span_len: int, deg: int):
    """Solve ``target = sum_b b o rho_c(w') o p_{b,w'}`` for polynomials p of degree <= deg."""
    c = _dmap(rs, c)
    rho = Iota(rs)
    k = len(rs.orbits)
    columns = []
    for name, b in a1_generators(rs):
        for w in rs.enumerate_weyl(span_len):
            base = b.compose(rho.element(w)).specialize_params(c)
            for j in range(deg + 1):
                mono = Poly.var(k, rs.nvars) ** j
                columns.append(((name, w, j), base.right_mul(mono)))
    support = set(target.terms)
    for _, op in columns:
        support |= set(op.terms)
    rows: list = []
    rhs: list = []
    for u in sorted(support, key=lambda w: (rs.length(w), rs.reduced_word(w))):
        dens: dict = {}
        entries = [op.coeff(u) for _, op in columns] + [target.coeff(u)]
        for g in entries:
            for l, m in g.den:
                dens[l] = max(dens.get(l, 0), m)
        common = Poly.const(1, rs.nvars)
        for l, m in dens.items():
            common = common * (l ** m)
        polys = []
        for g in entries:
            num = g.num
            for l, m in dens.items():
                extra = m - dict(g.den).get(l, 0)
                if extra:
                    num = num * (l ** extra)
            polys.append(num)
        monos = set()
        for p in polys:
            monos |= set(p.terms)
        for mono in sorted(monos):
            rows.append([p.terms.get(mono, ZERO) for p in polys[:-1]])
            rhs.append(polys[-1].terms.get(mono, ZERO))
    sol = solve(rows, rhs)
    if sol is None:
        return None
    return {key: v for (key, _), v in zip(columns, sol) if v}


def a1_example_check(L: int = 2, c_values: Iterable = ("1/3", "-5/2"), maxlen: int | None = None) -> dict:
    """Membership, closure and converse inclusion for the rank-one example."""
    from .rootdata import build_root_system
    rs = build_root_system("A", 1)
    bound = maxlen if maxlen is not None else max(DEFAULT_MAXLEN, L + 2)
    d1 = {"nat": 1}
    rho0 = Iota(rs, {"nat": 0})
    rho1 = Iota(rs, d1)
    words = _a1_words(rs, rho0, L)
    left = [("x1", rho1.x(0)), ("s0", rho1.s(0)), ("s1", rho1.s(1))]
    report = {"L": L, "c_values": [qstr(q(v)) for v in c_values], "membership": 0, "closure": 0,
              "converse": 0, "symbolic_membership": 0, "failures": []}
    k0, k1 = fundamental_chamber(rs), fundamental_chamber(rs, d1)
    products = []
    for bname, b in a1_generators(rs):
        for word, h in words:
            products.append((bname, word, b.compose(h)))
    # symbolic: the unspecialized images already lie in B<1>
    for bname, word, op in products:
        _, member = decompose(k0, k1, op, bound)
        report["symbolic_membership"] += 1
        if not member:
            report["failures"].append(f"symbolic {bname}*{'*'.join(word) or 'e'}")
    for cv in c_values:
        c = {"nat": q(cv)}
        for bname, word, op in products:
            sop = op.specialize_params(c)
            _, member = decompose_specialized(rs, d1, sop, c, bound)
            report["membership"] += 1
            if not member:
                report["failures"].append(f"c={cv} member {bname}*{'*'.join(word) or 'e'}")
            for gname, g in left:
                gop = g.compose(op).specialize_params(c)
                _, member = decompose_specialized(rs, d1, gop, c, bound)
                report["closure"] += 1
                if not member:
                    report["failures"].append(f"c={cv} closure {gname}.{bname}*{'*'.join(word) or 'e'}")
        tb = tau_basis(k0, k1, bound)
        for w in rs.enumerate_weyl(L):
            target = tb.element(w)[0].specialize_params(c)
            sol = None
            for extra in (1, 2, 3):
                sol = converse_solve(rs, target, c, L + extra, L + 2 * extra)
                if sol is not None:
                    break
            report["converse"] += 1
            if sol is None:
                report["failures"].append(f"c={cv} converse {rs.render_word(w)}")
    report["ok"] = not report["failures"]
    return report
