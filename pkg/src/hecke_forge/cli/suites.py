"""Verification suites behind ``hecke-forge verify``.

A suite is planned as a list of self-contained case specs (plain JSON data,
so they can be shipped to worker processes) and each spec is run by
:func:`run_case`.  Case order is fixed by the plan, so reports are
deterministic for a given seed.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from ..cat_a import decompose, rebuild, tau_basis, tau_gallery, verify_iota
from ..chambers import (Gallery, act_chamber, dinv, distance, fundamental_chamber, minimal_gallery)
from ..clans import (antipodal, antipodal_search, clan_regions, coroot_combination, kz_bound, kz_gamma,
                     kz_genericity, widetilde)
from ..exactalg import ParamPoint, Poly, RatFunc, q, qstr
from ..nilhecke import NilOp, demazure, iota_relations, op_apply, simple_demazure
from ..rootdata import RootSystem, build_root_system
from ..strata import circuits, expected_classes, stratum_compare
from ..translation import (a1_example_check, basis_element, gamma_predicate, gamma_product,
                           hc_degree_drop, shift_identity_holds, star)

SUITES = ("demazure", "iota", "basis", "galleries", "gamma", "a1", "strata", "clans", "hc")


class UnknownSuite(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""



@dataclass
class CaseSpec:
    suite: str
    name: str
    typ: str
    rank: int
    maxlen: int
    seed: int
    data: dict

    def repro(self) -> str:
        return (f"hecke-forge verify {self.suite} --type {self.typ} --rank {self.rank} "
                f"--maxlen {self.maxlen} --seed {self.seed} --case {self.name}")


def _rng(spec: CaseSpec) -> random.Random:
    return random.Random(f"{spec.seed}:{spec.suite}:{spec.name}")


def _shifts(rs: RootSystem, radius: int = 1) -> list[dict]:
    rng = range(-radius, radius + 1)
    return [dict(zip(rs.orbits, v)) for v in itertools.product(rng, repeat=len(rs.orbits))]


def _dstr(d: dict) -> str:
    return ",".join(str(d[k]) for k in sorted(d))


def _word_elem(rs: RootSystem, word) -> object:
    return rs.word_to_elem(word)


def random_poly(rng: random.Random, rs: RootSystem, maxdeg: int = 4, nterms: int = 4) -> Poly:
    out = Poly.zero(rs.nvars)
    for _ in range(nterms):
        deg = rng.randint(0, maxdeg)
        exps = [0] * rs.nvars
        for _ in range(deg):
            exps[rng.randrange(rs.nvars)] += 1
        mono = Poly.const(rng.randint(-5, 5), rs.nvars)
        for i, e in enumerate(exps):
            if e:
                mono = mono * Poly.var(i, rs.nvars) ** e
        out = out + mono
    return out


# --- planning -----------------------------------------------------------------------------

def plan(suite: str, typ: str, rank: int, maxlen: int, seed: int) -> list[CaseSpec]:
    if suite not in SUITES:
        raise UnknownSuite(suite)
    rs = build_root_system(typ, rank)
    mk = lambda name, **data: CaseSpec(suite, name, rs.type, rs.rank, maxlen, seed, data)
    cases: list[CaseSpec] = []
    n_aff = len(rs.affine_simple)
    if suite == "demazure":
        cases += [mk(f"square-{i}", i=i) for i in range(n_aff)]
        for i, j in itertools.combinations(range(n_aff), 2):
            if rs.coxeter[i][j] is not None:
                cases.append(mk(f"braid-{i}-{j}", i=i, j=j))
        cases += [mk(f"leibniz-{k}", i=k % n_aff) for k in range(100)]
    elif suite == "iota":
        depth = min(maxlen, 4)
        for d in _shifts(rs):
            cases.append(mk(f"relations-{_dstr(d)}", d=d))
            cases.append(mk(f"words-{_dstr(d)}", d=d, depth=depth))
    elif suite == "basis":
        cases += [mk(f"roundtrip-{k}") for k in range(50)]
        cases += [mk(f"independence-{k}", index=k) for k in range(10)]
        cases += [mk(f"nonminimal-{k}") for k in range(10)]
    elif suite == "galleries":
        cases += [mk(f"anchor-{i}", i=i) for i in range(n_aff)]
    elif suite == "gamma":
        glen = min(3, maxlen)
        elems = [list(rs.reduced_word(w)) for w in rs.enumerate_weyl(glen)]
        for d, e in itertools.product(_shifts(rs), repeat=2):
            cases.append(mk(f"grid-{_dstr(d)}-{_dstr(e)}", d=d, e=e, words=elems))
    elif suite == "a1":
        cases.append(mk(f"example-L{maxlen}", L=maxlen))
    elif suite == "strata":
        cases.append(mk("circuits"))
        cases += [mk(f"compare-{k}") for k in range(5)]
    elif suite == "clans":
        for k, (c, lam) in enumerate(_clan_samples(rs)):
            cases.append(mk(f"clans-{k}", c=c, lam=lam))
            cases.append(mk(f"kz-{k}", c=c, lam=lam))
        cases.append(mk("antipode"))
    elif suite == "hc":
        for d in _shifts(rs):
            cases.append(mk(f"shift-{_dstr(d)}", d=d, length=min(2, maxlen)))
        cases += [mk(f"assoc-{k}") for k in range(10)]
    return cases


def _clan_samples(rs: RootSystem) -> list[tuple[list, list]]:
    zero = ["0"] * rs.rank
    if rs.type == "A" and rs.rank == 1:
        return [(["1"], zero), (["1/2"], zero), (["0"], zero), (["3/2"], ["1/4"]), (["-1"], ["1/3"])]
    if rs.type == "BC" and rs.rank == 1:
        return [(["1/2", "1/2"], zero), (["1", "0"], zero), (["0", "0"], zero), (["1/2", "1"], zero),
                (["1/3", "1/2"], ["1/6"])]
    k = len(rs.orbits)
    return [(["1"] * k, zero), (["0"] * k, zero), (["1/2"] * k, zero)]


# --- running --------------------------------------------------------------------------------

def run_case(spec: CaseSpec) -> dict:
    rs = build_root_system(spec.typ, spec.rank)
    try:
        ok, detail = _RUNNERS[spec.suite](spec, rs)
    except Exception as exc:  # a crash is a failed case, reported with its reason
        ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return {"name": spec.name, "ok": bool(ok), "detail": detail, "repro": spec.repro()}


def _run_demazure(spec, rs):
    d = spec.data
    if spec.name.startswith("square"):
        t = simple_demazure(rs, d["i"])
        return t.compose(t).is_zero(), {}
    if spec.name.startswith("braid"):
        i, j = d["i"], d["j"]
        m = rs.coxeter[i][j]
        out = {}
        for label, gen in (("theta", lambda k: simple_demazure(rs, k)),
                           ("group", lambda k: NilOp.group(rs, rs.s(k)))):
            a = b = NilOp.identity(rs)
            for k in range(m):
                a = a.compose(gen((i, j)[k % 2]))
                b = b.compose(gen((j, i)[k % 2]))
            out[label] = a == b
        return all(out.values()), out
    rng = _rng(spec)
    i = d["i"]
    f, g = random_poly(rng, rs), random_poly(rng, rs)
    t = simple_demazure(rs, i)
    s = rs.s(i)
    lhs = op_apply(t, f * g)
    rhs = op_apply(t, f) * g + rs.act_on_poly(s, f) * op_apply(t, g)
    return lhs == rhs, {"f": f.render(rs.var_names), "g": g.render(rs.var_names)}


def _run_iota(spec, rs):
    d = {k: q(v) for k, v in spec.data["d"].items()}
    if spec.name.startswith("relations"):
        rels = iota_relations(rs, d)
        bad = [label for label, ok in rels if not ok]
        return not bad, {"relations": len(rels), "failed": bad}
    rep = verify_iota(rs, d, spec.data["depth"])
    return rep["ok"], {"words": rep["words"], "failures": rep["failures"][:10]}


def _basis_pair(rs, rng):
    d = {o: rng.choice((-1, 0, 1)) for o in rs.orbits}
    return fundamental_chamber(rs), fundamental_chamber(rs, d), d


def _run_basis(spec, rs):
    rng = _rng(spec)
    L = spec.maxlen
    elems = rs.enumerate_weyl(L)
    if spec.name.startswith("roundtrip"):
        C, D, d = _basis_pair(rs, rng)
        chosen = rng.sample(elems, min(3, len(elems)))
        coeffs = {w: RatFunc.from_poly(random_poly(rng, rs, 2, 3)) for w in chosen}
        coeffs = {w: f for w, f in coeffs.items() if not f.num.is_zero()}
        a = rebuild(C, D, coeffs, L)
        got, member = decompose(C, D, a, L)
        got = {w: f for w, f in got.items() if not f.num.is_zero()}
        return member and got == coeffs, {"d": {k: str(v) for k, v in d.items()},
                                          "support": [rs.render_word(w) for w in chosen]}
    if spec.name.startswith("independence"):
        found = _independent_pairs(rs, L, spec.data["index"] + 1)
        if len(found) <= spec.data["index"]:
            return False, {"error": "not enough pairs with distinct minimal galleries"}
        C, D, w, G1, G2 = found[spec.data["index"]]
        return _below_top(C, D, (tau_gallery(G1) - tau_gallery(G2)).left_group(w), len(G1), L,
                          {"word": rs.render_word(w), "length": len(G1)})
    # non-minimal: detour through a third chamber
    C, D, d = _basis_pair(rs, rng)
    short = [w for w in elems if rs.length(w) <= 2]
    near = [act_chamber(y.inverse(), fundamental_chamber(rs, e))
            for y in rs.enumerate_weyl(1) for e in _shifts(rs)]
    pairs = list(itertools.product(short, near))
    rng.shuffle(pairs)
    for w, M in pairs:
        E = act_chamber(w.inverse(), D)
        G1, G2 = minimal_gallery(C, M), minimal_gallery(M, E)
        n = len(G1) + len(G2)
        if n > distance(C, E):
            G = Gallery(G1.chambers + G2.chambers[1:], G1.walls + G2.walls)
            return _below_top(C, D, tau_gallery(G).left_group(w), n, max(L, n),
                              {"word": rs.render_word(w), "length": n, "distance": distance(C, E)})
    return False, {"error": "no detour found"}


def _below_top(C, D, X, n, L, info):
    coeffs, member = decompose(C, D, X, L)
    top = max((distance(C, act_chamber(v.inverse(), D)) for v, f in coeffs.items() if not f.num.is_zero()),
              default=-1)
    info.update({"member": member, "top": top})
    return member and top < n, info


def _independent_pairs(rs, L, need):
    cache = rs.__dict__.setdefault("_indep_pairs", {})
    hit = cache.get(L)
    if hit is not None and len(hit) >= need:
        return hit
    out = []
    C = fundamental_chamber(rs)
    for d in _shifts(rs):
        D = fundamental_chamber(rs, d)
        tb = tau_basis(C, D, L)
        for w in rs.enumerate_weyl(min(L, 3)):
            G1 = tb.gallery(w)
            for v in range(1, 6):
                G2 = tb.gallery(w, v)
                if [c.key() for c in G2.chambers] != [c.key() for c in G1.chambers] and \
                        [x.sort_key() for x in G1.walls] != [x.sort_key() for x in G2.walls]:
                    out.append((C, D, w, G1, G2))
                    break
            if len(out) >= max(need, 10):
                cache[L] = out
                return out
    cache[L] = out
    return out


def _run_galleries(spec, rs):
    i = spec.data["i"]
    a = rs.affine_simple[i]
    k0 = fundamental_chamber(rs)
    s = rs.s(i)
    sk = act_chamber(s, k0)
    c = rs.param_var(a.orbit)
    alpha = rs.root_poly(a)
    out = {"distance": distance(k0, sk) == 3,
           "d_forward": dinv(k0, sk) == -alpha - c,
           "d_backward": dinv(sk, k0) == alpha - c}
    G = minimal_gallery(k0, sk)
    out["tau"] = tau_gallery(G).left_group(s) == demazure(rs, a).scale(alpha - c)
    return all(out.values()), out


def _run_gamma(spec, rs):
    d, e = spec.data["d"], spec.data["e"]
    bad = []
    n = 0
    for wa, ya in itertools.product(spec.data["words"], repeat=2):
        w, y = _word_elem(rs, wa), _word_elem(rs, ya)
        pred = gamma_predicate(rs, d, e, w, y)
        got = gamma_product(rs, d, e, w, y, max(spec.maxlen, 6))
        n += 1
        if got != ("gamma" if pred else "zero"):
            bad.append({"w": rs.render_word(w), "y": rs.render_word(y), "predicate": pred, "product": got})
    return not bad, {"pairs": n, "mismatches": bad[:5]}


def _run_a1(spec, rs):
    rep = a1_example_check(spec.data["L"])
    return rep["ok"], {k: rep[k] for k in ("membership", "closure", "converse", "symbolic_membership")} | \
        {"failures": rep["failures"][:10]}


def _run_strata(spec, rs):
    got = circuits(rs)
    if spec.name == "circuits":
        info = {"classes": sorted(m.render() for m in got)}
        try:
            ref = expected_classes(rs)
        except KeyError:
            return True, info | {"reference": None}
        info["missing"] = sorted(m.render() for m in ref - got)
        info["extra"] = sorted(m.render() for m in got - ref)
        return got == ref, info
    rng = _rng(spec)
    # a rational part plus a multiple of one transcendental direction per orbit
    base = {o: (q(rng.randint(-20, 20)) / rng.choice((3, 5, 7)), (rng.choice((0, 1, 2)),)) for o in rs.orbits}
    d = {o: rng.randint(-2, 2) for o in rs.orbits}
    c = ParamPoint.of(base)
    c2 = ParamPoint.of({o: (a - d[o], b) for o, (a, b) in base.items()})
    r1, r2 = stratum_compare(rs, c, c2), stratum_compare(rs, c2, c)
    ok = r1["relation"] == r2["relation"] and r1["classes"] == r2["classes"]
    return ok, {"c": {o: [qstr(a), list(b)] for o, (a, b) in base.items()}, "d": d, "relation": r1["relation"]}


def _sign_oracle(rs, c, lam):
    """Sign vectors met on a fine grid, and unboundedness per direction sample."""
    from ..clans import _root_fn, phi_c_lambda
    fns = [_root_fn(a) for a in phi_c_lambda(rs, c, lam)]
    r = rs.rank
    grid = [q(k) / 7 for k in range(-40, 41)]
    seen = set()
    for pt in itertools.product(grid, repeat=r):
        vals = [sum((a * b for a, b in zip(fn[0], pt)), q(0)) + fn[1] for fn in fns]
        if all(vals):
            seen.add(tuple(1 if v > 0 else -1 for v in vals))
    return seen, fns


def _run_clans(spec, rs):
    c = [q(x) for x in spec.data.get("c", [])]
    lam = [q(x) for x in spec.data.get("lam", [])]
    if spec.name.startswith("clans"):
        regions = clan_regions(rs, c, lam)
        seen, fns = _sign_oracle(rs, c, lam)
        signs = {r.signs for r in regions}
        ok = (signs == seen) if fns else (len(regions) == 1)
        # genericity oracle: an unbounded ray from the interior point in every direction of a cone
        gen_ok = True
        for reg in regions:
            oracle = _generic_oracle(rs, reg)
            gen_ok &= oracle == reg.is_generic()
        return ok and gen_ok, {"clans": len(regions), "generic": [r.is_generic() for r in regions]}
    if spec.name.startswith("kz"):
        N = kz_bound(rs, c, lam)
        gamma = kz_gamma(rs, N)
        rep = kz_genericity(rs, c, lam, gamma, rs.finite_weyl())
        return rep["all_generic"], {"bound": N, "gamma": rep["gamma"]}
    # antipodes in rank one, and symmetry of the relation
    out = {}
    if rs.type == "A" and rs.rank == 1:
        e = rs.identity()
        y0 = antipodal_search(rs, [0], [0], {"nat": 0}, e, spec.maxlen)
        y2 = antipodal_search(rs, [0], [0], {"nat": 2}, e, max(spec.maxlen, 3))
        out["d0"] = y0 is not None and rs.render_word(y0) == "s1"
        out["d2_length3"] = y2 is not None and rs.length(y2) == 3
        g = coroot_combination(rs, [-3])
        out["kz_generic"] = kz_genericity(rs, [1], [0], g, [e])["all_generic"]
        out["kz_zero"] = not kz_genericity(rs, [1], [0], (0,), [e])["all_generic"]
    k0 = fundamental_chamber(rs)
    zero = [0] * len(rs.orbits)
    for w in rs.enumerate_weyl(min(spec.maxlen, 2)):
        y = antipodal_search(rs, zero, None, None, w, spec.maxlen)
        if y is not None:
            A = widetilde(act_chamber(w.inverse(), k0), zero)
            B = widetilde(act_chamber(y.inverse(), k0), zero)
            out[f"symmetric-{rs.render_word(w)}"] = antipodal(A, B) and antipodal(B, A)
    return all(out.values()), out


def _generic_oracle(rs, reg) -> bool:
    rows = reg.cone_rows()
    if not rows:
        return True
    r = rs.rank
    grid = [q(k) for k in range(-6, 7)]
    for h in itertools.product(grid, repeat=r):
        if all(sum((a * b for a, b in zip(row, h)), q(0)) > 0 for row in rows if any(row)):
            return True
    return False


def _run_hc(spec, rs):
    if spec.name.startswith("shift"):
        d = spec.data["d"]
        bad = []
        n = 0
        for w in rs.enumerate_weyl(spec.data["length"]):
            a = basis_element(rs, d, w, max(spec.maxlen, 6))
            n += 1
            if not shift_identity_holds(a):
                bad.append(f"shift {rs.render_word(w)}")
            if not hc_degree_drop(a):
                bad.append(f"degree {rs.render_word(w)}")
        return not bad, {"elements": n, "failures": bad}
    rng = _rng(spec)
    elems = rs.enumerate_weyl(min(2, spec.maxlen))
    shifts = _shifts(rs)
    a = [basis_element(rs, rng.choice(shifts), rng.choice(elems), max(spec.maxlen, 6)) for _ in range(3)]
    lhs = star(star(a[2], a[1]), a[0])
    rhs = star(a[2], star(a[1], a[0]))
    return lhs.op == rhs.op, {"shifts": [{k: str(v) for k, v in x.d.items()} for x in a]}


_RUNNERS = {"demazure": _run_demazure, "iota": _run_iota, "basis": _run_basis, "galleries": _run_galleries,
            "gamma": _run_gamma, "a1": _run_a1, "strata": _run_strata, "clans": _run_clans, "hc": _run_hc}


def run_suite(suite: str, typ: str, rank: int, maxlen: int = 6, seed: int = 0, jobs: int = 1,
              only: str | None = None) -> dict:
    cases = plan(suite, typ, rank, maxlen, seed)
    if only is not None:
        cases = [c for c in cases if c.name == only]
        if not cases:
            raise UnknownSuite(f"suite {suite!r} has no case {only!r}")
    if jobs > 1 and len(cases) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_case, cases))
    else:
        results = [run_case(c) for c in cases]
    return {"suite": suite, "type": typ.upper(), "rank": rank, "maxlen": maxlen, "seed": seed,
            "cases": results, "passed": sum(r["ok"] for r in results), "total": len(results),
            "ok": all(r["ok"] for r in results)}
