"""``hecke-forge``: exact computations with the nil-Hecke model of the trigonometric DAHA."""
from __future__ import annotations

import argparse
import json
import sys

from .. import SCHEMA, __version__
from ..cat_a import DEFAULT_MAXLEN, decompose, tau_basis, tau_gallery
from ..chambers import (act_chamber, dinv, einv, fundamental_chamber, minimal_gallery,
                        separating_walls)
from ..clans import (antipodal_search, clan_regions, coroot_combination, kz_bound, kz_gamma, kz_genericity,
                     local_chambers, phi_c_lambda, widetilde)
from ..exactalg import ParamPoint, q, qstr
from ..nilhecke import NilOp, canonical_degree, theta_coeffs
from ..rootdata import InadmissibleType, build_root_system
from ..strata import circuit_witnesses, expected_classes, m_c, stratum_compare
from ..translation import basis_element, hc_degree_drop, shift_identity_holds, star
from .parser import ExprSyntaxError, RankMismatch, UnknownSymbol, evaluate
from .suites import SUITES, UnknownSuite, run_suite


# --- argument helpers -----------------------------------------------------------------------

def _ratlist(text: str | None) -> list:
    if text is None or text.strip() == "":
        return []
    return [q(x) for x in text.replace(" ", "").split(",")]


def _word(rs, text: str | None):
    if text is None or text.strip() in ("", "e"):
        return rs.identity()
    return rs.word_to_elem(int(x) for x in text.replace(",", " ").split())


def _orbit_vec(rs, text: str | None, what: str) -> dict:
    vals = _ratlist(text)
    if not vals:
        return {o: q(0) for o in rs.orbits}
    if len(vals) == 1 and len(rs.orbits) > 1:
        vals = vals * len(rs.orbits)
    if len(vals) != len(rs.orbits):
        raise SystemExit(f"{what}: expected {len(rs.orbits)} values ({', '.join(rs.orbits)})")
    return dict(zip(rs.orbits, vals))


def _point(rs, text: str | None) -> list:
    vals = _ratlist(text)
    if not vals:
        return [q(0)] * rs.rank
    if len(vals) != rs.rank:
        raise SystemExit(f"expected {rs.rank} coordinates")
    return vals


def _op_json(op: NilOp) -> list:
    rs = op.rs
    return [{"word": rs.render_word(w), "coeff": op.terms[w].render(rs.var_names)} for w in op.support()]


def _coeffs_json(rs, coeffs: dict) -> list:
    items = sorted(coeffs.items(), key=lambda kv: (rs.length(kv[0]), rs.reduced_word(kv[0])))
    return [{"word": rs.render_word(w), "coeff": f.render(rs.var_names)} for w, f in items if not f.num.is_zero()]


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        out = {"schema": SCHEMA, "command": args.command} | payload
        sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


# --- subcommands -------------------------------------------------------------------------------

def cmd_roots(args, rs):
    desc = rs.describe()
    lines = [f"{rs.name()}: orbits {', '.join(rs.orbits)}; variables {', '.join(rs.var_names)}",
             f"alpha0 = {rs.alpha0.render(rs.var_names[len(rs.orbits):])}  [{rs.alpha0.orbit}]"]
    for i, a in enumerate(rs.affine_simple):
        lines.append(f"  alpha_{i} = {rs.root_poly(a).render(rs.var_names)}")
    lines.append(f"{len(rs.roots)} roots, {len(rs.positive)} positive")
    _emit(args, {"root_system": desc}, lines)


def cmd_weyl(args, rs):
    if args.word is not None:
        w = _word(rs, args.word)
        info = {"word": rs.render_word(w), "length": rs.length(w),
                "left_descents": [i for i in range(len(rs.affine_simple)) if rs.is_left_descent(w, i)],
                "right_descents": [i for i in range(len(rs.affine_simple)) if rs.is_right_descent(w, i)],
                "matrix": [[qstr(x) for x in row] for row in w.A], "translation": [qstr(x) for x in w.b]}
        _emit(args, {"element": info}, [f"{k}: {v}" for k, v in info.items()])
        return
    elems = rs.enumerate_weyl(args.maxlen)
    rows = [{"word": rs.render_word(w), "length": rs.length(w)} for w in elems]
    _emit(args, {"maxlen": args.maxlen, "elements": rows},
          [f"{r['length']}  {r['word']}" for r in rows] + [f"{len(rows)} elements of length <= {args.maxlen}"])


def cmd_chamber(args, rs):
    d = _orbit_vec(rs, args.d, "--d")
    C = act_chamber(_word(rs, args.word).inverse(), fundamental_chamber(rs, d))
    k0 = fundamental_chamber(rs)
    walls = separating_walls(k0, C)
    info = {"point": C.describe(), "distance_from_kappa0": len(walls),
            "separating_walls": [{"kind": w.kind, "function": w.render(rs)} for w in walls],
            "dinv": dinv(k0, C).render(rs.var_names), "einv": einv(k0, C).render(rs.var_names)}
    lines = [f"chamber w^-1 kappa_d with w = {rs.render_word(_word(rs, args.word))}, d = "
             f"{ {k: qstr(v) for k, v in d.items()} }",
             f"interior point u = {info['point']['u']}, z = {info['point']['z']}",
             f"distance from kappa_0: {len(walls)}"]
    lines += [f"  {w['kind']}: {w['function']}" for w in info["separating_walls"]]
    lines += [f"d(kappa_0, C) = {info['dinv']}", f"e(kappa_0, C) = {info['einv']}"]
    _emit(args, {"chamber": info}, lines)


def cmd_gallery(args, rs):
    C = fundamental_chamber(rs, _orbit_vec(rs, args.source, "--source"))
    D = fundamental_chamber(rs, _orbit_vec(rs, args.target, "--target"))
    w = _word(rs, args.word)
    G = minimal_gallery(C, act_chamber(w.inverse(), D), args.variant)
    op = tau_gallery(G).left_group(w)
    info = {"length": len(G), "gallery": G.describe(), "operator": _op_json(op)}
    lines = [f"minimal gallery of length {len(G)} (variant {args.variant})"]
    lines += [f"  cross {x.kind}: {x.render(rs)}" for x in G.walls]
    lines.append(f"w o tau_G = {op.render()}")
    _emit(args, info, lines)


def cmd_op(args, rs):
    op = evaluate(args.expr, rs)
    info = {"expr": args.expr, "operator": _op_json(op), "canonical_degree": canonical_degree(op)}
    lines = [f"{op.render()}", f"canonical degree: {info['canonical_degree']}"]
    if args.theta:
        coeffs, poly = theta_coeffs(op, args.maxlen)
        info["theta"] = _coeffs_json(rs, coeffs)
        info["theta_polynomial"] = poly
        lines.append("theta-coordinates: " + ", ".join(f"[{t['word']}] {t['coeff']}" for t in info["theta"]))
    if args.apply:
        f = evaluate(args.apply, rs)
        if set(f.terms) - {rs.identity()}:
            raise SystemExit("--apply expects a function (no group elements)")
        img = op.apply_rat(f.coeff(rs.identity()))
        info["image"] = img.render(rs.var_names)
        lines.append(f"applied to {args.apply}: {info['image']}")
    _emit(args, info, lines)


def cmd_hom(args, rs):
    C = fundamental_chamber(rs, _orbit_vec(rs, args.source, "--source"))
    D = fundamental_chamber(rs, _orbit_vec(rs, args.target, "--target"))
    if args.basis is not None:
        op = tau_basis(C, D, args.maxlen).element(_word(rs, args.basis))[0]
        _emit(args, {"basis_word": args.basis, "operator": _op_json(op)}, [op.render()])
        return
    if args.expr is None:
        raise SystemExit("hom: give an expression or --basis WORD")
    op = evaluate(args.expr, rs)
    coeffs, member = decompose(C, D, op, args.maxlen)
    info = {"expr": args.expr, "member": member, "coefficients": _coeffs_json(rs, coeffs)}
    lines = [f"member: {member}"] + [f"  tau[{c['word']}] * ({c['coeff']})" for c in info["coefficients"]]
    _emit(args, info, lines)


def cmd_bimodule(args, rs):
    d1 = _orbit_vec(rs, args.d, "--d")
    a = basis_element(rs, d1, _word(rs, args.word), args.maxlen)
    info = {"d": {k: qstr(v) for k, v in d1.items()}, "operator": _op_json(a.op),
            "shift_identity": shift_identity_holds(a), "hc_degree_drop": hc_degree_drop(a)}
    lines = [f"gamma^(d,w) = {a.op.render()}", f"shift identity: {info['shift_identity']}",
             f"HC degree drop: {info['hc_degree_drop']}"]
    if args.times_word is not None:
        e = _orbit_vec(rs, args.times_d, "--times-d")
        b = basis_element(rs, e, _word(rs, args.times_word), args.maxlen)
        prod = star(a, b)
        coeffs, member = prod.decompose(args.maxlen)
        info["star"] = {"d": {k: qstr(v) for k, v in prod.d.items()}, "operator": _op_json(prod.op),
                        "member": member, "coefficients": _coeffs_json(rs, coeffs)}
        lines.append(f"star product in B<{info['star']['d']}>: member {member}")
        lines += [f"  tau[{c['word']}] * ({c['coeff']})" for c in info["star"]["coefficients"]]
    _emit(args, info, lines)


def _param_point(rs, text: str | None, irr: str | None) -> ParamPoint:
    base = _orbit_vec(rs, text, "--c")
    extra = _orbit_vec(rs, irr, "--irrational") if irr else {o: q(0) for o in rs.orbits}
    return ParamPoint.of({o: (base[o], (extra[o],)) for o in rs.orbits})


def cmd_strata(args, rs):
    if args.action == "circuits":
        wit = circuit_witnesses(rs)
        classes = sorted(wit, key=lambda m: m.coeffs)
        try:
            ref = expected_classes(rs)
        except KeyError:
            ref = None
        info = {"classes": [m.render() for m in classes],
                "witnesses": {m.render(): [{"coeff": qstr(k), "h": [qstr(x) for x in h], "orbit": o}
                                           for k, h, o in wit[m]] for m in classes}}
        if ref is not None:
            info["reference_missing"] = sorted(m.render() for m in ref - set(classes))
            info["reference_extra"] = sorted(m.render() for m in set(classes) - ref)
        lines = [f"{len(classes)} classes:"] + [f"  [{m.symbol()}]" for m in classes]
        if ref is not None:
            lines.append(f"not in the reference list: {info['reference_extra'] or 'none'}")
        _emit(args, info, lines)
        return
    c = _param_point(rs, args.c, args.irrational)
    c2 = _param_point(rs, args.cprime, args.irrational)
    rep = stratum_compare(rs, c, c2)
    rep["m_c"] = sorted(m.render() for m in m_c(rs, c))
    _emit(args, rep, [f"relation: {rep['relation']}", f"open: {rep['open']}, {rep['open_prime']}",
                      f"M_c: {', '.join(rep['m_c']) or 'empty'}"])


def cmd_clans(args, rs):
    c = list(_orbit_vec(rs, args.c, "--c").values())
    lam = _point(rs, args.lam)
    if args.action == "list":
        regs = clan_regions(rs, c, lam)
        info = {"walls": [a.render(rs.var_names[len(rs.orbits):]) for a in phi_c_lambda(rs, c, lam)],
                "clans": [r.describe() for r in regs]}
        lines = [f"{len(regs)} clans; walls: {', '.join(info['walls']) or 'none'}"]
        lines += [f"  point {d['point']} generic={d['generic']}" for d in info["clans"]]
        _emit(args, info, lines)
    elif args.action == "local":
        regs = local_chambers(rs, c, lam)
        info = {"chambers": [r.describe() for r in regs],
                "kappa0": list(widetilde(fundamental_chamber(rs), c, lam).signs)}
        _emit(args, info, [f"{len(regs)} local chambers"] +
              [f"  point {d['point']} signs {d['signs']}" for d in info["chambers"]])
    elif args.action == "antipode":
        d = _orbit_vec(rs, args.d, "--d")
        y = antipodal_search(rs, c, lam, d, _word(rs, args.word), args.maxlen)
        info = {"y": None if y is None else rs.render_word(y), "length": None if y is None else rs.length(y)}
        _emit(args, info, [f"antipode: {info['y'] or 'none within the bound'}"])
    else:
        if args.gamma is not None:
            gamma = coroot_combination(rs, _ratlist(args.gamma))
        else:
            gamma = kz_gamma(rs, kz_bound(rs, c, lam))
        wl = rs.finite_weyl() if args.word is None else [_word(rs, args.word)]
        rep = kz_genericity(rs, c, lam, gamma, wl)
        rep["bound"] = kz_bound(rs, c, lam)
        _emit(args, rep, [f"gamma = {rep['gamma']}, bound N = {rep['bound']}"] +
              [f"  w={x['w']}: point {x['point']} generic={x['generic']}" for x in rep["cases"]] +
              [f"all generic: {rep['all_generic']}"])


def cmd_verify(args, rs):
    rep = run_suite(args.suite, rs.type, rs.rank, args.maxlen, args.seed, args.jobs, args.case)
    lines = []
    for c in rep["cases"]:
        lines.append(f"{'PASS' if c['ok'] else 'FAIL'}  {args.suite}/{c['name']}")
        if not c["ok"]:
            lines.append(f"      detail: {json.dumps(c['detail'], sort_keys=True)}")
            lines.append(f"      repro:  {c['repro']}")
    lines.append(f"{rep['passed']}/{rep['total']} passed")
    _emit(args, {"report": rep}, lines)
    return 0 if rep["ok"] else 1


# --- parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", default="A", help="root system type (A, B, C, BC, D, E, F, G)")
    common.add_argument("--rank", type=int, default=1)
    common.add_argument("--maxlen", type=int, default=DEFAULT_MAXLEN, help="session length bound")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="hecke-forge", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("roots", parents=[common], help="root datum and affine simple roots")
    s = sub.add_parser("weyl", parents=[common], help="affine Weyl group elements")
    s.add_argument("--word", help="describe one element, e.g. '1,0'")
    s = sub.add_parser("chamber", parents=[common], help="the chamber w^-1 kappa_d")
    s.add_argument("--d", help="orbit shift, comma separated")
    s.add_argument("--word")
    s = sub.add_parser("gallery", parents=[common], help="minimal gallery and its operator")
    s.add_argument("--source")
    s.add_argument("--target")
    s.add_argument("--word")
    s.add_argument("--variant", type=int, default=0)
    s = sub.add_parser("op", parents=[common], help="evaluate an operator expression")
    s.add_argument("expr")
    s.add_argument("--theta", action="store_true", help="also print theta-coordinates")
    s.add_argument("--apply", help="apply the operator to a function expression")
    s = sub.add_parser("hom", parents=[common], help="tau-coordinates in Hom(kappa_d, kappa_e)")
    s.add_argument("expr", nargs="?")
    s.add_argument("--source")
    s.add_argument("--target")
    s.add_argument("--basis", help="print the tau-basis element for this word")
    s = sub.add_parser("bimodule", parents=[common], help="basis elements of B<d> and star products")
    s.add_argument("--d")
    s.add_argument("--word")
    s.add_argument("--times-d", dest="times_d")
    s.add_argument("--times-word", dest="times_word")
    s = sub.add_parser("strata", parents=[common], help="circuits and parameter strata")
    s.add_argument("action", choices=("circuits", "compare"))
    s.add_argument("--c")
    s.add_argument("--cprime")
    s.add_argument("--irrational", help="coefficient of a shared transcendental per orbit")
    s = sub.add_parser("clans", parents=[common], help="clans, local chambers, KZ genericity")
    s.add_argument("action", choices=("list", "local", "antipode", "kz-check"))
    s.add_argument("--c")
    s.add_argument("--lambda", dest="lam")
    s.add_argument("--d")
    s.add_argument("--word")
    s.add_argument("--gamma", help="coefficients on the simple coroots")
    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--case", help="run a single named case")
    return p


_COMMANDS = {"roots": cmd_roots, "weyl": cmd_weyl, "chamber": cmd_chamber, "gallery": cmd_gallery,
             "op": cmd_op, "hom": cmd_hom, "bimodule": cmd_bimodule, "strata": cmd_strata,
             "clans": cmd_clans, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rs = build_root_system(args.type, args.rank)
        code = _COMMANDS[args.command](args, rs)
    except (ExprSyntaxError, UnknownSymbol, RankMismatch, InadmissibleType, UnknownSuite, ValueError) as exc:
        sys.stderr.write(f"hecke-forge: {exc}\n")
        return 2
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
