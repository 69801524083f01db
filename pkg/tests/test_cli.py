from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke_forge.cli.main import main
from hecke_forge.cli.parser import (Bin, ExprSyntaxError, Neg, Num, Pow, Push, RankMismatch, Sym,
                                    UnknownSymbol, evaluate, parse, render)
from hecke_forge.cli.suites import CaseSpec, UnknownSuite, plan, run_suite
from hecke_forge.exactalg import RatFunc, q
from hecke_forge.nilhecke import Iota, NilOp, simple_demazure


def test_parse_tree_shape():
    assert repr(parse("(2*x1 - c_nat)*d1")) == "Mul(Sub(Mul(2, x1), c_nat), d1)"
    assert repr(parse("-x1^2")) == "Neg(Pow(x1, 2))"
    assert repr(parse("T[1](c_nat)")) == "Push([1], c_nat)"
    assert repr(parse("x1 - x2 - 3/4")) == "Sub(Sub(x1, x2), 3/4)"


@pytest.mark.parametrize("text,exc", [
    ("2 x1", ExprSyntaxError), ("x1 x2", ExprSyntaxError), ("(x1", ExprSyntaxError),
    ("x1 +", ExprSyntaxError), ("1/0", ExprSyntaxError), ("x1 $ 2", ExprSyntaxError),
    ("y1", UnknownSymbol), ("c_other", UnknownSymbol),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_error_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse("x1 + * x2")
    assert info.value.pos == 5


def test_rank_mismatch(a1):
    for text in ("x2", "s2", "c_sharp", "T[1,1](x1)"):
        with pytest.raises(RankMismatch):
            evaluate(text, a1)


def test_evaluation(a1):
    assert evaluate("d1*d1", a1).is_zero()
    x = a1.x_var(0)
    assert evaluate("s1", a1).apply_rat(RatFunc.from_poly(x)) == RatFunc.from_poly(-x)
    assert evaluate("(2*x1 - c_nat)*d1", a1) == Iota(a1).one_minus_s(1)
    assert evaluate("x1^3", a1) == NilOp.mult(a1, x ** 3)
    assert evaluate("T[1](c_nat)", a1) == NilOp.mult(a1, a1.param_var("nat") - 1)
    assert evaluate("d0", a1) == simple_demazure(a1, 0)


_leaves = st.one_of(
    st.sampled_from(["x1", "x2", "c_nat", "s0", "s1", "d1"]).map(Sym),
    st.fractions(min_value=-20, max_value=20, max_denominator=9).map(lambda f: Num(q(f.numerator) / f.denominator)),
)


def _extend(children):
    return st.one_of(
        st.tuples(st.sampled_from("+-*"), children, children).map(lambda t: Bin(*t)),
        children.map(Neg),
        st.tuples(children, st.integers(0, 4)).map(lambda t: Pow(*t)),
        st.tuples(st.lists(st.integers(-3, 3).map(q), min_size=1, max_size=1).map(tuple), children)
        .map(lambda t: Push(*t)),
    )


_trees = st.recursive(_leaves, _extend, max_leaves=12)


def _norm(node):
    # a negative literal renders as "-a", which parses back as Neg(a)
    if isinstance(node, Num) and node.value < 0:
        return Neg(Num(-node.value))
    if isinstance(node, Neg):
        return Neg(_norm(node.arg))
    if isinstance(node, Bin):
        return Bin(node.op, _norm(node.left), _norm(node.right))
    if isinstance(node, Pow):
        return Pow(_norm(node.base), node.exp)
    if isinstance(node, Push):
        return Push(node.shift, _norm(node.arg))
    return node


@settings(max_examples=300, deadline=None)
@given(_trees)
def test_render_parse_round_trip(tree):
    text = render(tree)
    assert _norm(parse(text)) == _norm(tree)
    assert render(parse(text)) == text


def test_json_output_is_deterministic(capsys):
    argv = ["op", "(2*x1 - c_nat)*d1", "--theta", "--json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    data = json.loads(first)
    assert data["schema"] == "hecke-forge/1" and data["command"] == "op"
    assert data["canonical_degree"] == 0


def test_bad_input_exit_code(capsys):
    assert main(["op", "2 x1"]) == 2
    assert "juxtaposition" in capsys.readouterr().err
    assert main(["op", "x3", "--rank", "2"]) == 2
    assert main(["roots", "--type", "Q"]) == 2


@pytest.mark.parametrize("argv", [
    ["roots", "--type", "BC", "--rank", "1"],
    ["weyl", "--word", "1,0"],
    ["chamber", "--d", "1", "--word", "1"],
    ["gallery", "--word", "1"],
    ["hom", "--target", "1", "--basis", "0"],
    ["bimodule", "--d", "1", "--word", "1", "--times-d", "-1", "--times-word", "0"],
    ["strata", "circuits", "--type", "G", "--rank", "2"],
    ["strata", "compare", "--type", "BC", "--rank", "1", "--c", "1/3,1/5", "--cprime=-5/3,-4/5"],
    ["clans", "list", "--c", "1"],
    ["clans", "local", "--c", "0"],
    ["clans", "antipode", "--c", "0", "--d", "1"],
    ["clans", "kz-check", "--c", "1"],
])
def test_subcommands_run(argv, capsys):
    assert main(argv + ["--json"]) == 0
    json.loads(capsys.readouterr().out)


def test_verify_single_case(capsys):
    assert main(["verify", "demazure", "--case", "square-1", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["report"]["passed"] == data["report"]["total"] == 1


def test_plan_is_seeded():
    a = [c.name for c in plan("basis", "A", 1, 4, seed=3)]
    b = [c.name for c in plan("basis", "A", 1, 4, seed=3)]
    assert a == b
    spec = plan("demazure", "A", 1, 4, seed=0)[0]
    assert isinstance(spec, CaseSpec)
    assert spec.repro().startswith("hecke-forge verify demazure --type A --rank 1")


def test_unknown_case_is_rejected(capsys):
    with pytest.raises(UnknownSuite):
        run_suite("demazure", "A", 1, only="no-such-case")
    assert main(["verify", "demazure", "--case", "no-such-case"]) == 2
