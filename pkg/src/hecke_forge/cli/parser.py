"""Small expression language for nil-Hecke operators.

Grammar (``^`` binds tighter than ``*``, which binds tighter than ``+``/``-``)::

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := "-" factor | power
    power  := atom ("^" INT)?
    atom   := NUM ["/" NUM] | NAME | "(" expr ")" | "T" "[" rat ("," rat)* "]" "(" expr ")"

Names are ``x1..xr``, ``c_nat``, ``c_sharp``, ``c_flat``, ``s0..sr`` (group
elements acting by substitution) and ``d0..dr`` (simple Demazure operators).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..exactalg import q, qstr
from ..nilhecke import NilOp, pushforward_t, simple_demazure
from ..rootdata import ORBITS, RootSystem


class ExprSyntaxError(SyntaxError):
    """Malformed expression; ``pos`` is the offending character offset."""

    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class UnknownSymbol(ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown symbol {name!r}")
        self.name = name


class RankMismatch(ValueError):
    """A symbol refers to an index or orbit absent from the root system."""


# --- AST -----------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: object

    def __repr__(self):
        return qstr(self.value)


@dataclass(frozen=True)
class Sym:
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Neg:
    arg: object

    def __repr__(self):
        return f"Neg({self.arg!r})"


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object

    def __repr__(self):
        name = {"+": "Add", "-": "Sub", "*": "Mul"}[self.op]
        return f"{name}({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int

    def __repr__(self):
        return f"Pow({self.base!r}, {self.exp})"


@dataclass(frozen=True)
class Push:
    shift: tuple
    arg: object

    def __repr__(self):
        return f"Push([{', '.join(qstr(x) for x in self.shift)}], {self.arg!r})"


# --- tokenizer and parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^/()\[\],]))")
_NAME = re.compile(r"^(x\d+|s\d+|d\d+|c_(?:nat|sharp|flat))$")


def _tokens(text: str):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None, kind=None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value if value is not None else kind
            raise ExprSyntaxError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = Bin(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[1] == "*":
            self.take()
            node = Bin("*", node, self.factor())
        return node

    def factor(self):
        if self.peek()[1] == "-":
            self.take()
            return Neg(self.factor())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[1] == "^":
            self.take()
            node = Pow(node, int(self.take(kind="num")[1]))
        return node

    def rational(self):
        neg = False
        if self.peek()[1] == "-":
            self.take()
            neg = True
        v = q(self.take(kind="num")[1])
        if self.peek()[1] == "/":
            self.take()
            den = self.take(kind="num")
            if int(den[1]) == 0:
                raise ExprSyntaxError("zero denominator", den[2])
            v = v / int(den[1])
        return -v if neg else v

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            return Num(self.rational())
        if kind == "name" and val == "T":
            self.take()
            self.take("[")
            shift = [self.rational()]
            while self.peek()[1] == ",":
                self.take()
                shift.append(self.rational())
            self.take("]")
            self.take("(")
            inner = self.expr()
            self.take(")")
            return Push(tuple(shift), inner)
        if kind == "name":
            self.take()
            if not _NAME.match(val):
                raise UnknownSymbol(val)
            if self.peek()[0] in ("num", "name") or self.peek()[1] == "(":
                raise ExprSyntaxError("juxtaposition is not multiplication", self.peek()[2])
            return Sym(val)
        if val == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise ExprSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse(text: str):
    p = _Parser(text)
    node = p.expr()
    tok = p.peek()
    if tok[0] in ("num", "name") or tok[1] == "(":
        raise ExprSyntaxError("juxtaposition is not multiplication", tok[2])
    if tok[0] != "end":
        raise ExprSyntaxError(f"trailing input {tok[1]!r}", tok[2])
    return node


# --- rendering --------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2}


def _prec(node) -> int:
    if isinstance(node, Bin):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    if isinstance(node, Num) and node.value < 0:
        return 3
    return 5


def render(node) -> str:
    """Inverse of :func:`parse` up to whitespace and redundant parentheses."""
    def wrap(child, need):
        s = render(child)
        return f"({s})" if _prec(child) < need else s

    if isinstance(node, Num):
        return qstr(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Neg):
        return "-" + wrap(node.arg, 3)
    if isinstance(node, Pow):
        return f"{wrap(node.base, 5)}^{node.exp}"
    if isinstance(node, Push):
        return f"T[{','.join(qstr(x) for x in node.shift)}]({render(node.arg)})"
    p = _PREC[node.op]
    # left-associative: an equal-precedence right operand needs parentheses
    return f"{wrap(node.left, p)} {node.op} {wrap(node.right, p + 1)}"


# --- evaluation ------------------------------------------------------------------------

def _symbol_op(rs: RootSystem, name: str) -> NilOp:
    if name.startswith("c_"):
        orbit = name[2:]
        if orbit not in rs.orbits:
            raise RankMismatch(f"{rs.name()} has no orbit {orbit!r}; available: {', '.join(rs.orbits)}")
        return NilOp.mult(rs, rs.param_var(orbit))
    k = int(name[1:])
    if name[0] == "x":
        if not 1 <= k <= rs.rank:
            raise RankMismatch(f"{name} outside x1..x{rs.rank}")
        return NilOp.mult(rs, rs.x_var(k - 1))
    if k >= len(rs.affine_simple):
        raise RankMismatch(f"{name} outside 0..{len(rs.affine_simple) - 1}")
    if name[0] == "s":
        return NilOp.group(rs, rs.s(k))
    return simple_demazure(rs, k)


def eval_expr(node, rs: RootSystem) -> NilOp:
    if isinstance(node, Num):
        return NilOp.mult(rs, node.value)
    if isinstance(node, Sym):
        return _symbol_op(rs, node.name)
    if isinstance(node, Neg):
        return -eval_expr(node.arg, rs)
    if isinstance(node, Pow):
        base = eval_expr(node.base, rs)
        out = NilOp.identity(rs)
        for _ in range(node.exp):
            out = out.compose(base)
        return out
    if isinstance(node, Push):
        if len(node.shift) != len(rs.orbits):
            raise RankMismatch(f"T[...] needs {len(rs.orbits)} entries ({', '.join(rs.orbits)})")
        return pushforward_t(dict(zip(rs.orbits, node.shift)), eval_expr(node.arg, rs))
    a, b = eval_expr(node.left, rs), eval_expr(node.right, rs)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    return a.compose(b)


def evaluate(text: str, rs: RootSystem) -> NilOp:
    return eval_expr(parse(text), rs)


__all__ = ["ExprSyntaxError", "UnknownSymbol", "RankMismatch", "Num", "Sym", "Neg", "Bin", "Pow",
           "Push", "parse", "render", "eval_expr", "evaluate", "ORBITS"]
