"""Exact rational arithmetic: sparse polynomials and rational functions whose
denominators are products of linear forms.

Variables are indexed ``0..nvars-1``; callers keep the parameter variables
first and the coordinate variables after them, so that the grlex order used
for display and for picking the leading variable of a linear form matches the
convention ``c < x1 < ... < xr``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

mpq = gmpy2.mpq
Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def q(value) -> mpq:
    """Coerce ints, Fractions, strings like ``'3/4'`` and mpq to mpq."""
    if isinstance(value, type(ONE)):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        s = value.strip()
        if "/" in s:
            a, b = s.split("/")
            return mpq(int(a), int(b))
        return mpq(Fraction(s).numerator, Fraction(s).denominator)
    return mpq(value)


def qstr(value) -> str:
    """Render a rational as ``p`` or ``p/q``."""
    v = q(value)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def to_fraction(value) -> Fraction:
    v = q(value)
    return Fraction(int(v.numerator), int(v.denominator))


class NotExactlyDivisible(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


def _grlex_key(exps: tuple[int, ...]):
    # later variables are more significant
    return (sum(exps), exps[::-1])


class Poly:
    """Sparse polynomial with rational coefficients."""

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: dict | None = None, nvars: int = 0):
        self.terms = terms if terms is not None else {}
        self.nvars = nvars
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls({}, nvars)

    @classmethod
    def const(cls, value, nvars: int) -> "Poly":
        v = q(value)
        return cls({(0,) * nvars: v} if v else {}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): ONE}, nvars)

    @classmethod
    def linear(cls, coeffs: Sequence, constant=0) -> "Poly":
        n = len(coeffs)
        terms = {}
        for i, a in enumerate(coeffs):
            a = q(a)
            if a:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = a
        c = q(constant)
        if c:
            terms[(0,) * n] = c
        return cls(terms, n)

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def const_value(self) -> mpq:
        return self.terms.get((0,) * self.nvars, ZERO)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_part(self, deg: int) -> "Poly":
        return Poly({e: c for e, c in self.terms.items() if sum(e) == deg}, self.nvars)

    def top(self) -> "Poly":
        return self.homogeneous_part(self.degree()) if self.terms else self

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, k in enumerate(e) if k)
        return out

    def involves(self, idx: Iterable[int]) -> bool:
        idx = tuple(idx)
        return any(e[i] for e in self.terms for i in idx)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0]

    def sort_key(self):
        return tuple(sorted(self.terms.items()))

    # equality -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, type(ONE))):
            return self.is_const() and self.const_value() == q(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            a, b = other, self
        else:
            a, b = self, other
        t = dict(a.terms)
        for e, c in b.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return Poly(t, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, k) -> "Poly":
        k = q(k)
        if not k:
            return Poly({}, self.nvars)
        return Poly({e: c * k for e, c in self.terms.items()}, self.nvars)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        if not self.terms or not other.terms:
            return Poly({}, self.nvars)
        if len(other.terms) == 1 and other.is_const():
            return self.scale(other.const_value())
        if len(self.terms) == 1 and self.is_const():
            return other.scale(self.const_value())
        t: dict = {}
        get = t.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                t[e] = get(e, ZERO) + c1 * c2
        return Poly({e: c for e, c in t.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # substitution -------------------------------------------------------
    def subst(self, images: Sequence["Poly | None"], nvars: int | None = None) -> "Poly":
        """Substitute ``images[i]`` for variable ``i`` (``None`` keeps it)."""
        n_out = self.nvars if nvars is None else nvars
        moving = [i for i, im in enumerate(images) if im is not None]
        if not moving:
            return self
        fixed = [i for i in range(self.nvars) if images[i] is None]
        powers: dict = {}

        def pw(i, k):
            key = (i, k)
            v = powers.get(key)
            if v is None:
                v = images[i] if k == 1 else pw(i, k - 1) * images[i]
                powers[key] = v
            return v

        cache: dict = {}
        acc: dict = {}
        for e, c in self.terms.items():
            me = tuple(e[i] for i in moving)
            part = cache.get(me)
            if part is None:
                part = Poly.const(1, n_out)
                for i, k in zip(moving, me):
                    if k:
                        part = part * pw(i, k)
                cache[me] = part
            shift = [0] * n_out
            for i in fixed:
                shift[i] = e[i]
            for pe, pc in part.terms.items():
                ne = tuple([a + b for a, b in zip(pe, shift)])
                acc[ne] = acc.get(ne, ZERO) + c * pc
        return Poly({e: c for e, c in acc.items() if c}, n_out)

    def evaluate(self, point: Sequence) -> mpq:
        total = ZERO
        pt = [q(v) for v in point]
        for e, c in self.terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def partial_eval(self, values: dict[int, object]) -> "Poly":
        imgs: list = [None] * self.nvars
        for i, v in values.items():
            imgs[i] = Poly.const(v, self.nvars)
        return self.subst(imgs)

    # linear forms -------------------------------------------------------
    def is_linear_form(self) -> bool:
        return self.degree() == 1

    def linear_coeffs(self) -> tuple[list, mpq]:
        coeffs = [ZERO] * self.nvars
        const = ZERO
        for e, c in self.terms.items():
            s = sum(e)
            if s == 0:
                const = c
            elif s == 1:
                coeffs[e.index(1)] = c
            else:
                raise ValueError("not affine-linear")
        return coeffs, const

    def lead_var(self) -> int:
        coeffs, _ = self.linear_coeffs()
        for i in range(self.nvars - 1, -1, -1):
            if coeffs[i]:
                return i
        raise ValueError("constant has no leading variable")

    def render(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mon = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mon:
                parts.append(qstr(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{qstr(c)}*{mon}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self) -> str:
        names = [f"v{i}" for i in range(self.nvars)]
        return f"Poly({self.render(names)})"


def monic_linear(p: Poly) -> tuple[mpq, Poly]:
    """Split an affine-linear polynomial as ``k * l`` with ``l`` monic."""
    v = p.lead_var()
    e = [0] * p.nvars
    e[v] = 1
    k = p.terms[tuple(e)]
    if k == 1:
        return ONE, p
    return k, p.scale(1 / k)


def div_linear(p: Poly, lin: Poly) -> Poly | None:
    """Exact quotient ``p / lin`` for monic affine ``lin``; None when inexact."""
    if not p.terms:
        return p
    v = lin.lead_var()
    n = p.nvars
    rest = lin - Poly.var(v, n)
    groups: dict[int, dict] = {}
    for e, c in p.terms.items():
        k = e[v]
        if k == 0:
            groups.setdefault(0, {})[e] = c
        else:
            ee = list(e)
            ee[v] = 0
            groups.setdefault(k, {})[tuple(ee)] = c
    top = max(groups)
    if top == 0:
        return None
    qk = Poly(groups[top], n)
    out: dict = {}

    def emit(poly: Poly, k: int):
        for e, c in poly.terms.items():
            ee = list(e)
            ee[v] = k
            out[tuple(ee)] = c

    emit(qk, top - 1)
    for k in range(top - 1, 0, -1):
        qk = Poly(groups.get(k, {}), n) - rest * qk
        emit(qk, k - 1)
    rem = Poly(groups.get(0, {}), n) - rest * qk
    if rem.terms:
        return None
    return Poly({e: c for e, c in out.items() if c}, n)


def poly_divmod(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Multivariate division with respect to grlex; returns (quotient, remainder)."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    n = num.nvars
    lt_e, lt_c = den.leading_term()
    quot = Poly.zero(n)
    rem = Poly.zero(n)
    p = num
    while p.terms:
        e, c = p.leading_term()
        if all(a >= b for a, b in zip(e, lt_e)):
            m = Poly({tuple(a - b for a, b in zip(e, lt_e)): c / lt_c}, n)
            quot = quot + m
            p = p - m * den
        else:
            lead = Poly({e: c}, n)
            rem = rem + lead
            p = p - lead
    return quot, rem


def poly_divides(den: Poly, num: Poly) -> bool:
    """True when ``den`` divides ``num`` exactly."""
    if num.is_zero():
        return True
    if den.degree() == 1:
        _, lin = monic_linear(den)
        return div_linear(num, lin) is not None
    return poly_divmod(num, den)[1].is_zero()


def _den_merge(a: tuple, b: tuple) -> dict:
    out = dict(a)
    for l, m in b:
        out[l] = out.get(l, 0) + m
    return out


def _den_tuple(d: dict) -> tuple:
    return tuple(sorted(((l, m) for l, m in d.items() if m), key=lambda t: t[0].sort_key()))


class RatFunc:
    """``num / prod(l**m)`` with monic linear denominator factors, fully reduced.

    The representation is canonical, so equality and hashing are structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: tuple = ()):
        self.num = num
        self.den = den if num.terms else ()
        self._hash = None

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def make(cls, num: Poly, den: dict | tuple = ()) -> "RatFunc":
        """Normalise an arbitrary numerator over linear factors (any scaling)."""
        items = den.items() if isinstance(den, dict) else den
        norm: dict = {}
        for l, m in items:
            if not m:
                continue
            if l.is_const():
                k = l.const_value()
                if not k:
                    raise ZeroDivisionError("denominator factor vanishes")
                num = num.scale(1 / k ** m) if m > 0 else num.scale(k ** (-m))
                continue
            k, ml = monic_linear(l)
            if k != 1:
                num = num.scale(1 / k ** m)
            norm[ml] = norm.get(ml, 0) + m
        return cls._cancel(num, norm)

    @classmethod
    def _cancel(cls, num: Poly, den: dict) -> "RatFunc":
        if not num.terms:
            return cls(num, ())
        out = {}
        for l, m in den.items():
            if m < 0:
                num = num * (l ** (-m))
                continue
            while m > 0:
                qt = div_linear(num, l)
                if qt is None:
                    break
                num = qt
                m -= 1
            if m:
                out[l] = m
        return cls(num, _den_tuple(out))

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, ())

    @classmethod
    def const(cls, value, nvars: int) -> "RatFunc":
        return cls(Poly.const(value, nvars), ())

    @classmethod
    def from_factors(cls, const, num_factors: Iterable[Poly], den_factors: Iterable[Poly],
                     nvars: int) -> "RatFunc":
        num = Poly.const(const, nvars)
        for f in num_factors:
            num = num * f
        den: dict = {}
        for f in den_factors:
            den[f] = den.get(f, 0) + 1
        return cls.make(num, den)

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_poly(self) -> bool:
        return not self.den

    def den_degree(self) -> int:
        return sum(m for _, m in self.den)

    def degree(self) -> int:
        """Total degree ``deg num - deg den`` (``None`` for zero)."""
        if not self.num.terms:
            return None
        return self.num.degree() - self.den_degree()

    def den_poly(self) -> Poly:
        out = Poly.const(1, self.nvars)
        for l, m in self.den:
            out = out * (l ** m)
        return out

    def involves(self, idx: Iterable[int]) -> bool:
        idx = tuple(idx)
        return self.num.involves(idx) or any(l.involves(idx) for l, _ in self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Poly):
            return not self.den and self.num == other
        if isinstance(other, (int, Fraction, type(ONE))):
            return not self.den and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, ())
        return RatFunc.const(other, self.nvars)

    def __add__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            if not self.den:
                return RatFunc(self.num + other.num, ())
            return RatFunc._cancel(self.num + other.num, dict(self.den))
        return RatFunc.sum([self, other])

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        if not isinstance(other, (RatFunc, Poly)):
            k = q(other)
            return RatFunc(self.num.scale(k), self.den) if k else RatFunc(Poly.zero(self.nvars))
        other = self._coerce(other)
        if not self.num.terms or not other.num.terms:
            return RatFunc(Poly.zero(self.nvars))
        num = self.num * other.num
        if not self.den and not other.den:
            return RatFunc(num, ())
        return RatFunc._cancel(num, _den_merge(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        """Inverse; the numerator must be a constant or an affine-linear form."""
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero")
        num = Poly.const(1, self.nvars)
        for l, m in self.den:
            num = num * (l ** m)
        if self.num.is_const():
            return RatFunc(num.scale(1 / self.num.const_value()), ())
        if self.num.degree() == 1:
            return RatFunc.make(num, {self.num: 1})
        raise ValueError("inverse of a non-linear numerator is not representable")

    def __truediv__(self, other) -> "RatFunc":
        if isinstance(other, (RatFunc, Poly)):
            return self * self._coerce(other).inverse()
        return self * (1 / q(other))

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    @staticmethod
    def sum(items: Iterable["RatFunc"], nvars: int | None = None) -> "RatFunc":
        items = [r for r in items if r.num.terms]
        if not items:
            return RatFunc(Poly.zero(nvars or 0))
        if len(items) == 1:
            return items[0]
        lcm: dict = {}
        for r in items:
            for l, m in r.den:
                if lcm.get(l, 0) < m:
                    lcm[l] = m
        if not lcm:
            total = items[0].num
            for r in items[1:]:
                total = total + r.num
            return RatFunc(total, ())
        total = Poly.zero(items[0].nvars)
        for r in items:
            own = dict(r.den)
            num = r.num
            for l, m in lcm.items():
                extra = m - own.get(l, 0)
                if extra:
                    num = num * (l ** extra)
            total = total + num
        return RatFunc._cancel(total, lcm)

    # substitution -------------------------------------------------------
    def subst(self, images: Sequence[Poly | None], nvars: int | None = None,
              invertible: bool = True) -> "RatFunc":
        """Apply an affine substitution of variables.

        With ``invertible`` the substitution is assumed to be an affine
        automorphism, so no cancellation can appear.
        """
        num = self.num.subst(images, nvars)
        if not self.den:
            return RatFunc(num, ())
        den: dict = {}
        for l, m in self.den:
            nl = l.subst(images, nvars)
            if nl.is_const():
                k = nl.const_value()
                if not k:
                    raise ZeroDivisionError("denominator vanishes under substitution")
                num = num.scale(1 / k ** m)
                continue
            k, ml = monic_linear(nl)
            if k != 1:
                num = num.scale(1 / k ** m)
            den[ml] = den.get(ml, 0) + m
        if invertible and len(den) == len(self.den):
            return RatFunc(num, _den_tuple(den))
        return RatFunc._cancel(num, den)

    def partial_eval(self, values: dict[int, object]) -> "RatFunc":
        imgs: list = [None] * self.nvars
        for i, v in values.items():
            imgs[i] = Poly.const(v, self.nvars)
        return self.subst(imgs, invertible=False)

    def evaluate(self, point: Sequence) -> mpq:
        d = self.den_poly().evaluate(point)
        if not d:
            raise ZeroDivisionError("pole at evaluation point")
        return self.num.evaluate(point) / d

    def top(self) -> tuple[Poly, tuple]:
        """Top homogeneous symbol as (numerator, denominator linear parts)."""
        dens = []
        for l, m in self.den:
            dens.append((l.homogeneous_part(1), m))
        return self.num.top(), tuple(dens)

    def render(self, names: Sequence[str]) -> str:
        n = self.num.render(names)
        if not self.den:
            return n
        parts = []
        for l, m in self.den:
            s = f"({l.render(names)})"
            parts.append(s if m == 1 else f"{s}^{m}")
        return f"({n})/({'*'.join(parts)})"

    def __repr__(self) -> str:
        return f"RatFunc({self.render([f'v{i}' for i in range(self.nvars)])})"


# --- parameter points -------------------------------------------------------

@dataclass(frozen=True)
class ParamValue:
    """``a + sum b_j t_j`` with formal positive infinitesimals ``t_j``."""

    a: object
    b: tuple = ()

    def is_rational(self) -> bool:
        return all(not x for x in self.b)

    def sign(self) -> int:
        """Sign for ``0 < t_m << ... << t_1 << 1`` (lexicographic)."""
        for v in (self.a,) + tuple(self.b):
            if v > 0:
                return 1
            if v < 0:
                return -1
        return 0

    def __add__(self, other: "ParamValue") -> "ParamValue":
        n = max(len(self.b), len(other.b))
        b1 = tuple(self.b) + (ZERO,) * (n - len(self.b))
        b2 = tuple(other.b) + (ZERO,) * (n - len(other.b))
        return ParamValue(q(self.a) + q(other.a), tuple(x + y for x, y in zip(b1, b2)))

    def scale(self, k) -> "ParamValue":
        k = q(k)
        return ParamValue(q(self.a) * k, tuple(x * k for x in self.b))


@dataclass(frozen=True)
class ParamPoint:
    """Assignment orbit name -> ParamValue."""

    values: tuple = field(default_factory=tuple)  # ((orbit, ParamValue), ...)

    @classmethod
    def rational(cls, mapping: dict) -> "ParamPoint":
        return cls(tuple((k, ParamValue(q(v))) for k, v in mapping.items()))

    @classmethod
    def of(cls, mapping: dict) -> "ParamPoint":
        items = []
        for k, v in mapping.items():
            if isinstance(v, ParamValue):
                items.append((k, v))
            elif isinstance(v, tuple):
                items.append((k, ParamValue(q(v[0]), tuple(q(x) for x in v[1]))))
            else:
                items.append((k, ParamValue(q(v))))
        return cls(tuple(items))

    def as_dict(self) -> dict:
        return dict(self.values)

    def is_rational(self) -> bool:
        return all(v.is_rational() for _, v in self.values)

    def rational_values(self) -> dict:
        if not self.is_rational():
            raise ValueError("point is not rational")
        return {k: v.a for k, v in self.values}


def param_eval(mu: dict, c: ParamPoint) -> ParamValue:
    """Evaluate ``mu = {orbit: coefficient}`` at a parameter point."""
    vals = c.as_dict()
    out = ParamValue(ZERO)
    for orbit, coef in mu.items():
        if coef:
            out = out + vals[orbit].scale(coef)
    return out


# --- small exact linear algebra -------------------------------------------

def rref(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [[q(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: list[list], ncols: int) -> list[list]:
    """Basis of the right kernel of ``rows`` (list of row vectors)."""
    if not rows:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(rows)
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(rows: list[list], rhs: list) -> list | None:
    """One solution of ``rows @ x = rhs`` over Q, or None if inconsistent."""
    if not rows:
        return []
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [ZERO] * n
    for i, p in enumerate(piv):
        x[p] = red[i][n]
    return x


def mat_inv(m: Sequence[Sequence]) -> list[list]:
    n = len(m)
    aug = [[q(x) for x in row] + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]
