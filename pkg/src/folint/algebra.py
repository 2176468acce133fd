"""Graded polynomials and differential 1-forms on C^2, P^2 and F_delta.

Polynomials have rational coefficients and live in one of three rings:

* affine ``x, y``;
* projective ``X, Y, Z`` (standard grading);
* Hirzebruch ``X0, X1, Y0, Y1`` with deg X0 = deg X1 = (1, 0),
  deg Y0 = (0, 1) and deg Y1 = (-delta, 1).

Arithmetic is delegated to FLINT's multivariate polynomials over Q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import flint

from .fields import QQ, Scalar, to_fmpq  # noqa: F401  (Scalar re-exported)

fmpq = flint.fmpq


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GradingContext:
    kind: str  # "affine", "projective" or "hirzebruch"
    delta: int = 0

    def __post_init__(self):
        if self.kind not in ("affine", "projective", "hirzebruch"):
            raise ValueError(f"unknown context kind {self.kind!r}")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if self.kind != "hirzebruch" and self.delta:
            raise ValueError("delta only makes sense on a Hirzebruch surface")

    @property
    def names(self) -> tuple[str, ...]:
        return {
            "affine": ("x", "y"),
            "projective": ("X", "Y", "Z"),
            "hirzebruch": ("X0", "X1", "Y0", "Y1"),
        }[self.kind]

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def ring(self):
        return flint.fmpq_mpoly_ctx.get(self.names, "degrevlex")

    def gens(self) -> tuple["MultiPoly", ...]:
        return tuple(MultiPoly(self, g) for g in self.ring.gens())

    def const(self, c) -> "MultiPoly":
        return MultiPoly(self, self.ring.constant(to_fmpq(c)))

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, self.ring.from_dict({}))

    def parse(self, text: str) -> "MultiPoly":
        return parse_poly(text, self)

    def __str__(self):
        if self.kind == "hirzebruch":
            return f"F{self.delta}"
        return {"affine": "C2", "projective": "P2"}[self.kind]


AFFINE = GradingContext("affine")
PROJECTIVE = GradingContext("projective")


def hirzebruch(delta: int) -> GradingContext:
    return GradingContext("hirzebruch", delta)


class MultiPoly:
    """A polynomial in the ring of a grading context.

    ``bidegree_override`` is only ever set on the zero polynomial, to carry the
    bidegree that the extension algorithm assigns to a vanishing coefficient.
    """

    __slots__ = ("context", "poly", "bidegree_override")

    def __init__(self, context: GradingContext, poly, bidegree_override=None):
        self.context = context
        self.poly = poly
        self.bidegree_override = bidegree_override

    # arithmetic -----------------------------------------------------------
    def _other(self, other):
        if isinstance(other, MultiPoly):
            if other.context != self.context:
                raise ContextMismatch(f"{self.context} vs {other.context}")
            return other.poly
        return self.context.ring.constant(to_fmpq(other))

    def __add__(self, other):
        return MultiPoly(self.context, self.poly + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return MultiPoly(self.context, self.poly - self._other(other))

    def __rsub__(self, other):
        return MultiPoly(self.context, self._other(other) - self.poly)

    def __mul__(self, other):
        return MultiPoly(self.context, self.poly * self._other(other))

    __rmul__ = __mul__

    def __neg__(self):
        return MultiPoly(self.context, -self.poly)

    def __pow__(self, e: int):
        return MultiPoly(self.context, self.poly**e)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.context == other.context and self.poly == other.poly
        try:
            return self.poly == self._other(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.context, str(self.poly)))

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        q, r = divmod(self.poly, self._other(other))
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return MultiPoly(self.context, q)

    def divides(self, other: "MultiPoly") -> bool:
        """True iff ``self`` divides ``other``."""
        if self.is_zero():
            return other.is_zero()
        return divmod(self._other(other), self.poly)[1].is_zero()

    # inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_constant(self) -> bool:
        return self.poly.is_constant()

    def terms(self) -> list[tuple[tuple[int, ...], fmpq]]:
        return [(tuple(int(e) for e in m), c) for m, c in zip(self.poly.monoms(), self.poly.coeffs())]

    def total_degree(self) -> int:
        return -1 if self.is_zero() else int(self.poly.total_degree())

    def degree_in(self, var: str) -> int:
        if self.is_zero():
            return -1
        return int(self.poly.degrees()[self.context.names.index(var)])

    def leading_coefficient(self) -> fmpq:
        return self.poly.leading_coefficient()

    def derivative(self, var: str) -> "MultiPoly":
        return MultiPoly(self.context, self.poly.derivative(var))

    def monic(self) -> "MultiPoly":
        if self.is_zero():
            return self
        return MultiPoly(self.context, self.poly / self.poly.leading_coefficient())

    def primitive(self) -> "MultiPoly":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if self.is_zero():
            return self
        coeffs = self.poly.coeffs()
        den = 1
        for c in coeffs:
            den = den * int(c.q) // _gcd(den, int(c.q))
        nums = [int(c.p) * (den // int(c.q)) for c in coeffs]
        g = 0
        for n in nums:
            g = _gcd(g, n)
        scale = fmpq(den, g)
        if self.poly.leading_coefficient() < 0:
            scale = -scale
        return MultiPoly(self.context, self.poly * scale)

    def factor(self) -> list[tuple["MultiPoly", int]]:
        _, parts = self.poly.factor()
        return [(MultiPoly(self.context, f), e) for f, e in parts]

    def to_context(self, target: GradingContext, images) -> "MultiPoly":
        """Substitute ``images`` (MultiPolys in ``target``) for the variables."""
        polys = [im.poly if isinstance(im, MultiPoly) else target.ring.constant(to_fmpq(im)) for im in images]
        return MultiPoly(target, self.poly.compose(*polys, ctx=target.ring))

    def subs(self, values: dict) -> "MultiPoly":
        return MultiPoly(self.context, self.poly.subs({k: to_fmpq(v) for k, v in values.items()}))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({self.context}, {self})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def format_poly(p: MultiPoly) -> str:
    """Render in the input grammar, e.g. ``-8*y + 9*x^2*y``."""
    if p.is_zero():
        return "0"
    names = p.context.names
    out = []
    for exps, c in p.terms():
        mon = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if not mon:
            body = str(a)
        elif a == 1:
            body = mon
        else:
            body = f"{a}*{mon}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z][A-Za-z0-9]*)|(\*\*|[+\-*^()]))")


def parse_poly(text: str, context: GradingContext) -> MultiPoly:
    """Parse ``text`` in the polynomial grammar of ``context``.

    Products need an explicit ``*``; powers are written ``^`` with a
    non-negative integer exponent; parentheses group.
    """
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            bad = pos + len(stripped[pos:]) - len(stripped[pos:].lstrip())
            raise ParseError(f"unexpected character {stripped[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        kind = ("num", "name", "op")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("end", "", len(stripped)))
    names = context.names
    gens = dict(zip(names, context.ring.gens()))
    ring = context.ring
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expect_operand_error(tok):
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"expected a number, variable or '(' but found {what}", text, tok[2])

    def expr():
        sign = 1
        if peek()[1] in "+-" and peek()[0] == "op":
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek()[0] == "op" and peek()[1] in ("+", "-"):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = power()
        while True:
            tok = peek()
            if tok[0] == "op" and tok[1] == "*":
                take()
                acc = acc * power()
            elif tok[0] in ("num", "name") or tok[1] == "(":
                raise ParseError("missing '*' between factors", text, tok[2])
            else:
                return acc

    def power():
        base = atom()
        tok = peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            take()
            etok = take()
            if etok[0] != "num" or "/" in etok[1]:
                raise ParseError("exponent must be a non-negative integer", text, etok[2])
            return base ** int(etok[1])
        return base

    def atom():
        tok = take()
        if tok[0] == "num":
            return ring.constant(to_fmpq(tok[1]))
        if tok[0] == "name":
            if tok[1] not in gens:
                raise ParseError(
                    f"unknown variable {tok[1]!r} (expected one of {', '.join(names)})", text, tok[2]
                )
            return gens[tok[1]]
        if tok[1] == "(":
            inner = expr()
            close = take()
            if close[1] != ")":
                raise ParseError("expected ')'", text, close[2])
            return inner
        if tok[1] in ("+", "-"):
            # unary sign inside a product, e.g. 2*-x
            inner = atom()
            return -inner if tok[1] == "-" else inner
        expect_operand_error(tok)

    if tokens[0][0] == "end":
        raise ParseError("empty polynomial", text, 0)
    result = expr()
    if peek()[0] != "end":
        tok = peek()
        raise ParseError(f"unexpected {tok[1]!r}", text, tok[2])
    return MultiPoly(context, result)


# --------------------------------------------------------------------------
# grading

def bidegree(p: MultiPoly) -> tuple[int, int] | None:
    """Bidegree of a polynomial on F_delta, or None if it is not bihomogeneous."""
    ctx = p.context
    if ctx.kind != "hirzebruch":
        raise ContextMismatch("bidegree is only defined on a Hirzebruch surface")
    if p.is_zero():
        return p.bidegree_override
    found = None
    for (a1, a2, b1, b2), _ in p.terms():
        deg = (a1 + a2 - ctx.delta * b2, b1 + b2)
        if found is None:
            found = deg
        elif deg != found:
            return None
    return found


def degree_of(p: MultiPoly) -> int | None:
    """Degree of a homogeneous polynomial on P^2, or None if not homogeneous."""
    if p.is_zero():
        return None
    degs = {sum(e) for e, _ in p.terms()}
    return degs.pop() if len(degs) == 1 else None


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Monic greatest common divisor (leading term in degrevlex has coefficient 1)."""
    if p.context != q.context:
        raise ContextMismatch(f"{p.context} vs {q.context}")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    return MultiPoly(p.context, p.poly.gcd(q.poly)).monic()


def polys_gcd(polys) -> MultiPoly:
    polys = list(polys)
    g = polys[0].context.zero()
    for p in polys:
        g = poly_gcd(g, p)
        if g.is_constant() and not g.is_zero():
            break
    return g


# --------------------------------------------------------------------------
# 1-forms

class OneForm:
    """sum_i coeffs[i] d(var_i) in a grading context.

    Construction removes any common factor of the coefficients and checks the
    Euler relation (P^2) or the two bigraded relations (F_delta).
    """

    __slots__ = ("context", "coeffs")

    def __init__(self, context: GradingContext, coeffs, reduce: bool = True, check: bool = True):
        coeffs = tuple(coeffs)
        if len(coeffs) != context.nvars:
            raise ValueError(f"{context} forms need {context.nvars} coefficients")
        for c in coeffs:
            if c.context != context:
                raise ContextMismatch("coefficients must share the form's context")
        if all(c.is_zero() for c in coeffs):
            raise ValueError("the zero 1-form defines no foliation")
        if reduce:
            g = polys_gcd(coeffs)
            if not g.is_constant():
                coeffs = tuple(c.divexact(g) if not c.is_zero() else c for c in coeffs)
            coeffs = _normalize_sign(coeffs)
        self.context = context
        self.coeffs = coeffs
        if check:
            self._check_relations()

    def _check_relations(self):
        ctx = self.context
        if ctx.kind == "projective":
            X, Y, Z = ctx.gens()
            A, B, C = self.coeffs
            if not (A * X + B * Y + C * Z).is_zero():
                raise ValueError("projective form violates Euler's condition")
        elif ctx.kind == "hirzebruch":
            X0, X1, Y0, Y1 = ctx.gens()
            A0, A1, B0, B1 = self.coeffs
            if not (A0 * X0 + A1 * X1 - B1 * Y1 * ctx.delta).is_zero():
                raise ValueError("form violates the relation A0*X0 + A1*X1 - delta*B1*Y1 = 0")
            if not (B0 * Y0 + B1 * Y1).is_zero():
                raise ValueError("form violates the relation B0*Y0 + B1*Y1 = 0")

    @classmethod
    def affine(cls, A: MultiPoly, B: MultiPoly, reduce: bool = True) -> "OneForm":
        return cls(AFFINE, (A, B), reduce=reduce)

    def wedge_coefficients(self, other: "OneForm") -> list[MultiPoly]:
        if other.context != self.context:
            raise ContextMismatch(f"{self.context} vs {other.context}")
        a, b = self.coeffs, other.coeffs
        return [a[i] * b[j] - a[j] * b[i] for i, j in combinations(range(len(a)), 2)]

    def __eq__(self, other):
        return isinstance(other, OneForm) and self.context == other.context and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        names = self.context.names
        return " + ".join(f"({c})*d{n}" for c, n in zip(self.coeffs, names))

    def __repr__(self):
        return f"OneForm({self.context}: {self})"


def _normalize_sign(coeffs):
    for c in coeffs:
        if not c.is_zero():
            if c.leading_coefficient() < 0:
                return tuple(-d for d in coeffs)
            return coeffs
    return coeffs


def differential(f: MultiPoly) -> tuple[MultiPoly, ...]:
    return tuple(f.derivative(n) for n in f.context.names)


def exact_form_coeffs(F: MultiPoly, G: MultiPoly) -> tuple[MultiPoly, ...]:
    """Coefficients of F dG - G dF (not reduced)."""
    dF, dG = differential(F), differential(G)
    return tuple(F * g - G * f for f, g in zip(dF, dG))


def wedge_is_zero(omega: OneForm, eta: OneForm) -> bool:
    return all(c.is_zero() for c in omega.wedge_coefficients(eta))


def wedge_with_coeffs_is_zero(omega: OneForm, coeffs) -> bool:
    a = omega.coeffs
    return all((a[i] * coeffs[j] - a[j] * coeffs[i]).is_zero() for i, j in combinations(range(len(a)), 2))


def is_invariant_curve(omega: OneForm, f: MultiPoly) -> bool:
    """True iff every coefficient of omega ^ df is divisible by f."""
    if f.context != omega.context:
        raise ContextMismatch(f"{f.context} vs {omega.context}")
    if f.is_constant():
        raise ValueError("a constant does not define a curve")
    df = differential(f)
    a = omega.coeffs
    for i, j in combinations(range(len(a)), 2):
        w = a[i] * df[j] - a[j] * df[i]
        if not f.divides(w):
            return False
    return True


# --------------------------------------------------------------------------
# affine charts

# chart id -> (surface kind, images of the global variables in terms of
# the chart coordinates (x, y) as strings "x", "y", "1", indices of the
# form coefficients that survive on the slice)
CHARTS = {
    "U_Z": ("projective", ("x", "y", "1"), (0, 1)),
    "U_Y": ("projective", ("x", "1", "y"), (0, 2)),
    "U_X": ("projective", ("1", "x", "y"), (1, 2)),
    "U00": ("hirzebruch", ("1", "x", "1", "y"), (1, 3)),
    "U10": ("hirzebruch", ("x", "1", "1", "y"), (0, 3)),
    "U01": ("hirzebruch", ("1", "x", "y", "1"), (1, 2)),
    "U11": ("hirzebruch", ("x", "1", "y", "1"), (0, 2)),
}


def chart_images(chart: str):
    x, y = AFFINE.gens()
    table = {"x": x, "y": y, "1": AFFINE.const(1)}
    return [table[s] for s in CHARTS[chart][1]]


def restrict_poly(f: MultiPoly, chart: str) -> MultiPoly:
    kind = CHARTS[chart][0]
    if f.context.kind != kind:
        raise ContextMismatch(f"chart {chart} does not belong to {f.context}")
    return f.to_context(AFFINE, chart_images(chart))


def charts_of(context: GradingContext) -> list[str]:
    return [c for c, spec in CHARTS.items() if spec[0] == context.kind]


def restrict_to_chart(omega: OneForm, chart: str) -> OneForm:
    """The affine 1-form of the restricted foliation on ``chart``, gcd-reduced."""
    kind, _, idx = CHARTS[chart]
    if omega.context.kind != kind:
        raise ContextMismatch(f"chart {chart} does not belong to {omega.context}")
    A = restrict_poly(omega.coeffs[idx[0]], chart)
    B = restrict_poly(omega.coeffs[idx[1]], chart)
    return OneForm(AFFINE, (A, B))
