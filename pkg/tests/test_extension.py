import pytest
import sympy as sp
from conftest import NAMES, problem

from folint.algebra import (
    AFFINE,
    PROJECTIVE,
    ParseError,
    bidegree,
    charts_of,
    degree_of,
    hirzebruch,
    is_invariant_curve,
    restrict_to_chart,
)
from folint.cli import parse_surface
from folint.extension import extend_to_hirzebruch, extend_to_p2

x, y = sp.symbols("x y")


def sym(p):
    return sp.sympify(str(p).replace("^", "**"))


# affine coordinates of the chart U00 = U_Z written in each chart's coordinates
def substitution(chart, delta):
    return {
        "U00": (x, y),
        "U10": (1 / x, x**delta * y),
        "U01": (x, 1 / y),
        "U11": (1 / x, x**delta / y),
        "U_Z": (x, y),
        "U_Y": (x / y, 1 / y),
        "U_X": (1 / y, x / y),
    }[chart]


def pulled_back(A, B, chart, delta):
    """Saturated pull back of A dx + B dy, computed with sympy."""
    u, v = substitution(chart, delta)
    a = sym(A).subs({x: u, y: v}, simultaneous=True)
    b = sym(B).subs({x: u, y: v}, simultaneous=True)
    P = sp.together(a * sp.diff(u, x) + b * sp.diff(v, x))
    Q = sp.together(a * sp.diff(u, y) + b * sp.diff(v, y))
    nP, dP = sp.fraction(P)
    nQ, dQ = sp.fraction(Q)
    l = sp.lcm(dP, dQ)
    P, Q = sp.expand(nP * sp.cancel(l / dP)), sp.expand(nQ * sp.cancel(l / dQ))
    g = sp.gcd(P, Q)
    return sp.cancel(P / g), sp.cancel(Q / g)


def proportional(p1, q1, p2, q2):
    return sp.expand(p1 * q2 - p2 * q1) == 0 and (p1 != 0 or q1 != 0) and (p2 != 0 or q2 != 0)


def extended(name):
    p = problem(name)
    A = AFFINE.parse(p["form"]["A"])
    B = AFFINE.parse(p["form"]["B"])
    S = parse_surface(p["surface"])
    r = extend_to_p2(A, B) if S.kind == "projective" else extend_to_hirzebruch(S.delta, A, B)
    return A, B, S, r


@pytest.mark.parametrize("name", NAMES)
def test_extension_agrees_with_pull_back_in_every_chart(name):
    A, B, S, r = extended(name)
    delta = S.delta if S.kind == "hirzebruch" else 0
    for chart in charts_of(S):
        w = restrict_to_chart(r.form, chart)
        P, Q = (sym(c) for c in w.coeffs)
        rP, rQ = pulled_back(A, B, chart, delta)
        assert proportional(P, Q, rP, rQ), chart
        # the local form has isolated zeros
        assert sp.gcd(P, Q).is_number, chart


def test_canonical_degrees_from_the_examples():
    # [PAPER] K = O(2,3), O(6,6), O(9), O(3,2)
    got = [extended(n)[3].canonical_degrees for n in NAMES]
    assert got == [(2, 3), (6, 6), 9, (3, 2)]


def test_p2_canonical_degree_matches_foliation_degree():
    # [DERIVED] a degree-n foliation of P^2 has K = O(n - 1); n = d - 1 when
    # x A_d + y B_d vanishes for the top homogeneous parts, else n = d
    cases = [("y", "-x"), ("x^2 + y", "x*y - 3"), ("-4*x^5*y - y^6 - 5*x^4*y^6", "x^2 + x^6 + 6*x*y^5 + 6*x^5*y^5")]
    for a, b in cases:
        A, B = AFFINE.parse(a), AFFINE.parse(b)
        d = max(A.total_degree(), B.total_degree())
        top = lambda p: sum(t for t in sp.Add.make_args(sp.expand(sym(p))) if sp.Poly(t, x, y).total_degree() == d)
        n = d - 1 if sp.expand(x * top(A) + y * top(B)) == 0 else d
        assert extend_to_p2(A, B).canonical_degrees == n - 1


def test_gradings():
    S = hirzebruch(3)
    X0, X1, Y0, Y1 = S.gens()
    assert bidegree(X0 * X1) == (2, 0)
    assert bidegree(Y0) == (0, 1) and bidegree(Y1) == (-3, 1)
    assert bidegree(X0**3 * Y1 + X1**3 * Y1 + Y0) == (0, 1)
    assert bidegree(X0 + Y0) is None
    assert degree_of(PROJECTIVE.parse("X^2*Y + Z^3")) == 3


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        AFFINE.parse("x +\n  * y")
    assert (exc.value.line, exc.value.column) == (2, 3)


def test_parse_rejects_unknown_variable():
    with pytest.raises(ParseError):
        PROJECTIVE.parse("X + w")


def test_invariant_coordinate_curves_agree_with_sympy():
    # [DERIVED] invariance in the affine chart: h divides A h_y - B h_x
    A, B, S, r = extended("ex42")
    for f in ("x", "y", "x + y", "x - 1"):
        h = sym(f)
        w = sp.Poly(sym(A) * sp.diff(h, y) - sym(B) * sp.diff(h, x), x, y)
        ref = w.rem(sp.Poly(h, x, y)).is_zero
        X0, X1, Y0, Y1 = S.gens()
        homog = {"x": X1, "y": Y1, "x + y": None, "x - 1": X1 - X0}[f]
        if homog is not None:
            assert is_invariant_curve(r.form, homog) == ref, f
