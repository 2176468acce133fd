import pytest
import sympy as sp

from folint.algebra import (
    AFFINE,
    PROJECTIVE,
    ContextMismatch,
    OneForm,
    exact_form_coeffs,
    hirzebruch,
    is_invariant_curve,
    poly_gcd,
    restrict_poly,
    wedge_with_coeffs_is_zero,
)


def test_arithmetic_and_gcd_match_sympy():
    x, y = sp.symbols("x y")
    a = AFFINE.parse("(x + 2*y)^2*(x - y)")
    b = AFFINE.parse("(x + 2*y)*(x^2 + 1)")
    g = poly_gcd(a, b)
    ref = sp.gcd(sp.expand((x + 2 * y) ** 2 * (x - y)), sp.expand((x + 2 * y) * (x**2 + 1)))
    got = sp.sympify(str(g).replace("^", "**"))
    assert sp.simplify(got / ref).is_number


def test_mixed_contexts_are_rejected():
    with pytest.raises(ContextMismatch):
        AFFINE.parse("x") + PROJECTIVE.parse("X")


def test_restriction_to_charts():
    f = hirzebruch(2).parse("X0^2*Y1 + X1^2*Y0")
    assert restrict_poly(f, "U00") == AFFINE.parse("y + x^2")
    assert restrict_poly(f, "U11") == AFFINE.parse("x^2 + y")
    g = PROJECTIVE.parse("X*Z - Y^2")
    assert restrict_poly(g, "U_Y") == AFFINE.parse("x*y - 1")


def test_exact_form_is_integrable():
    F = PROJECTIVE.parse("X^2 + Y^2")
    G = PROJECTIVE.parse("Z^2")
    coeffs = exact_form_coeffs(F, G)
    omega = OneForm(PROJECTIVE, coeffs)
    assert wedge_with_coeffs_is_zero(omega, coeffs)
    assert is_invariant_curve(omega, F) and is_invariant_curve(omega, G)
    assert is_invariant_curve(omega, F + G * 3)
    assert not is_invariant_curve(omega, PROJECTIVE.parse("X"))


def test_projective_form_must_be_contracted_by_euler():
    # X dY + Y dX does not vanish on the Euler field
    with pytest.raises(ValueError):
        OneForm(PROJECTIVE, [PROJECTIVE.parse("Y"), PROJECTIVE.parse("X"), PROJECTIVE.zero()])


def test_primitive():
    p = AFFINE.parse("6*x + 4/3*y")
    q = p.primitive()
    assert q == AFFINE.parse("9*x + 2*y")
