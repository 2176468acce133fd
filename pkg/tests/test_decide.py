from fractions import Fraction

import pytest
from conftest import analysis, sigma_of

import oracles
from folint.algebra import AFFINE, PROJECTIVE
from folint.cli import parse_surface
from folint.decide import (
    FirstIntegral,
    NoIntegralOfGenus,
    NotIntegrable,
    _proportional,
    algorithm2,
    algorithm3,
    analyze,
    genus_of,
    polynomial_first_integral,
    verify_first_integral,
)


def run(a, b, surface):
    return analyze(AFFINE.parse(a), AFFINE.parse(b), parse_surface(surface))


def ratio_is(v, num, den):
    p, q = v.affine
    return p * AFFINE.parse(den) == q * AFFINE.parse(num)


def test_radial_foliation():
    v = algorithm2(run("-y", "x", "P2"))
    assert isinstance(v, FirstIntegral) and v.genus == 0
    assert ratio_is(v, "y", "x") or ratio_is(v, "x", "y")


def test_exponential_leaves_have_no_integral():
    # dy - y dx has the transcendental integral y exp(-x)
    assert isinstance(algorithm2(run("-y", "1", "P2")), NotIntegrable)


def test_transcendental_integral():
    # x exp(-x) / (y exp(-y)) is constant on the leaves
    assert isinstance(algorithm2(run("y*(1-x)", "x*(y-1)", "P2")), NotIntegrable)


@pytest.mark.parametrize(
    "a, b, surface, poly",
    [
        ("2*x", "2*y", "P2", "x^2 + y^2"),
        ("-3*x^2", "1", "P2", "x^3 - y"),
        ("y", "x", "P2", "x*y"),
        ("2*x", "2*y", "F1", "x^2 + y^2"),
    ],
)
def test_polynomial_integrals_of_genus_0(a, b, surface, poly):
    an = run(a, b, surface)
    v = polynomial_first_integral(None, None, None, 0, analysis=an)
    assert isinstance(v, FirstIntegral) and v.genus == 0
    p, q = v.affine
    assert q == AFFINE.const(1)
    assert _proportional(p, AFFINE.parse(poly))
    # [DERIVED] sympy confirms invariance of a few level sets
    for c in (0, 1, -3):
        assert oracles.affine_invariant(an.A, an.B, p + c)


def test_ruling_of_hirzebruch_surface():
    v = algorithm2(run("1", "0", "F1"))
    assert isinstance(v, FirstIntegral) and ratio_is(v, "x", "1")


def test_radial_has_no_polynomial_integral():
    v = polynomial_first_integral(None, None, None, 0, analysis=run("-y", "x", "P2"))
    assert isinstance(v, NoIntegralOfGenus)


def test_verify_first_integral():
    an = analysis("ex43")
    S = an.surface
    assert verify_first_integral(an.form, S.parse("X*Y*Z^4 + Y^6"), S.parse("X*Z^5 + X^5*Z"))
    assert not verify_first_integral(an.form, S.parse("X*Y*Z^4"), S.parse("X*Z^5 + X^5*Z"))


def test_genus_by_adjunction():
    # [DERIVED] a plane curve of degree b with ordinary points of multiplicity m_i
    # has genus (b-1)(b-2)/2 - sum m_i(m_i-1)/2
    an = analysis("ex43")
    m = an.model
    D = m.L() * 6 - sum((m.E(i) for i in range(36)), m.zero())
    assert genus_of(D, an.KZ) == Fraction(10)
    assert genus_of(m.L() * 4, an.KZ) == 3


def test_example_43_algorithm2_finds_the_pencil():
    # K_Z.T = 3 > 0, so gamma comes from e(T) instead of -2 / K_Z.T
    v = algorithm2(analysis("ex43"), sigma_of("ex43"))
    assert isinstance(v, FirstIntegral) and v.gamma == 6 and v.genus == 10


@pytest.mark.parametrize("g", [0, 2, 3, 4, 5, 6])
def test_example_41_has_no_integral_of_any_genus(g):
    v = algorithm3(analysis("ex41"), sigma_of("ex41"), g)
    assert isinstance(v, (NotIntegrable, NoIntegralOfGenus))


@pytest.mark.parametrize("g", [0, 2, 3, 4, 6, 11])
def test_example_43_other_genera(g):
    assert isinstance(algorithm3(analysis("ex43"), sigma_of("ex43"), g), NoIntegralOfGenus)


def test_example_44_polynomial_with_wrong_genus():
    an = analysis("ex44")
    for g in (0, 2, 4):
        assert not isinstance(polynomial_first_integral(None, None, None, g, analysis=an), FirstIntegral)


def test_step_4_without_invariant_curves():
    # with an empty Sigma the maximum of T_alpha^2 is positive and the answer
    # comes from the search over the ellipsoid
    an = analysis("ex42")
    v = algorithm3(an, [], 0)
    assert isinstance(v, FirstIntegral) and v.genus == 0
    assert verify_first_integral(an.form, v.F, v.G)


def test_invalid_sigma_is_rejected():
    an = analysis("ex42")
    S = an.surface
    with pytest.raises(Exception):
        algorithm2(an, [S.parse("X0 + X1")])
