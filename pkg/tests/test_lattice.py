from fractions import Fraction

import mpmath
import numpy as np
import pytest
from conftest import NAMES, analysis
from scipy.optimize import minimize

from folint.decide import family_for
from folint.lattice import (
    NSModel,
    Surd,
    coordinate_bounds,
    ellipsoid_extrema,
    lambda_matrix,
    strict_transform_exceptional,
)


def test_intersection_form_p2():
    m = NSModel("projective", 0, 3)
    L, E = m.L(), [m.E(i) for i in range(3)]
    assert L.dot(L) == 1
    assert all(e.dot(e) == -1 for e in E)
    assert E[0].dot(E[1]) == 0 and L.dot(E[2]) == 0


def test_intersection_form_hirzebruch():
    m = NSModel("hirzebruch", 3, 1)
    F, M = m.F(), m.M()
    assert F.dot(F) == 0 and M.dot(M) == 3 and F.dot(M) == 1
    assert m.E(0).dot(m.E(0)) == -1


@pytest.mark.parametrize("name", NAMES)
def test_canonical_self_intersection(name):
    # [DERIVED] Noether: K^2 = 9 - n on a blow-up of P^2, 8 - n on one of F_delta
    an = analysis(name)
    base = 9 if an.surface.kind == "projective" else 8
    assert an.KZ.dot(an.KZ) == base - an.config.n


@pytest.mark.parametrize(
    "name, expected",
    [
        ("ex41", "3*F* + 5*M* - 4*E1* - 3*E2* - 2*E3* - 2*E4* - 2*E5*"),
        (
            "ex42",
            "6*F* + 8*M* - 8*E1* - 8*E2* - 5*E3* - 4*E4* - 2*E5* - 2*E6* - 2*E7* - E8* - 2*E9* - 4*E10* - 5*E11*",
        ),
    ],
)
def test_canonical_difference(name, expected):
    # [PAPER]
    an = analysis(name)
    assert str(an.KF - an.KZ) == expected


def test_canonical_difference_ex43_ex44():
    # [PAPER]
    an = analysis("ex43")
    want = [12] + [-2] * 6 + [-5, -2, -1, -1, -1] + [-2] * 25
    assert [int(c) for c in (an.KF - an.KZ).coords] == want
    an = analysis("ex44")
    want = [3, 4, -4, -2, -2, -2, -1, -1, -1, -1, -1, -2] + [-1, -1, -2] * 4
    assert [int(c) for c in (an.KF - an.KZ).coords] == want


@pytest.mark.parametrize("name", NAMES)
def test_lambda_columns_are_orthogonal_to_their_chains(name):
    # [DERIVED] sum_i a_ir E_i* meets the strict transform of every exceptional
    # divisor of the chain of p_r, except that of p_r itself, with degree zero
    an = analysis(name)
    cfg, m = an.config, an.model
    lam = lambda_matrix(cfg)
    for j, r in enumerate(cfg.terminal_ids):
        assert lam[r][j] == 1
        D = m.make([0] * m.base_rank, [lam[i][j] for i in range(cfg.n)])
        cur = cfg.points[r].parent
        while cur is not None:
            assert D.dot(strict_transform_exceptional(m, cfg, cur)) == 0
            cur = cfg.points[cur].parent
        assert D.dot(strict_transform_exceptional(m, cfg, r)) == -1


def test_t_alpha_family_example_42():
    # [PAPER] T_alpha with alpha_1, alpha_2 at p5, p6 and the rest fixed
    an = analysis("ex42")
    S = an.surface
    fam = family_for(an, [S.parse("X0"), S.parse("X1"), S.parse("Y0")])
    a1, a2 = Fraction(1, 5), Fraction(1, 7)
    T = fam.t_alpha([a1, a2])
    half, sixth = Fraction(1, 2), Fraction(1, 6)
    want = [Fraction(2, 3), 1, -1, -1, Fraction(-2, 3), -half, -a1, -a2, -(half - a1 - a2), -sixth, -sixth, -half, -half]
    assert list(T.coords) == want


@pytest.mark.parametrize("name", NAMES)
def test_gram_matrix_matches_numpy(name):
    # [DERIVED] positive definiteness also seen by a floating Cholesky
    fam = _fam(name)
    G = np.array([[float(v) for v in row] for row in fam.gram()])
    np.linalg.cholesky(G)


def _fam(name):
    from conftest import sigma_of
    from folint.decide import default_sigma

    an = analysis(name)
    s = sigma_of(name)
    return family_for(an, default_sigma(an) if s is None else s)


# ---------------------------------------------------------------- surds


@pytest.mark.parametrize(
    "a, b, r",
    [(1, 1, 2), (Fraction(1, 3), -2, Fraction(5, 7)), (0, 3, 0), (-5, 2, 6), (Fraction(7, 2), -1, 12)],
)
def test_surd_matches_mpmath(a, b, r):
    mpmath.mp.dps = 60
    s = Surd(Fraction(a), Fraction(b), Fraction(r))
    ref = mpmath.mpf(Fraction(a).numerator) / Fraction(a).denominator + mpmath.mpf(
        Fraction(b).numerator
    ) / Fraction(b).denominator * mpmath.sqrt(mpmath.mpf(Fraction(r).numerator) / Fraction(r).denominator)
    lo, hi = s.enclosure(100)
    assert mpmath.mpf(lo.numerator) / lo.denominator <= ref <= mpmath.mpf(hi.numerator) / hi.denominator
    assert hi - lo <= Fraction(1, 2**90)
    assert s.floor() == int(mpmath.floor(ref)) and s.ceil() == int(mpmath.ceil(ref))
    assert s.sign() == (0 if ref == 0 else (1 if ref > 0 else -1))


def test_surd_order():
    assert Surd(Fraction(0), Fraction(1), Fraction(2)) < Surd(Fraction(3, 2))
    assert Surd(Fraction(1), Fraction(1), Fraction(2)) < Surd(Fraction(2), Fraction(1, 2), Fraction(2))
    assert Surd(Fraction(2)) == Surd(Fraction(0), Fraction(1), Fraction(4))


# ---------------------------------------------------------------- extrema


def test_ellipsoid_extrema_against_scipy():
    # [DERIVED] unconstrained extrema of alpha_1 on {T_alpha^2 = 0}, checked by SLSQP
    an = analysis("ex42")
    fam = family_for(an, [])
    assert fam.t_sigma_sq == Fraction(5, 576)
    ell = fam.ell

    def q(a):
        return float(fam.t_alpha_sq([Fraction(x).limit_denominator(10**12) for x in a]))

    c = [Fraction(0)] * ell
    c[0] = Fraction(1)
    lo, hi = ellipsoid_extrema(fam, (0, c), nonnegative=False)
    x0 = np.array([float(v) for v in fam.alpha_sigma])
    cons = {"type": "eq", "fun": q}
    best_hi = minimize(lambda a: -a[0], x0, constraints=[cons], method="SLSQP", options={"ftol": 1e-12})
    best_lo = minimize(lambda a: a[0], x0, constraints=[cons], method="SLSQP", options={"ftol": 1e-12})
    assert abs(-best_hi.fun - float(hi)) < 1e-6
    assert abs(best_lo.fun - float(lo)) < 1e-6


def test_coordinate_bounds_contain_samples():
    # every non-negative point of the ellipsoid lies inside the computed box
    fam = family_for(analysis("ex42"), [])
    box = coordinate_bounds(fam)
    G = np.array([[float(v) for v in row] for row in fam.gram()])
    center = np.array([float(v) for v in fam.alpha_sigma])
    m = float(fam.t_sigma_sq)
    Linv = np.linalg.inv(np.linalg.cholesky(G)).T
    rng = np.random.default_rng(3)
    for _ in range(2000):
        u = rng.normal(size=fam.ell)
        u /= np.linalg.norm(u)
        a = center + np.sqrt(m) * Linv @ u
        if (a >= 0).all():
            for k, (lo, hi) in enumerate(box):
                assert float(lo) - 1e-9 <= a[k] <= float(hi) + 1e-9
