"""Extension of an affine polynomial 1-form to P^2 or to a Hirzebruch surface."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AFFINE,
    PROJECTIVE,
    GradingContext,
    MultiPoly,
    OneForm,
    bidegree,
    degree_of,
    hirzebruch,
    poly_gcd,
)


@dataclass(frozen=True)
class ExtensionResult:
    form: OneForm
    canonical_degrees: int | tuple[int, int]

    @property
    def surface(self) -> GradingContext:
        return self.form.context


def _check_affine_input(A: MultiPoly, B: MultiPoly):
    if A.context != AFFINE or B.context != AFFINE:
        raise ValueError("expected affine polynomials in x, y")
    if A.is_zero() and B.is_zero():
        raise ValueError("A and B are both zero")


def _strip_monomial(p: MultiPoly, var_idx: tuple[int, ...]) -> tuple[MultiPoly, list[int]]:
    """Divide out the largest monomial in the given variables dividing p."""
    if p.is_zero():
        return p, [0] * len(var_idx)
    mins = [min(e[i] for e, _ in p.terms()) for i in var_idx]
    ctx = p.context
    gens = ctx.gens()
    mono = ctx.const(1)
    for i, m in zip(var_idx, mins):
        mono = mono * gens[i] ** m
    return p.divexact(mono), mins


def extend_to_hirzebruch(delta: int, A: MultiPoly, B: MultiPoly) -> ExtensionResult:
    """Extension of A dx + B dy from U00 = C^2 to F_delta.

    The canonical sheaf of the extension is O(d1, d2); A1 then has
    bidegree (d1 - delta + 1, d2 + 2) and B1 has bidegree (d1 + 2, d2 + 1).
    """
    _check_affine_input(A, B)
    ctx = hirzebruch(delta)
    X0, X1, Y0, Y1 = ctx.gens()

    # Step 1: substitute x = X1/X0, y = X0^delta Y1/Y0 and clear denominators.
    def lift(p: MultiPoly) -> MultiPoly:
        if p.is_zero():
            return ctx.zero()
        a = p.degree_in("x")
        b = p.degree_in("y")
        # X0^(a) Y0^(b) * p(X1/X0, X0^delta Y1/Y0) is a polynomial
        total = ctx.zero()
        for (i, j), c in p.terms():
            total = total + X1**i * X0 ** (a - i + delta * j) * Y1**j * Y0 ** (b - j) * c
        stripped, _ = _strip_monomial(total, (0, 2))
        return stripped

    A1 = lift(A)
    B1 = lift(B)
    # zero coefficients carry the bidegree of O(-delta-1, -1)
    lam = bidegree(A1) if not A1.is_zero() else (-delta - 1, -1)
    mu = bidegree(B1) if not B1.is_zero() else (-delta - 1, -1)
    assert lam is not None and mu is not None
    for p in (A1, B1):
        if not p.is_zero():
            assert not X0.divides(p) and not Y0.divides(p)
    if not A1.is_zero() and not B1.is_zero():
        assert poly_gcd(A1, B1).is_constant()

    # Steps 2 and 3: balance the bidegrees.
    m1 = lam[0] - mu[0] + 1 + delta
    if m1 > 0:
        B1 = B1 * X0**m1
    else:
        A1 = A1 * X0 ** (-m1)
    m2 = lam[1] - mu[1] - 1
    if m2 > 0:
        B1 = B1 * Y0**m2
    else:
        A1 = A1 * Y0 ** (-m2)

    # Step 4.
    gamma2 = 0 if Y0.divides(B1) else 1
    A1 = A1 * Y0**gamma2
    B1 = B1 * Y0**gamma2

    # Step 5.
    gamma1 = 0 if X0.divides(B1 * Y1 * delta - X1 * A1) else 1
    A1 = A1 * X0**gamma1
    B1 = B1 * X0**gamma1

    # Step 6: the division by X0 and Y0 is exact by construction.
    A0 = (B1 * Y1 * delta - X1 * A1).divexact(X0)
    B0 = (-(Y1 * B1)).divexact(Y0)

    form = OneForm(ctx, (A0, A1, B0, B1))
    return ExtensionResult(form, hirzebruch_canonical_degrees(form))


def hirzebruch_canonical_degrees(form: OneForm) -> tuple[int, int]:
    delta = form.context.delta
    A0, A1, B0, B1 = form.coeffs
    if not B1.is_zero():
        b = bidegree(B1)
        return (b[0] - 2, b[1] - 1)
    if not A1.is_zero():
        a = bidegree(A1)
        return (a[0] + delta - 1, a[1] - 2)
    if not A0.is_zero():
        a = bidegree(A0)
        return (a[0] + delta - 1, a[1] - 2)
    b = bidegree(B0)
    return (b[0] + delta - 2, b[1] - 1)


def extend_to_p2(A: MultiPoly, B: MultiPoly) -> ExtensionResult:
    """Extension of A dx + B dy from U_Z = C^2 to P^2.

    Homogenize to the common degree D, complete with the dZ coefficient forced
    by Euler's condition and clear the common factor.  The coefficients then
    have degree r + 1 and the canonical sheaf is O(r - 1).
    """
    _check_affine_input(A, B)
    ctx = PROJECTIVE
    X, Y, Z = ctx.gens()
    D = max(A.total_degree(), B.total_degree())

    def homogenize(p: MultiPoly) -> MultiPoly:
        total = ctx.zero()
        for (i, j), c in p.terms():
            total = total + X**i * Y**j * Z ** (D - i - j) * c
        return total

    Ah, Bh = homogenize(A), homogenize(B)
    form = OneForm(ctx, (Z * Ah, Z * Bh, -(X * Ah + Y * Bh)))
    r_plus_1 = max(degree_of(c) for c in form.coeffs if not c.is_zero())
    return ExtensionResult(form, r_plus_1 - 2)
