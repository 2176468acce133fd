"""Decision procedures for rational and polynomial first integrals.

``analyze`` runs the shared pipeline (extension, dicritical reduction,
canonical classes).  ``algorithm2`` and ``algorithm3`` then decide from a
restricted set of invariant curves; ``polynomial_first_integral`` restricts
the denominator to the curves at infinity, which always gives a definite
answer.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AFFINE,
    GradingContext,
    MultiPoly,
    OneForm,
    exact_form_coeffs,
    is_invariant_curve,
    restrict_poly,
    wedge_with_coeffs_is_zero,
)
from .desingularize import DicriticalConfig, dicritical_reduction
from .extension import ExtensionResult, extend_to_hirzebruch, extend_to_p2
from .lattice import (
    DivisorClass,
    NSModel,
    NotInvariant,
    Surd,
    TAlphaFamily,
    TooManySolutions,
    _rank,
    build_V_sigma,
    canonical_classes,
    coordinate_bounds,
    ellipsoid_extrema,
    greedy_restricted,
    t_alpha_family,
)
from .linsys import BoundExceeded, complete_linear_system, system_of_class, e_of

log = logging.getLogger(__name__)

__all__ = [
    "FirstIntegral",
    "NotIntegrable",
    "NoIntegralOfGenus",
    "Inconclusive",
    "NotApplicable",
    "Analysis",
    "analyze",
    "verify_first_integral",
    "genus_of",
    "default_sigma",
    "algorithm2",
    "algorithm3",
    "algorithm3_restricted",
    "polynomial_first_integral",
    "empty_config_shortcut",
]


# --------------------------------------------------------------------------
# verdicts


@dataclass
class FirstIntegral:
    F: MultiPoly
    G: MultiPoly
    genus: int
    gamma: int | None = None
    T: DivisorClass | None = None
    affine: tuple | None = None  # (numerator, denominator) on the affine chart
    kind = "FirstIntegral"

    def __str__(self):
        return f"FirstIntegral ({self.F})/({self.G}), genus {self.genus}"


@dataclass
class NotIntegrable:
    witness: str
    kind = "NotIntegrable"

    def __str__(self):
        return f"NotIntegrable: {self.witness}"


@dataclass
class NoIntegralOfGenus:
    g: int
    reason: str = ""
    kind = "NoIntegralOfGenus"

    def __str__(self):
        return f"NoIntegralOfGenus {self.g}: {self.reason}"


@dataclass
class Inconclusive:
    p_inf: Surd
    p_sup: Surd
    kind = "Inconclusive"

    def __str__(self):
        return f"Inconclusive: p_inf = {float(self.p_inf):.6g}, p_sup = {float(self.p_sup):.6g}"


@dataclass
class NotApplicable:
    failed_condition: str
    kind = "NotApplicable"

    def __str__(self):
        return f"NotApplicable: {self.failed_condition}"


# --------------------------------------------------------------------------
# shared pipeline


@dataclass
class Analysis:
    A: MultiPoly
    B: MultiPoly
    extension: ExtensionResult
    config: DicriticalConfig
    model: NSModel
    KZ: DivisorClass
    KF: DivisorClass

    @property
    def form(self) -> OneForm:
        return self.extension.form

    @property
    def surface(self) -> GradingContext:
        return self.extension.form.context

    @property
    def canonical_degrees(self):
        return self.extension.canonical_degrees


def analyze(A: MultiPoly, B: MultiPoly, surface: GradingContext, max_depth: int = 2, blowup_budget: int = 500) -> Analysis:
    if surface.kind == "projective":
        ext = extend_to_p2(A, B)
    elif surface.kind == "hirzebruch":
        ext = extend_to_hirzebruch(surface.delta, A, B)
    else:
        raise ValueError("surface must be P2 or a Hirzebruch surface")
    config = dicritical_reduction(ext.form, max_depth=max_depth, blowup_budget=blowup_budget)
    model = NSModel.of(config)
    KZ, KF = canonical_classes(model, config, ext.canonical_degrees)
    return Analysis(A, B, ext, config, model, KZ, KF)


def verify_first_integral(omega: OneForm, F: MultiPoly, G: MultiPoly) -> bool:
    return wedge_with_coeffs_is_zero(omega, exact_form_coeffs(F, G))


def genus_of(D: DivisorClass, KZ: DivisorClass) -> Fraction:
    return 1 + (D.dot(D) + KZ.dot(D)) / 2


def default_sigma(an: Analysis) -> list[MultiPoly]:
    """Greedy maximal restricted set among the invariant coordinate curves."""
    cands = [g for g in an.surface.gens() if is_invariant_curve(an.form, g)]
    return greedy_restricted(an.model, an.config, an.KZ, an.KF, cands)


def family_for(an: Analysis, sigma) -> TAlphaFamily:
    vs = build_V_sigma(an.model, an.config, an.KZ, an.KF, list(sigma), an.form)
    if not vs.restricted:
        raise ValueError("Sigma is not a restricted set of independent algebraic solutions")
    return t_alpha_family(an.model, an.config, vs, an.canonical_degrees)


def _in_R(T: DivisorClass, m) -> bool:
    """m is a positive integer with mT integral."""
    m = Fraction(m)
    return m > 0 and m.denominator == 1 and (T * m).is_integral()


def _pencil_verdict(an: Analysis, T: DivisorClass, gamma: int):
    """Linear system |gamma T|: (F, G) when it is a base point free pencil giving an integral."""
    sys = system_of_class(T * gamma, an.surface)
    L = complete_linear_system(sys, an.config)
    if L.proj_dim != 1:
        return None, f"|{gamma}T| has projective dimension {L.proj_dim}"
    if not L.base_point_free:
        return None, f"|{gamma}T| is not base point free ({'; '.join(L.notes)})"
    G, F = L.forms
    if not verify_first_integral(an.form, F, G):
        return None, "the pencil does not define a first integral"
    return (F, G), ""


def _affine_pair(an: Analysis, F: MultiPoly, G: MultiPoly):
    chart = "U_Z" if an.surface.kind == "projective" else "U00"
    return restrict_poly(F, chart), restrict_poly(G, chart)


def _integral(an, F, G, gamma, T) -> FirstIntegral:
    g = genus_of(T * gamma, an.KZ)
    assert g.denominator == 1
    return FirstIntegral(F, G, int(g), gamma, T, _affine_pair(an, F, G))


def _positive(alpha) -> bool:
    return all(a > 0 for a in alpha)


# --------------------------------------------------------------------------
# algorithm 2


def algorithm2(an: Analysis, sigma=None, e_bound: int | None = None):
    if not an.config.points:
        return empty_config_shortcut(an)
    sigma = default_sigma(an) if sigma is None else list(sigma)
    try:
        fam = family_for(an, sigma)
    except TooManySolutions as exc:
        return NotIntegrable(str(exc))
    T = fam.t_sigma
    t2 = fam.t_sigma_sq
    if t2 < 0:
        return NotIntegrable(f"T^2 = {t2} < 0")
    if t2 == 0 and not _positive(fam.alpha_sigma):
        return NotIntegrable("T^2 = 0 but alpha has a non-positive coordinate")
    if t2 > 0:
        return NotApplicable("T^2 > 0: none of the conditions (a)-(d) holds and (e) cannot be certified")
    kt = an.KZ.dot(T)
    gamma = None
    if kt < 0 and _in_R(T, -2 / kt):
        gamma = int(-2 / kt)
    else:
        try:
            gamma = e_of(T, an.config, e_bound)
        except BoundExceeded as exc:
            return NotApplicable(f"e(T) undecided: {exc}")
    pair, why = _pencil_verdict(an, T, gamma)
    if pair is None:
        return NotIntegrable(why)
    return _integral(an, pair[0], pair[1], gamma, T)


# --------------------------------------------------------------------------
# algorithm 3


def _step3(an: Analysis, fam: TAlphaFamily, g: int):
    T = fam.t_sigma
    kt = an.KZ.dot(T)
    if kt == 0:
        return NoIntegralOfGenus(g, "K_Z.T = 0: an integral would have genus 1")
    gamma = Fraction(2 * (g - 1)) / kt
    if not _in_R(T, gamma):
        return NoIntegralOfGenus(g, f"gamma = {gamma} is not in R(T)")
    pair, why = _pencil_verdict(an, T, int(gamma))
    if pair is None:
        return NoIntegralOfGenus(g, why)
    return _integral(an, pair[0], pair[1], int(gamma), T)


def _integer_range(lo: Surd, hi: Surd) -> range:
    return range(max(lo.ceil(), 1), hi.floor() + 1)


def _step4(an: Analysis, fam: TAlphaFamily, g: int, candidate_cap: int = 200000):
    ext = ellipsoid_extrema(fam, an.KZ)
    if ext is None:
        return NotIntegrable("no non-negative alpha with T_alpha^2 = 0")
    p_inf, p_sup = ext
    if p_inf.sign() * p_sup.sign() <= 0:
        return Inconclusive(p_inf, p_sup)
    if (p_sup.sign() < 0 and g != 0) or (p_inf.sign() > 0 and g == 0):
        return NoIntegralOfGenus(g, "the sign of K_Z.T_alpha rules this genus out")
    if p_sup.sign() < 0:
        V = _integer_range(p_inf.reciprocal().scale(-2), p_sup.reciprocal().scale(-2))
    else:
        V = _integer_range(p_sup.reciprocal().scale(2 * (g - 1)), p_inf.reciprocal().scale(2 * (g - 1)))
    if len(V) == 0:
        return NoIntegralOfGenus(g, "no admissible multiple")
    bounds = coordinate_bounds(fam)
    seen = 0
    for t in V:
        ranges = [range(lo.scale(t).ceil(), hi.scale(t).floor() + 1) for lo, hi in bounds]
        for s in itertools.product(*ranges):
            seen += 1
            if seen > candidate_cap:
                return NotApplicable(f"more than {candidate_cap} candidates in step (4)")
            alpha = [Fraction(x, t) for x in s]
            if fam.t_alpha_sq(alpha) != 0:
                continue
            T = fam.t_alpha(alpha)
            if not (T * t).is_integral() or genus_of(T * t, an.KZ) != g:
                continue
            pair, _ = _pencil_verdict(an, T, t)
            if pair is not None:
                return _integral(an, pair[0], pair[1], t, T)
    return NoIntegralOfGenus(g, "no candidate in step (4) gives an integral")


def algorithm3(an: Analysis, sigma=None, g: int = 0, restricted_step4: bool = False, candidate_cap: int = 200000):
    if g < 0 or g == 1:
        raise ValueError("the genus must be a non-negative integer other than 1")
    if not an.config.points:
        return empty_config_shortcut(an, g)
    sigma = default_sigma(an) if sigma is None else list(sigma)
    try:
        fam = family_for(an, sigma)
    except TooManySolutions as exc:
        return NotIntegrable(str(exc))
    t2 = fam.t_sigma_sq
    if t2 < 0:
        return NotIntegrable(f"T^2 = {t2} < 0")
    if t2 == 0:
        return _step3(an, fam, g)
    if restricted_step4:
        return NoIntegralOfGenus(g, "T^2 > 0")
    return _step4(an, fam, g, candidate_cap)


# --------------------------------------------------------------------------
# integrals with prescribed denominators


def _denominator_member(an: Analysis, F: MultiPoly, G: MultiPoly, support: list[MultiPoly]):
    """A member of the pencil spanned by F, G that is a product of powers of ``support``."""
    for exps in _exponent_vectors(an, support, G):
        h = an.surface.const(1)
        for f, e in zip(support, exps):
            h = h * f**e
        if _in_span(h, F, G):
            return h
    return None


def _exponent_vectors(an, support, G):
    from .algebra import bidegree, degree_of

    if an.surface.kind == "projective":
        target = degree_of(G)
        degs = [degree_of(f) for f in support]
        caps = [target // d for d in degs]
        for exps in itertools.product(*(range(c + 1) for c in caps)):
            if sum(e * d for e, d in zip(exps, degs)) == target:
                yield exps
    else:
        target = bidegree(G)
        degs = [bidegree(f) for f in support]
        cap = max(abs(target[0]), abs(target[1])) + sum(abs(x) for d in degs for x in d) + 1
        for exps in itertools.product(*(range(cap + 1) for _ in support)):
            if tuple(sum(e * d[i] for e, d in zip(exps, degs)) for i in range(2)) == tuple(target):
                yield exps


def _vectors(*polys):
    monos = sorted({e for p in polys for e, _ in p.terms()})
    out = []
    for p in polys:
        d = dict(p.terms())
        out.append([Fraction(int(d[m].p), int(d[m].q)) if m in d else Fraction(0) for m in monos])
    return out


def _in_span(h: MultiPoly, F: MultiPoly, G: MultiPoly) -> bool:
    return _rank(_vectors(F, G, h)) == 2


def _proportional(a: MultiPoly, b: MultiPoly) -> bool:
    return _rank(_vectors(a, b)) == 1


def algorithm3_restricted(an: Analysis, denominators: list[MultiPoly], g: int, include_infinity: bool = True):
    """Integrals of genus g of the form f / (f_1^a_1 ... f_r^a_r).

    ``denominators`` are curves on the surface.  On F_delta the curves
    X0 = 0 and Y0 = 0 are added to the candidates when ``include_infinity``.
    """
    for f in denominators:
        if not is_invariant_curve(an.form, f):
            return NoIntegralOfGenus(g, f"{f} = 0 is not invariant, so it cannot be a pole")
    cands = list(denominators)
    if include_infinity and an.surface.kind == "hirzebruch":
        X0, _, Y0, _ = an.surface.gens()
        for f in (X0, Y0):
            if f not in cands and is_invariant_curve(an.form, f):
                cands.append(f)
    if not an.config.points:
        return empty_config_shortcut(an, g)
    sigma = greedy_restricted(an.model, an.config, an.KZ, an.KF, cands)
    res = algorithm3(an, sigma, g, restricted_step4=True)
    if not isinstance(res, FirstIntegral):
        return res
    den = _denominator_member(an, res.F, res.G, cands)
    if den is None:
        return NoIntegralOfGenus(g, "the integral has no denominator supported on the given curves")
    num = res.G if _proportional(res.F, den) else res.F
    res.F, res.G = num, den
    res.affine = _affine_pair(an, num, den)
    return res


def polynomial_first_integral(A: MultiPoly, B: MultiPoly, surface: GradingContext, g: int, **opts):
    """Polynomial first integral of genus g of A dx + B dy, if there is one.

    Returns the verdict; on success ``affine`` holds (p, 1) with p the
    polynomial, normalized to vanish at the origin and with primitive
    integer coefficients.
    """
    an = opts.pop("analysis", None) or analyze(A, B, surface, **opts)
    if an.surface.kind == "projective":
        Z = an.surface.gens()[2]
        if not is_invariant_curve(an.form, Z):
            return NoIntegralOfGenus(g, "the line at infinity is not invariant")
        res = algorithm3_restricted(an, [Z], g)
    else:
        res = algorithm3_restricted(an, [], g)
    if not isinstance(res, FirstIntegral):
        return res
    num, den = res.affine
    if not den.is_constant():
        return NoIntegralOfGenus(g, "the denominator is not constant on the affine chart")
    p = num * (1 / den.leading_coefficient())
    const = dict(p.terms()).get((0, 0), 0)
    p = p - AFFINE.const(const)
    res.affine = (p.primitive(), AFFINE.const(1))
    return res


# --------------------------------------------------------------------------
# no dicritical points


def empty_config_shortcut(an: Analysis, g: int | None = None):
    """Foliations without dicritical points: only the rulings of F_delta are integrable."""
    if an.surface.kind != "hirzebruch":
        return NotIntegrable("no dicritical singularity on P^2")
    X0, X1, Y0, Y1 = an.surface.gens()
    options = [(X1, X0)]
    if an.surface.delta == 0:
        options.append((Y1, Y0))
    for F, G in options:
        if verify_first_integral(an.form, F, G):
            if g is not None and g != 0:
                return NoIntegralOfGenus(g, "the fibers of a ruling have genus 0")
            return FirstIntegral(F, G, 0, 1, None, _affine_pair(an, F, G))
    return NotIntegrable("no dicritical singularity and the foliation is not a ruling")
