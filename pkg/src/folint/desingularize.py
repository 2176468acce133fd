"""Reduction of singularities of a foliation on P^2 or F_delta.

The surface is covered by affine charts.  Singular points are found chart by
chart by elimination, grouped into Galois orbits over Q, and every orbit is
represented by one point with coordinates in a number field.  Ordinary
singular points are blown up recursively; simple ones are left alone.

Local computations happen in Q[x, y, t] modulo the minimal polynomial m(t)
of the field of the point, where x, y are centred local coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import flint

from .algebra import AFFINE, CHARTS, MultiPoly, OneForm, restrict_poly, restrict_to_chart
from .fields import (
    QQ,
    Embedding,
    FieldTowerTooDeep,
    NumberField,
    Scalar,
    factor_over,
    extend_by_root,
    identity_embedding,
    upoly_gcd,
    upoly_trim,
)

fmpq = flint.fmpq
fmpq_poly = flint.fmpq_poly

LOCAL = flint.fmpq_mpoly_ctx.get(("x", "y", "t"), "degrevlex")
_X, _Y, _T = LOCAL.gens()

__all__ = [
    "FieldTowerTooDeep",
    "PositiveDimensionalSingularLocus",
    "BlowupBudgetExceeded",
    "Kind",
    "SurfacePoint",
    "InfNearPoint",
    "DicriticalConfig",
    "singular_points",
    "local_multiplicity",
    "classify",
    "blowup_foliation",
    "dicritical_reduction",
    "curve_multiplicities",
    "cluster",
]


class PositiveDimensionalSingularLocus(ArithmeticError):
    """The coefficients of a local 1-form share a non-constant factor."""


class BlowupBudgetExceeded(RuntimeError):
    pass


class Kind(Enum):
    SIMPLE = "simple"
    DICRITICAL = "terminal-dicritical"
    ORDINARY = "ordinary"


# --------------------------------------------------------------------------
# local polynomial arithmetic over a number field


@lru_cache(maxsize=None)
def _minpoly_mpoly(k: NumberField):
    return LOCAL.from_dict({(0, 0, e): c for e, c in enumerate(k.minpoly.coeffs()) if c != 0})


def _reduce(p, k: NumberField):
    if k.is_rational:
        return p
    return divmod(p, _minpoly_mpoly(k))[1]


def _const(a: fmpq_poly):
    """A field element as a polynomial in t."""
    return LOCAL.from_dict({(0, 0, e): c for e, c in enumerate(a.coeffs()) if c != 0})


def _embed(p, emb: Embedding):
    if emb.source == emb.target:
        return p
    if emb.source.is_rational:
        return p
    return _reduce(p.compose(_X, _Y, _const(emb.image_of_gen)), emb.target)


def _from_affine(p: MultiPoly):
    return p.poly.compose(_X, _Y, ctx=LOCAL)


def _translate(p, k: NumberField, a: fmpq_poly, b: fmpq_poly):
    if a.is_zero() and b.is_zero():
        return p
    return _reduce(p.compose(_X + _const(a), _Y + _const(b), _T), k)


def _order(p) -> int | None:
    """Total (x, y)-degree of the lowest-order part; None for zero."""
    if p.is_zero():
        return None
    return int(min(e[0] + e[1] for e in p.monoms()))


def _homogeneous_part(p, deg: int):
    return LOCAL.from_dict({e: c for e, c in zip(p.monoms(), p.coeffs()) if e[0] + e[1] == deg})


def _coefficient(p, i: int, j: int) -> fmpq_poly:
    """Coefficient of x^i y^j as an element of the field (a polynomial in t)."""
    cs: dict[int, fmpq] = {}
    for e, c in zip(p.monoms(), p.coeffs()):
        if e[0] == i and e[1] == j:
            cs[e[2]] = c
    if not cs:
        return fmpq_poly([])
    return fmpq_poly([cs.get(n, fmpq(0)) for n in range(max(cs) + 1)])


def _univariate(p, var: int) -> list[fmpq_poly]:
    """p restricted to the other axis = 0, as a list of field coefficients in ``var``."""
    other = 1 - var
    cs: dict[int, dict[int, fmpq]] = {}
    for e, c in zip(p.monoms(), p.coeffs()):
        if e[other]:
            continue
        cs.setdefault(e[var], {})[e[2]] = c
    if not cs:
        return []
    out = []
    for n in range(max(cs) + 1):
        d = cs.get(n, {})
        out.append(fmpq_poly([d.get(m, fmpq(0)) for m in range(max(d) + 1)]) if d else fmpq_poly([]))
    return upoly_trim(out)


def _divide_monomial(p, ex: int, ey: int):
    if ex == 0 and ey == 0:
        return p
    return LOCAL.from_dict({(e[0] - ex, e[1] - ey, e[2]): c for e, c in zip(p.monoms(), p.coeffs())})


def _min_exp(polys, var: int) -> int:
    return min((min(e[var] for e in p.monoms()) for p in polys if not p.is_zero()), default=0)


@dataclass(frozen=True)
class LocalForm:
    """P dx + Q dy in centred local coordinates, coefficients in ``field``."""

    field: NumberField
    P: object
    Q: object

    @classmethod
    def from_affine(cls, omega: OneForm) -> "LocalForm":
        A, B = omega.coeffs
        return cls(QQ, _from_affine(A), _from_affine(B))

    def embed(self, emb: Embedding) -> "LocalForm":
        return LocalForm(emb.target, _embed(self.P, emb), _embed(self.Q, emb))

    def translate(self, a: fmpq_poly, b: fmpq_poly) -> "LocalForm":
        k = self.field
        return LocalForm(k, _translate(self.P, k, a, b), _translate(self.Q, k, a, b))

    def multiplicity(self) -> int:
        orders = [o for o in (_order(self.P), _order(self.Q)) if o is not None]
        return min(orders)


# --------------------------------------------------------------------------
# classification and blowup


def local_multiplicity(omega: OneForm | LocalForm, point=None) -> int:
    """nu of the foliation at ``point`` (default: the origin); 0 at regular points."""
    lf = omega if isinstance(omega, LocalForm) else LocalForm.from_affine(omega)
    if point is not None:
        if isinstance(point, SurfacePoint):
            a, b = point.coords
            lf = lf.embed(Embedding(QQ, a.field, fmpq_poly([]))) if lf.field.is_rational else lf
            lf = lf.translate(a.value, b.value)
        else:
            a, b = point
            lf = lf.translate(fmpq_poly([fmpq(a)]), fmpq_poly([fmpq(b)]))
    return lf.multiplicity()


def _is_positive_rational_ratio(k: NumberField, tr: fmpq_poly, det: fmpq_poly) -> bool:
    """Whether the eigenvalue quotient lambda1/lambda2 is a positive rational."""
    # q = tr^2/det = r + 2 + 1/r with r the quotient
    q = k.div(k.mul(tr, tr), det)
    if not k.is_rational_element(q):
        return False
    q = k.rational_value(q)
    if q < 4:
        return False
    disc = q * (q - 4)
    return _is_rational_square(disc)


def _is_rational_square(v: fmpq) -> bool:
    if v < 0:
        return False
    p, q = int(v.p), int(v.q)
    return _isqrt_exact(p) is not None and _isqrt_exact(q) is not None


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def classify(omega: OneForm | LocalForm) -> Kind:
    """Simple, terminal dicritical or other ordinary singularity at the origin."""
    lf = omega if isinstance(omega, LocalForm) else LocalForm.from_affine(omega)
    k = lf.field
    m = lf.multiplicity()
    if m == 0:
        raise ValueError("the origin is not a singular point")
    am = _homogeneous_part(lf.P, m)
    bm = _homogeneous_part(lf.Q, m)
    if _reduce(_X * am + _Y * bm, k).is_zero():
        return Kind.DICRITICAL
    if m == 1:
        ax, ay = _coefficient(lf.P, 1, 0), _coefficient(lf.P, 0, 1)
        bx, by = _coefficient(lf.Q, 1, 0), _coefficient(lf.Q, 0, 1)
        tr = k.reduce(bx - ay)
        det = k.reduce(k.mul(by, ax) - k.mul(bx, ay))
        if not det.is_zero():
            if not _is_positive_rational_ratio(k, tr, det):
                return Kind.SIMPLE
        elif not tr.is_zero():
            return Kind.SIMPLE
    return Kind.ORDINARY


def _blowup_chart1(lf: LocalForm) -> LocalForm:
    # (x, y) -> (x, x*y); exceptional divisor x = 0
    k = lf.field
    P = lf.P.compose(_X, _X * _Y, _T)
    Q = lf.Q.compose(_X, _X * _Y, _T)
    P1 = P + _Y * Q
    Q1 = _X * Q
    e = _min_exp((P1, Q1), 0)
    return LocalForm(k, _reduce(_divide_monomial(P1, e, 0), k), _reduce(_divide_monomial(Q1, e, 0), k))


def _blowup_chart2(lf: LocalForm) -> LocalForm:
    # (x, y) -> (x*y, y); exceptional divisor y = 0
    k = lf.field
    P = lf.P.compose(_X * _Y, _Y, _T)
    Q = lf.Q.compose(_X * _Y, _Y, _T)
    P2 = _Y * P
    Q2 = _X * P + Q
    e = _min_exp((P2, Q2), 1)
    return LocalForm(k, _reduce(_divide_monomial(P2, 0, e), k), _reduce(_divide_monomial(Q2, 0, e), k))


def blowup_foliation(omega: OneForm | LocalForm):
    """Strict transforms in both standard charts plus exceptional invariance."""
    lf = omega if isinstance(omega, LocalForm) else LocalForm.from_affine(omega)
    kind = classify(lf)
    c1, c2 = _blowup_chart1(lf), _blowup_chart2(lf)
    if isinstance(omega, OneForm) and lf.field.is_rational:
        c1 = OneForm(AFFINE, (MultiPoly(AFFINE, _to_affine(c1.P)), MultiPoly(AFFINE, _to_affine(c1.Q))))
        c2 = OneForm(AFFINE, (MultiPoly(AFFINE, _to_affine(c2.P)), MultiPoly(AFFINE, _to_affine(c2.Q))))
    return c1, c2, kind is not Kind.DICRITICAL


def _to_affine(p):
    return AFFINE.ring.from_dict({(e[0], e[1]): c for e, c in zip(p.monoms(), p.coeffs())})


# --------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class SurfacePoint:
    """A point (representing a Galois orbit) on S0 or on an iterated blowup.

    ``chart`` is the base chart followed by the blowup chart choices (1 or 2);
    ``coords`` are the coordinates of the point in the last chart.
    """

    chart: tuple
    coords: tuple[Scalar, Scalar]
    field: NumberField
    orbit_size: int


@dataclass
class _Orbit:
    index: int
    field: NumberField
    base_chart: str
    base: tuple[fmpq_poly, fmpq_poly]
    steps: tuple  # ((chart, c), ...) with c in ``field``
    form: LocalForm
    parent: int | None
    level: int
    axes: dict
    kind: Kind = Kind.ORDINARY
    nu: int = 0
    children: list = field(default_factory=list)

    @property
    def eps(self) -> int:
        return 1 if self.kind is Kind.DICRITICAL else 0

    @property
    def size(self) -> int:
        return self.field.degree

    def point(self) -> SurfacePoint:
        k = self.field
        if not self.steps:
            coords = (Scalar(k, self.base[0]), Scalar(k, self.base[1]))
        else:
            c = self.steps[-1][1]
            coords = (Scalar(k, fmpq_poly([])), Scalar(k, c))
        chart = (self.base_chart,) + tuple(s[0] for s in self.steps)
        return SurfacePoint(chart, coords, k, k.degree)


@dataclass(frozen=True)
class InfNearPoint:
    id: int
    parent: int | None
    level: int
    point: SurfacePoint
    nu: int
    eps: int
    proximate_to: frozenset
    orbit: int
    copy: int

    @property
    def satellite(self) -> bool:
        return len(self.proximate_to) >= 2

    @property
    def label(self) -> str:
        return f"p{self.id + 1}"


@dataclass
class DicriticalConfig:
    """Dicritical configuration with orbits expanded into explicit points.

    ``points`` are in parent-before-child order (depth first).  ``orbits``
    keeps one representative per Galois orbit for exact computations; every
    explicit point refers back to its orbit.
    """

    surface: object  # GradingContext
    points: list[InfNearPoint]
    orbits: list[_Orbit]
    singular_orbits: list[_Orbit]  # the whole singular configuration
    blowups: int

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def terminal_ids(self) -> list[int]:
        return [p.id for p in self.points if p.eps == 1]

    @property
    def d(self) -> int:
        return len(self.terminal_ids)

    @property
    def proximity_matrix(self) -> list[list[bool]]:
        n = self.n
        return [[j in self.points[i].proximate_to for j in range(n)] for i in range(n)]

    def proximate_points(self, i: int) -> list[int]:
        """Indices r with p_r -> p_i."""
        return [p.id for p in self.points if i in p.proximate_to]

    def orbit_points(self, orbit_index: int) -> list[int]:
        return [p.id for p in self.points if p.orbit == orbit_index]

    def edges(self) -> list[tuple[int, int]]:
        return [(j, p.id) for p in self.points for j in sorted(p.proximate_to)]


# --------------------------------------------------------------------------
# singular points on S0


def _roots_of_univariate(k: NumberField, polys: list, max_depth: int):
    """Roots of gcd(polys) over k, one representative per irreducible factor."""
    g: list = []
    for p in polys:
        g = upoly_gcd(k, g, p) if g else upoly_trim(p)
        if not g:
            continue
    if not g:
        raise PositiveDimensionalSingularLocus("coefficients vanish along a line")
    if len(g) <= 1:
        return []
    from .fields import upoly_monic

    g = upoly_monic(k, g)
    out = []
    for fac in _sorted_factors(factor_over(k, g)):
        big, emb, root = extend_by_root(k, fac, max_depth)
        out.append((big, emb, root))
    return out


def _sorted_factors(factors):
    def key(f):
        return (len(f), [tuple(c.coeffs()) for c in f])

    return sorted(factors, key=key)


def _affine_singular_points(lf: LocalForm, where: str, max_depth: int):
    """Common zeros of P, Q (over Q) restricted to ``where``.

    ``where`` is "all", "x=0", "y=0" or "origin".
    Returns a list of (field, x0, y0).
    """
    P, Q = lf.P, lf.Q
    if where == "origin":
        if _coefficient(P, 0, 0).is_zero() and _coefficient(Q, 0, 0).is_zero():
            return [(QQ, fmpq_poly([]), fmpq_poly([]))]
        return []
    if where == "x=0":
        roots = _roots_of_univariate(QQ, [_univariate(P, 1), _univariate(Q, 1)], max_depth)
        return [(k, fmpq_poly([]), r) for k, _, r in roots]
    if where == "y=0":
        roots = _roots_of_univariate(QQ, [_univariate(P, 0), _univariate(Q, 0)], max_depth)
        return [(k, r, fmpq_poly([])) for k, _, r in roots]
    # all points: eliminate y
    if P.is_zero() or Q.is_zero():
        other = Q if P.is_zero() else P
        if other.is_constant():
            return []
        raise PositiveDimensionalSingularLocus("a coefficient vanishes identically")
    res = P.resultant(Q, "y")
    if res.is_zero():
        raise PositiveDimensionalSingularLocus("coefficients share a factor")
    rx = _univariate(res, 0)
    if len(rx) <= 1:
        return []
    rpoly = fmpq_poly([QQ.rational_value(c) for c in rx])
    out = []
    _, parts = rpoly.factor()
    parts = sorted((f for f, _ in parts), key=lambda f: (f.degree(), tuple(f.coeffs())))
    for r in parts:
        r = r / r.leading_coefficient()
        if r.degree() == 1:
            k1, x0 = QQ, fmpq_poly([-r.coeffs()[0]])
        else:
            if max_depth < 1:
                raise FieldTowerTooDeep("extension depth 1 exceeds cap 0")
            k1 = NumberField(r, depth=1)
            x0 = k1.gen()
        Px = _univariate(_translate(P, k1, x0, fmpq_poly([])) if not k1.is_rational else _translate(P, k1, x0, fmpq_poly([])), 1)
        Qx = _univariate(_translate(Q, k1, x0, fmpq_poly([])), 1)
        for big, emb, root in _roots_of_univariate(k1, [Px, Qx], max_depth):
            out.append((big, emb(x0), root))
    return out


def _base_cover(context):
    if context.kind == "projective":
        return [("U_Z", "all"), ("U_Y", "y=0"), ("U_X", "origin")]
    if context.kind == "hirzebruch":
        return [("U00", "all"), ("U10", "x=0"), ("U01", "y=0"), ("U11", "origin")]
    return [(None, "all")]


def _chart_form(Omega: OneForm, chart):
    if chart is None:
        return LocalForm.from_affine(Omega)
    return LocalForm.from_affine(restrict_to_chart(Omega, chart))


def singular_points(Omega: OneForm, max_depth: int = 2) -> list[SurfacePoint]:
    """Singular points of a reduced form, one per Galois orbit, over a chart cover."""
    out = []
    for chart, where in _base_cover(Omega.context):
        lf = _chart_form(Omega, chart)
        for k, a, b in _affine_singular_points(lf, where, max_depth):
            out.append(SurfacePoint((chart,), (Scalar(k, a), Scalar(k, b)), k, k.degree))
    return out


# --------------------------------------------------------------------------
# reduction


def dicritical_reduction(Omega: OneForm, max_depth: int = 2, blowup_budget: int = 500) -> DicriticalConfig:
    """Blow up ordinary singularities until only simple ones remain.

    Returns the dicritical configuration: the points lying below some
    infinitely near terminal dicritical singularity.
    """
    orbits: list[_Orbit] = []
    blowups = 0

    def visit(o: _Orbit):
        nonlocal blowups
        o.nu = o.form.multiplicity()
        o.kind = classify(o.form)
        orbits.append(o)
        o.index = len(orbits) - 1
        blowups += 1
        if blowups > blowup_budget:
            raise BlowupBudgetExceeded(f"more than {blowup_budget} blowups")
        k = o.field
        c1 = _blowup_chart1(o.form)
        c2 = _blowup_chart2(o.form)
        kids = []
        for big, emb, c in _roots_of_univariate(k, [_univariate(c1.P, 1), _univariate(c1.Q, 1)], max_depth):
            form = c1.embed(emb).translate(fmpq_poly([]), c)
            axes = {"x": o.index}
            if c.is_zero() and "y" in o.axes:
                axes["y"] = o.axes["y"]
            kids.append((big, emb, (1, c), form, axes))
        if _coefficient(c2.P, 0, 0).is_zero() and _coefficient(c2.Q, 0, 0).is_zero():
            axes = {"y": o.index}
            if "x" in o.axes:
                axes["x"] = o.axes["x"]
            kids.append((k, identity_embedding(k), (2, fmpq_poly([])), c2, axes))
        for big, emb, step, form, axes in kids:
            if form.multiplicity() == 0:
                continue
            if classify(form) is Kind.SIMPLE:
                continue
            child = _Orbit(
                index=-1,
                field=big,
                base_chart=o.base_chart,
                base=(emb(o.base[0]), emb(o.base[1])),
                steps=tuple((s, emb(c)) for s, c in o.steps) + (step,),
                form=form,
                parent=o.index,
                level=o.level + 1,
                axes=axes,
            )
            visit(child)
            o.children.append(child.index)

    for chart, where in _base_cover(Omega.context):
        lf = _chart_form(Omega, chart)
        for k, a, b in _affine_singular_points(lf, where, max_depth):
            form = lf.embed(Embedding(QQ, k, fmpq_poly([]))).translate(a, b)
            if classify(form) is Kind.SIMPLE:
                continue
            visit(_Orbit(-1, k, chart, (a, b), (), form, None, 0, {}))

    return _dicritical_part(Omega.context, orbits, blowups)


def _dicritical_part(surface, orbits: list[_Orbit], blowups: int) -> DicriticalConfig:
    keep = set()
    for o in orbits:
        if o.kind is Kind.DICRITICAL:
            cur = o
            while cur is not None and cur.index not in keep:
                keep.add(cur.index)
                cur = orbits[cur.parent] if cur.parent is not None else None
    kept = [o for o in orbits if o.index in keep]

    # explicit points below one copy of each orbit; larger subtrees are
    # numbered first, which reproduces the usual labelling of the examples
    count: dict[int, int] = {}
    for o in reversed(kept):
        count[o.index] = 1 + sum(
            count[c] * (orbits[c].size // o.size) for c in o.children if c in keep
        )

    # expand orbits into explicit conjugate points, depth first
    points: list[InfNearPoint] = []
    ident: dict[tuple[int, int], int] = {}

    def expand(o: _Orbit, copy: int):
        pid = len(points)
        ident[(o.index, copy)] = pid
        prox = set()
        for r in o.axes.values():
            if r in keep:
                ratio = o.size // orbits[r].size
                prox.add(ident[(r, copy // ratio)])
        parent = None
        if o.parent is not None:
            ratio = o.size // orbits[o.parent].size
            parent = ident[(o.parent, copy // ratio)]
        points.append(
            InfNearPoint(pid, parent, o.level, o.point(), o.nu, o.eps, frozenset(prox), o.index, copy)
        )
        for ci in sorted((c for c in o.children if c in keep), key=lambda c: -count[c]):
            child = orbits[ci]
            ratio = child.size // o.size
            for cc in range(copy * ratio, (copy + 1) * ratio):
                expand(child, cc)

    for o in sorted((o for o in kept if o.parent is None), key=lambda o: -count[o.index]):
        for copy in range(o.size):
            expand(o, copy)
    return DicriticalConfig(surface, points, kept, orbits, blowups)



def cluster(surface, spec) -> DicriticalConfig:
    """Configuration of rational points given by hand (for fat point systems).

    ``spec`` lists the points parents first.  A proper point is
    ``(None, chart, (a, b))`` with affine coordinates in ``chart``; a point
    on the exceptional divisor of point ``i`` is ``(i, 1, c)`` for the point
    (0, c) of the first blowup chart (x, xy) or ``(i, 2, None)`` for the
    origin of the second chart (xy, y).
    """
    orbits: list[_Orbit] = []
    for idx, (parent, where, data) in enumerate(spec):
        if parent is None:
            a, b = (fmpq_poly([Fraction(v).numerator]) / Fraction(v).denominator for v in data)
            o = _Orbit(idx, QQ, where, (a, b), (), None, None, 0, {})
        else:
            p = orbits[parent]
            if where == 1:
                c = fmpq_poly([Fraction(data).numerator]) / Fraction(data).denominator
                axes = {"x": p.index}
                if c.is_zero() and "y" in p.axes:
                    axes["y"] = p.axes["y"]
                step = (1, c)
            else:
                axes = {"y": p.index}
                if "x" in p.axes:
                    axes["x"] = p.axes["x"]
                step = (2, fmpq_poly([]))
            o = _Orbit(idx, QQ, p.base_chart, p.base, p.steps + (step,), None, parent, p.level + 1, axes)
            p.children.append(idx)
        o.nu = 1
        orbits.append(o)
    for o in orbits:
        o.kind = Kind.ORDINARY if o.children else Kind.DICRITICAL
    return _dicritical_part(surface, orbits, len(orbits))


# --------------------------------------------------------------------------
# curves


def _orbit_path_transform(f_local, o: _Orbit, mults_needed=None):
    """Strict transforms of a curve along the path of orbit ``o``.

    Returns the list of multiplicities at the base point and at each
    successive infinitely near point of the path.
    """
    k = o.field
    g = _translate(f_local, k, o.base[0], o.base[1])
    out = [_order(g)]
    for chart, c in o.steps:
        m = out[-1]
        if chart == 1:
            g = g.compose(_X, _X * _Y, _T)
            g = _divide_monomial(g, m, 0)
            g = _translate(g, k, fmpq_poly([]), c)
        else:
            g = g.compose(_X * _Y, _Y, _T)
            g = _divide_monomial(g, 0, m)
        out.append(_order(g))
    return out


def curve_multiplicities(f: MultiPoly, config: DicriticalConfig) -> list[int]:
    """Multiplicity of the strict transform of {f = 0} at every configuration point."""
    if f.context != config.surface:
        raise ValueError("curve and configuration live on different surfaces")
    per_orbit = {}
    cache = {}
    for o in config.orbits:
        if o.base_chart not in cache:
            cache[o.base_chart] = _from_affine(restrict_poly(f, o.base_chart)) if o.base_chart else f.poly
        per_orbit[o.index] = _orbit_path_transform(cache[o.base_chart], o)[-1]
    return [per_orbit[p.orbit] for p in config.points]
