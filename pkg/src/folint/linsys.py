"""Complete linear systems on the blown-up surface.

A system is given by a class on S_0 (degree b on P^2, bidegree (a, b) on
F_delta) and a required multiplicity at every configuration point.  Its
sections are the forms of that class whose strict transforms have at least
the required multiplicities; they are the kernel of an exact rational
matrix built from Taylor coefficients at the points, one Galois orbit at a
time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import flint

from .algebra import GradingContext, MultiPoly, polys_gcd, restrict_poly
from .desingularize import (
    LOCAL,
    DicriticalConfig,
    _divide_monomial,
    _from_affine,
    _translate,
    _X,
    _Y,
    _T,
    curve_multiplicities,
)
from .fields import QQ

__all__ = [
    "CurveSystem",
    "LinearSystemBasis",
    "BoundExceeded",
    "monomials",
    "conditions_matrix",
    "complete_linear_system",
    "system_of_class",
    "e_of",
]


class BoundExceeded(RuntimeError):
    """No multiple up to the bound gives a pencil; e(D) stays undecided."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


@dataclass(frozen=True)
class CurveSystem:
    surface: GradingContext
    degree: int | tuple  # b on P^2, (a, b) on F_delta
    mults: tuple

    def is_effective(self) -> bool:
        if self.surface.kind == "projective":
            return self.degree >= 0
        a, b = self.degree
        return b >= 0 and a + self.surface.delta * b >= 0


def monomials(surface: GradingContext, degree) -> list[MultiPoly]:
    """Monomial basis of forms of the given (bi)degree, in a fixed order."""
    gens = surface.gens()
    out = []
    if surface.kind == "projective":
        X, Y, Z = gens
        b = degree
        for i in range(b, -1, -1):
            for j in range(b - i, -1, -1):
                out.append(X**i * Y**j * Z ** (b - i - j))
        return out
    X0, X1, Y0, Y1 = gens
    a, b = degree
    delta = surface.delta
    for l in range(b, -1, -1):
        k = b - l
        s = a + delta * l  # degree in X0, X1
        if s < 0:
            continue
        for j in range(s, -1, -1):
            out.append(X0 ** (s - j) * X1**j * Y0**k * Y1**l)
    return out


def _truncate(p, bound: int):
    if p.is_zero():
        return p
    return LOCAL.from_dict({e: c for e, c in zip(p.monoms(), p.coeffs()) if e[0] + e[1] < bound})


def _drop_below(p, var: int, m: int):
    if m <= 0:
        return p
    kept = {e: c for e, c in zip(p.monoms(), p.coeffs()) if e[var] >= m}
    p = LOCAL.from_dict(kept)
    return _divide_monomial(p, m if var == 0 else 0, m if var == 1 else 0)


def _orbit_mults(config: DicriticalConfig, mults) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in config.points:
        m = max(int(mults[p.id]), 0)
        if out.setdefault(p.orbit, m) != m:
            raise ValueError("multiplicities differ on conjugate points")
    return out


def _needs(config: DicriticalConfig, om: dict[int, int]) -> dict[int, int]:
    """Truncation order at every orbit: terms of this total degree or more never matter."""
    need: dict[int, int] = {}
    for o in reversed(config.orbits):
        n = om[o.index]
        for c in o.children:
            if c in need:
                n = max(n, need[c] + om[o.index]) if need[c] > 0 else n
        need[o.index] = n
    return need


def conditions_matrix(sys: CurveSystem, config: DicriticalConfig, basis=None) -> list[list[Fraction]]:
    """Rational rows, one column per monomial of ``basis`` (default: :func:`monomials`)."""
    if config.surface != sys.surface:
        raise ValueError("system and configuration live on different surfaces")
    basis = basis if basis is not None else monomials(sys.surface, sys.degree)
    om = _orbit_mults(config, sys.mults)
    need = _needs(config, om)
    orbits = {o.index: o for o in config.orbits}
    rows: list[list[Fraction]] = []
    cache: dict = {}
    for o in config.orbits:
        if need[o.index] == 0:
            continue
        # ancestors from the root down to o
        path = []
        cur = o
        while cur is not None:
            path.append(cur)
            cur = orbits.get(cur.parent) if cur.parent is not None else None
        path.reverse()
        k = o.field
        key = o.base_chart
        if key not in cache:
            cache[key] = [_from_affine(restrict_poly(f, key)) if key else f.poly for f in basis]
        polys = cache[key]
        local = []
        for f in polys:
            g = _truncate(_translate(f, k, o.base[0], o.base[1]), need[path[0].index])
            for (chart, c), anc, nxt in zip(o.steps, path, path[1:]):
                m = om[anc.index]
                if chart == 1:
                    g = _drop_below(g.compose(_X, _X * _Y, _T), 0, m)
                    g = _translate(g, k, flint.fmpq_poly([]), c)
                else:
                    g = _drop_below(g.compose(_X * _Y, _Y, _T), 1, m)
                g = _truncate(g, need[nxt.index])
            local.append(g)
        m = om[o.index]
        deg = k.degree
        for i in range(m):
            for j in range(m - i):
                block = [[Fraction(0)] * len(basis) for _ in range(deg)]
                for col, g in enumerate(local):
                    for e, c in zip(g.monoms(), g.coeffs()):
                        if e[0] == i and e[1] == j:
                            block[e[2]][col] += Fraction(int(c.p), int(c.q))
                rows.extend(r for r in block if any(r))
    return rows


def _kernel(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    M = flint.fmpq_mat(len(rows), ncols, [flint.fmpq(v.numerator, v.denominator) for r in rows for v in r])
    R, rank = M.rref()
    pivots = []
    for i in range(rank):
        for j in range(ncols):
            if R[i, j] != 0:
                pivots.append(j)
                break
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pj in enumerate(pivots):
            x = R[i, f]
            v[pj] = -Fraction(int(x.p), int(x.q))
        out.append(v)
    return out


def _echelon(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    if not vectors:
        return []
    n = len(vectors[0])
    M = flint.fmpq_mat(len(vectors), n, [flint.fmpq(v.numerator, v.denominator) for r in vectors for v in r])
    R, rank = M.rref()
    return [[Fraction(int(R[i, j].p), int(R[i, j].q)) for j in range(n)] for i in range(rank)]


def _form(coeffs, basis, surface) -> MultiPoly:
    den = lcm(*(c.denominator for c in coeffs if c != 0))
    f = surface.zero()
    for c, mono in zip(coeffs, basis):
        if c != 0:
            f = f + mono * int(c * den)
    return f.primitive()


@dataclass
class LinearSystemBasis:
    system: CurveSystem
    forms: list
    fixed_part: MultiPoly
    base_point_free: bool | None = None
    notes: list = field(default_factory=list)

    @property
    def proj_dim(self) -> int:
        return len(self.forms) - 1


def _self_intersection(sys: CurveSystem) -> int:
    m2 = sum(max(int(m), 0) ** 2 for m in sys.mults)
    if sys.surface.kind == "projective":
        return sys.degree**2 - m2
    a, b = sys.degree
    return 2 * a * b + sys.surface.delta * b * b - m2


def _pencil_bpf(sys: CurveSystem, config: DicriticalConfig, F: MultiPoly, G: MultiPoly, fixed) -> tuple[bool, str]:
    """Certificate for a pencil with D^2 = 0.

    Two members without common component whose strict transforms have
    exactly the prescribed multiplicities are disjoint on the blown-up
    surface, so the pencil has no base point there.
    """
    if not fixed.is_constant():
        return False, "the pencil has a fixed component"
    if _self_intersection(sys) != 0:
        return False, "self-intersection of the class is not zero"
    want = [max(int(m), 0) for m in sys.mults]
    members = [F, G] + [F + G * c for c in (1, -1, 2, 3, -2)]
    exact = []
    for h in members:
        if curve_multiplicities(h, config) == want:
            exact.append(h)
            if len(exact) == 2:
                return True, "two members with exact multiplicities"
    return False, "could not find two members with exact multiplicities"


def complete_linear_system(sys: CurveSystem, config: DicriticalConfig) -> LinearSystemBasis:
    if not sys.is_effective():
        return LinearSystemBasis(sys, [], sys.surface.zero(), None, ["class is not effective"])
    basis = monomials(sys.surface, sys.degree)
    if not basis:
        return LinearSystemBasis(sys, [], sys.surface.zero(), None, ["no forms of this degree"])
    rows = conditions_matrix(sys, config, basis)
    ker = _echelon(_kernel(rows, len(basis)))
    forms = [_form(v, basis, sys.surface) for v in ker]
    fixed = polys_gcd(forms) if forms else sys.surface.zero()
    out = LinearSystemBasis(sys, forms, fixed)
    if len(forms) == 2:
        ok, why = _pencil_bpf(sys, config, forms[0], forms[1], fixed)
        out.base_point_free = ok
        out.notes.append(why)
    return out


def system_of_class(cls, surface: GradingContext) -> CurveSystem:
    """CurveSystem of an integral DivisorClass."""
    if not cls.is_integral():
        raise ValueError("class is not integral")
    base = [int(c) for c in cls.base]
    mults = tuple(-int(c) for c in cls.exceptional)
    degree = base[0] if surface.kind == "projective" else (base[0], base[1])
    return CurveSystem(surface, degree, mults)


def e_of(T, config: DicriticalConfig, m_max: int | None = None) -> int:
    """Least m in R(T) with dim |mT| >= 1, searched up to ``m_max``."""
    den = T.denominator()
    if m_max is None:
        m_max = 12 * den
    m = den
    while m <= m_max:
        sys = system_of_class(T * m, config.surface)
        if sys.is_effective():
            if complete_linear_system(sys, config).proj_dim >= 1:
                return m
        m += den
    raise BoundExceeded(f"no multiple m <= {m_max} of T gives a pencil", m_max)
