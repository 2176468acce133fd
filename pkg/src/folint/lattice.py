"""Neron-Severi model of the surface obtained by blowing up a dicritical configuration.

Classes are exact rational vectors in the basis (L*, E_1*, ..., E_n*) on P^2
or (F*, M*, E_1*, ..., E_n*) on F_delta.  On top of the intersection form
this module builds the canonical classes, the set V(Sigma) of classes a
first integral must be orthogonal to, and the affine family T_alpha of
candidate normalized characteristic divisors together with its maximizer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import isqrt

import flint

from .algebra import MultiPoly, bidegree, degree_of, is_invariant_curve
from .desingularize import DicriticalConfig, curve_multiplicities

__all__ = [
    "NSModel",
    "DivisorClass",
    "NotInvariant",
    "TooManySolutions",
    "InconsistentSystem",
    "VSigma",
    "TAlphaFamily",
    "Surd",
    "strict_transform_exceptional",
    "lambda_matrix",
    "hat_basis",
    "canonical_classes",
    "h_values",
    "curve_class",
    "build_V_sigma",
    "t_alpha_family",
    "ellipsoid_extrema",
    "coordinate_bounds",
    "greedy_restricted",
]


class NotInvariant(ValueError):
    pass


class TooManySolutions(ValueError):
    """Too many independent invariant curves: the foliation has no rational first integral."""


class InconsistentSystem(ArithmeticError):
    pass


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def _fmpq(x: Fraction) -> flint.fmpq:
    return flint.fmpq(x.numerator, x.denominator)


def _mat(rows) -> flint.fmpq_mat:
    rows = [list(r) for r in rows]
    if not rows:
        return flint.fmpq_mat(0, 0)
    return flint.fmpq_mat(len(rows), len(rows[0]), [_fmpq(_q(v)) for r in rows for v in r])


def _rows(m: flint.fmpq_mat) -> list[list[Fraction]]:
    return [[_q(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())]


def _rank(rows) -> int:
    rows = [r for r in rows]
    if not rows:
        return 0
    return _mat(rows).rank()


# --------------------------------------------------------------------------
# model and classes


@dataclass(frozen=True)
class NSModel:
    kind: str  # "projective" or "hirzebruch"
    delta: int
    n: int

    @classmethod
    def of(cls, config: DicriticalConfig) -> "NSModel":
        s = config.surface
        return cls(s.kind, s.delta or 0, config.n)

    @property
    def base_rank(self) -> int:
        return 1 if self.kind == "projective" else 2

    @property
    def dim(self) -> int:
        return self.base_rank + self.n

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (Fraction(0),) * self.dim)

    def basis(self, i: int) -> "DivisorClass":
        c = [Fraction(0)] * self.dim
        c[i] = Fraction(1)
        return DivisorClass(self, tuple(c))

    def L(self):
        assert self.kind == "projective"
        return self.basis(0)

    def F(self):
        assert self.kind == "hirzebruch"
        return self.basis(0)

    def M(self):
        assert self.kind == "hirzebruch"
        return self.basis(1)

    def G(self):
        """L* on P^2, F* on F_delta."""
        return self.basis(0)

    def E(self, i: int) -> "DivisorClass":
        return self.basis(self.base_rank + i)

    def make(self, base, exc) -> "DivisorClass":
        return DivisorClass(self, tuple(_q(v) for v in list(base) + list(exc)))

    def intersect(self, u, v) -> Fraction:
        if self.kind == "projective":
            s = u[0] * v[0]
        else:
            s = u[0] * v[1] + u[1] * v[0] + self.delta * u[1] * v[1]
        b = self.base_rank
        return s - sum(u[b + i] * v[b + i] for i in range(self.n))


@dataclass(frozen=True)
class DivisorClass:
    model: NSModel
    coords: tuple

    def _check(self, other):
        if not isinstance(other, DivisorClass) or other.model != self.model:
            raise ValueError("classes live on different models")

    def __add__(self, other):
        self._check(other)
        return DivisorClass(self.model, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return DivisorClass(self.model, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return DivisorClass(self.model, tuple(-a for a in self.coords))

    def __mul__(self, c):
        c = _q(c)
        return DivisorClass(self.model, tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def dot(self, other) -> Fraction:
        self._check(other)
        return self.model.intersect(self.coords, other.coords)

    def __matmul__(self, other):
        return self.dot(other)

    @property
    def base(self) -> tuple:
        return self.coords[: self.model.base_rank]

    @property
    def exceptional(self) -> tuple:
        return self.coords[self.model.base_rank :]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def denominator(self) -> int:
        from math import lcm

        return lcm(*(c.denominator for c in self.coords)) if self.coords else 1

    def __str__(self):
        names = ["L*"] if self.model.kind == "projective" else ["F*", "M*"]
        names += [f"E{i + 1}*" for i in range(self.model.n)]
        parts = []
        for c, nm in zip(self.coords, names):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            coef = "" if a == 1 else f"{a}*"
            parts.append(f"{sign} {coef}{nm}")
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


# --------------------------------------------------------------------------
# exceptional data


def strict_transform_exceptional(model: NSModel, config: DicriticalConfig, i: int) -> DivisorClass:
    """E~_i = E_i* minus the E_r* of the points proximate to p_i."""
    c = model.E(i)
    for r in config.proximate_points(i):
        c = c - model.E(r)
    return c


def lambda_matrix(config: DicriticalConfig) -> list[list[int]]:
    """n x d matrix: column j holds the coefficients of E-hat for the j-th terminal point.

    a_rr = 1 and, going down the complete chain of p_r, a_ir is the sum of
    a_lr over the points p_l of the chain proximate to p_i.
    """
    n = config.n
    cols = []
    for r in config.terminal_ids:
        chain = []
        cur = r
        while cur is not None:
            chain.append(cur)
            cur = config.points[cur].parent
        a = [0] * n
        a[r] = 1
        for i in chain[1:]:
            a[i] = sum(a[l] for l in chain if i in config.points[l].proximate_to)
        cols.append(a)
    return [[cols[j][i] for j in range(len(cols))] for i in range(n)]


def hat_basis(model: NSModel, config: DicriticalConfig):
    lam = lambda_matrix(config)
    hats = []
    for j in range(config.d):
        c = model.zero()
        for i in range(config.n):
            if lam[i][j]:
                c = c + model.E(i) * lam[i][j]
        hats.append(c)
    return hats, lam


def canonical_classes(model: NSModel, config: DicriticalConfig, canonical_degrees):
    """(K_Z, K_F~) on the blown-up surface."""
    ones = [Fraction(1)] * config.n
    excess = [Fraction(-(p.nu + p.eps - 1)) for p in config.points]
    if model.kind == "projective":
        KZ = model.make([-3], ones)
        KF = model.make([canonical_degrees], excess)
    else:
        d1, d2 = canonical_degrees
        KZ = model.make([model.delta - 2, -2], ones)
        KF = model.make([d1, d2], excess)
    return KZ, KF


def h_values(model: NSModel, config: DicriticalConfig, canonical_degrees, lam=None) -> list[Fraction]:
    d = config.d
    if model.kind == "projective":
        return [Fraction(1)] + [Fraction(0)] * d
    lam = lam if lam is not None else lambda_matrix(config)
    d1, d2 = canonical_degrees
    if d2 <= -2:
        raise ValueError("canonical bidegree must have d2 > -2")
    h0 = Fraction(-(d1 - model.delta + 2), d2 + 2) - model.delta
    hs = []
    for j in range(d):
        s = sum((p.nu + p.eps) * lam[p.id][j] for p in config.points)
        hs.append(Fraction(s, d2 + 2))
    return [h0] + hs


def curve_class(model: NSModel, config: DicriticalConfig, f: MultiPoly) -> DivisorClass:
    """Class of the strict transform of {f = 0}."""
    mults = curve_multiplicities(f, config)
    if model.kind == "projective":
        base = [degree_of(f)]
    else:
        a, b = bidegree(f)
        base = [a, b]
    return model.make(base, [-m for m in mults])


# --------------------------------------------------------------------------
# V(Sigma)


@dataclass
class VSigma:
    model: NSModel
    curves: list  # MultiPoly
    curve_classes: list  # DivisorClass
    k_diff: DivisorClass
    non_dicritical: list  # DivisorClass of E~_i, E_i invariant
    independent: bool
    restricted: bool

    @property
    def classes(self) -> list:
        return list(self.curve_classes) + [self.k_diff] + list(self.non_dicritical)

    @property
    def sigma(self) -> int:
        return len(self.curves)


def build_V_sigma(model, config, KZ, KF, curves, omega=None, check_bound=True) -> VSigma:
    if omega is not None:
        for f in curves:
            if not is_invariant_curve(omega, f):
                raise NotInvariant(f"{f} is not invariant")
    classes = [curve_class(model, config, f) for f in curves]
    nd = [strict_transform_exceptional(model, config, p.id) for p in config.points if p.eps == 0]
    k_diff = KF - KZ
    vs = VSigma(model, list(curves), classes, k_diff, nd, False, False)
    rows = [c.coords for c in vs.classes]
    r = _rank(rows)
    vs.independent = r == len(rows)
    vs.restricted = vs.independent and _rank(rows + [model.G().coords]) == r + 1
    if check_bound and vs.independent:
        bound = config.d - 1 if model.kind == "projective" else config.d
        if vs.sigma > bound:
            raise TooManySolutions(f"{vs.sigma} independent invariant curves but at most {bound} allowed")
    return vs


def greedy_restricted(model, config, KZ, KF, candidates) -> list:
    """Greedy maximal restricted subset of ``candidates`` (in the given order)."""
    chosen = []
    for f in candidates:
        trial = chosen + [f]
        vs = build_V_sigma(model, config, KZ, KF, trial, check_bound=False)
        if vs.restricted:
            chosen = trial
    return chosen


# --------------------------------------------------------------------------
# T_alpha family


@dataclass
class TAlphaFamily:
    model: NSModel
    ell: int
    Lambda: list  # n rows, ell+1 columns
    H: list  # H_0..H_ell
    mu: list  # mu[k][s - ell] for s dependent, k = 0..ell
    dicritical_order: list  # point ids of terminal points, free first
    lam: list
    h: list
    alpha_sigma: tuple

    # T_alpha = v0 + sum_k alpha_k u_k
    @property
    def v0(self) -> DivisorClass:
        m = self.model
        exc = [-row[0] for row in self.Lambda]
        base = [1] if m.kind == "projective" else [self.H[0], 1]
        return m.make(base, exc)

    def u(self, k: int) -> DivisorClass:
        m = self.model
        exc = [-row[k] for row in self.Lambda]
        base = [0] if m.kind == "projective" else [self.H[k], 0]
        return m.make(base, exc)

    def t_alpha(self, alpha) -> DivisorClass:
        alpha = [_q(a) for a in alpha]
        if len(alpha) != self.ell:
            raise ValueError(f"expected {self.ell} parameters")
        c = self.v0
        for k, a in enumerate(alpha, start=1):
            c = c + self.u(k) * a
        return c

    def gram(self) -> list[list[Fraction]]:
        return self._gram

    @cached_property
    def _gram(self):
        L = self.Lambda
        return [[sum(r[k] * r[kk] for r in L) for kk in range(1, self.ell + 1)] for k in range(1, self.ell + 1)]

    def linear_terms(self) -> list[Fraction]:
        """c_k = sum_i Lambda_i0 Lambda_ik."""
        return self._linear

    @cached_property
    def _linear(self):
        return [sum(r[0] * r[k] for r in self.Lambda) for k in range(1, self.ell + 1)]

    def t_alpha_sq(self, alpha) -> Fraction:
        """Self-intersection of T_alpha through the closed quadratic formula."""
        alpha = [_q(a) for a in alpha]
        G = self.gram()
        c = self.linear_terms()
        quad = sum(G[k][kk] * alpha[k] * alpha[kk] for k in range(self.ell) for kk in range(self.ell))
        c00 = self._c00
        if self.model.kind == "projective":
            return -quad - 2 * sum(ck * a for ck, a in zip(c, alpha)) - c00 + 1
        H = self.H
        lin = sum((2 * H[k + 1] - 2 * c[k]) * alpha[k] for k in range(self.ell))
        return -quad + lin + 2 * H[0] - c00 + self.model.delta

    @cached_property
    def _c00(self):
        return sum(r[0] * r[0] for r in self.Lambda)

    def alpha_for_terminals(self, alpha) -> dict:
        """Values of all d parameters, keyed by terminal point id."""
        alpha = [_q(a) for a in alpha]
        out = dict(zip(self.dicritical_order[: self.ell], alpha))
        for idx, pid in enumerate(self.dicritical_order[self.ell :]):
            out[pid] = self.mu[0][idx] + sum(self.mu[k][idx] * alpha[k - 1] for k in range(1, self.ell + 1))
        return out

    @property
    def t_sigma(self) -> DivisorClass:
        return self.t_alpha(self.alpha_sigma)

    @property
    def t_sigma_sq(self) -> Fraction:
        return self.t_alpha_sq(self.alpha_sigma)

    def gram_minors(self) -> list[Fraction]:
        G = self.gram()
        out = []
        for k in range(1, self.ell + 1):
            out.append(_q(_mat([row[:k] for row in G[:k]]).det()))
        return out


def _lex_first_free(A: list[list[Fraction]], d: int) -> tuple[list[int], list[int]]:
    """Split the d columns into free and dependent ones.

    The free set is the lexicographically first one whose complement has a
    nonsingular block.  That complement is the greedy basis taken from the
    last column backwards, which one rref of the reversed matrix yields.
    """
    if not A:
        return list(range(d)), []
    rev = [list(reversed(r)) for r in A]
    R, rank = _mat(rev).rref()
    if rank < len(A):
        raise InconsistentSystem("the equations defining V(Sigma)-perp are dependent")
    pivots = []
    for i in range(rank):
        for j in range(d):
            if R[i, j] != 0:
                pivots.append(d - 1 - j)
                break
    dep = sorted(pivots)
    free = [j for j in range(d) if j not in dep]
    return free, dep


def t_alpha_family(model: NSModel, config: DicriticalConfig, vs: VSigma, canonical_degrees) -> TAlphaFamily:
    if not vs.restricted:
        raise InconsistentSystem("Sigma is not a restricted set of independent solutions")
    d = config.d
    lam = lambda_matrix(config)
    h = h_values(model, config, canonical_degrees, lam)
    # v(alpha) = base + sum_j alpha_j w_j
    if model.kind == "projective":
        base = model.make([1], [0] * config.n)
        w = [model.make([0], [-lam[i][j] for i in range(config.n)]) for j in range(d)]
        eqs = [vs.k_diff] + list(vs.curve_classes)
    else:
        base = model.make([h[0], 1], [0] * config.n)
        w = [model.make([h[j + 1], 0], [-lam[i][j] for i in range(config.n)]) for j in range(d)]
        eqs = list(vs.curve_classes)
    A = [[a.dot(wj) for wj in w] for a in eqs]
    rhs = [-a.dot(base) for a in eqs]
    ell = d - len(eqs)
    free, dep = _lex_first_free(A, d)
    assert len(free) == ell
    # alpha_dep = B^-1 (rhs - A_free alpha_free)
    mu = [[Fraction(0)] * len(dep) for _ in range(ell + 1)]
    if dep:
        B = _mat([[row[s] for s in dep] for row in A])
        Binv = B.inv()
        sol0 = _rows(Binv * _mat([[r] for r in rhs]))
        for idx in range(len(dep)):
            mu[0][idx] = sol0[idx][0]
        if ell:
            Af = _mat([[row[f] for f in free] for row in A])
            S = _rows(Binv * Af)
            for k in range(1, ell + 1):
                for idx in range(len(dep)):
                    mu[k][idx] = -S[idx][k - 1]
    Lam = []
    for i in range(config.n):
        row = [sum(lam[i][s] * mu[0][idx] for idx, s in enumerate(dep))]
        for k, f in enumerate(free, start=1):
            row.append(lam[i][f] + sum(lam[i][s] * mu[k][idx] for idx, s in enumerate(dep)))
        Lam.append([_q(v) for v in row])
    hh = h  # h[0], h[j+1] for terminal j
    H = [hh[0] + sum(hh[s + 1] * mu[0][idx] for idx, s in enumerate(dep))]
    for k, f in enumerate(free, start=1):
        H.append(hh[f + 1] + sum(hh[s + 1] * mu[k][idx] for idx, s in enumerate(dep)))
    order = [config.terminal_ids[j] for j in free + dep]
    fam = TAlphaFamily(model, ell, Lam, H, mu, order, lam, h, ())
    if ell:
        G = fam.gram()
        c = fam.linear_terms()
        b = [H[k] - c[k - 1] for k in range(1, ell + 1)]
        sol = _rows(_mat(G).solve(_mat([[x] for x in b])))
        fam.alpha_sigma = tuple(r[0] for r in sol)
    return fam


# --------------------------------------------------------------------------
# exact extrema on the zero set of T_alpha^2


@dataclass(frozen=True)
class Surd:
    """The real number a + b*sqrt(r) with a, b, r rational and r >= 0."""

    a: Fraction
    b: Fraction = Fraction(0)
    r: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _q(self.a))
        object.__setattr__(self, "b", _q(self.b))
        object.__setattr__(self, "r", _q(self.r))
        if self.r < 0:
            raise ValueError("negative radicand")
        if self.b == 0 or self.r == 0:
            object.__setattr__(self, "b", Fraction(0))
            object.__setattr__(self, "r", Fraction(0))
        else:
            # pull out rational square roots
            p, q = self.r.numerator, self.r.denominator
            sp, sq = isqrt(p), isqrt(q)
            if sp * sp == p and sq * sq == q:
                object.__setattr__(self, "a", self.a + self.b * Fraction(sp, sq))
                object.__setattr__(self, "b", Fraction(0))
                object.__setattr__(self, "r", Fraction(0))

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        diff = self.a * self.a - self.b * self.b * self.r
        if diff > 0:
            return sa
        if diff < 0:
            return sb
        return 0

    def _other(self, o):
        if isinstance(o, Surd):
            return o
        return Surd(_q(o))

    def __add__(self, o):
        o = self._other(o)
        if o.b == 0:
            return Surd(self.a + o.a, self.b, self.r)
        if self.b == 0:
            return Surd(self.a + o.a, o.b, o.r)
        if self.r != o.r:
            raise ValueError("surds with different radicands")
        return Surd(self.a + o.a, self.b + o.b, self.r)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.r)

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) - self

    def scale(self, c) -> "Surd":
        c = _q(c)
        return Surd(c * self.a, c * self.b, self.r)

    def reciprocal(self) -> "Surd":
        den = self.a * self.a - self.b * self.b * self.r
        if den == 0:
            raise ZeroDivisionError("surd is zero")
        return Surd(self.a / den, -self.b / den, self.r)

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __gt__(self, o):
        return (self - o).sign() > 0

    def __ge__(self, o):
        return (self - o).sign() >= 0

    def __eq__(self, o):
        if not isinstance(o, (Surd, int, Fraction)):
            return NotImplemented
        return (self - o).sign() == 0

    def __hash__(self):
        return hash((self.a, self.b, self.r))

    def enclosure(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational lo <= self <= hi with hi - lo <= 2^-bits."""
        if self.b == 0:
            return self.a, self.a
        extra = bits + max(0, abs(self.b).numerator.bit_length() - abs(self.b).denominator.bit_length() + 2)
        p, q = self.r.numerator, self.r.denominator
        scale = 1 << extra
        s = isqrt(p * q * scale * scale)
        lo_root = Fraction(s, q * scale)
        hi_root = Fraction(s + 1, q * scale)
        x1, x2 = self.a + self.b * lo_root, self.a + self.b * hi_root
        return (min(x1, x2), max(x1, x2))

    def floor(self) -> int:
        lo, hi = self.enclosure(8)
        n = lo.numerator // lo.denominator
        while self >= n + 1:
            n += 1
        while self < n:
            n -= 1
        return n

    def ceil(self) -> int:
        return -((-self).floor())

    def __float__(self):
        lo, hi = self.enclosure(60)
        return float((lo + hi) / 2)

    def __repr__(self):
        if self.b == 0:
            return f"Surd({self.a})"
        return f"Surd({self.a} + {self.b}*sqrt({self.r}))"


def _solve(G, b):
    if not G:
        return []
    return [r[0] for r in _rows(_mat(G).solve(_mat([[x] for x in b])))]


def _quadratic_data(fam: TAlphaFamily):
    """T_alpha^2 = q0 + 2 b.alpha - alpha^T G alpha."""
    G = fam.gram()
    c = fam.linear_terms()
    if fam.model.kind == "projective":
        b = [-ck for ck in c]
    else:
        b = [fam.H[k + 1] - c[k] for k in range(fam.ell)]
    q0 = fam.t_alpha_sq([0] * fam.ell)
    return q0, b, G


def _face_extrema(q0, b, G, c0, c, zero: set):
    """Extrema of c0 + c.alpha over {alpha : q(alpha) = 0, alpha_k = 0 for k in zero}.

    Returns a list of (value, point) candidates with exact surd entries,
    empty when the section is empty.
    """
    idx = [k for k in range(len(b)) if k not in zero]
    if not idx:
        return [(Surd(c0), ())] if q0 == 0 else []
    Gs = [[G[i][j] for j in idx] for i in idx]
    bs = [b[i] for i in idx]
    cs = [c[i] for i in idx]
    center = _solve(Gs, bs)
    m = q0 + sum(bi * xi for bi, xi in zip(bs, center))  # maximum of q on the face
    if m < 0:
        return []
    Gc = _solve(Gs, cs)
    w = sum(ci * gi for ci, gi in zip(cs, Gc))  # c^T G^-1 c
    val0 = c0 + sum(ci * xi for ci, xi in zip(cs, center))
    if w == 0 or m == 0:
        pt = {k: Surd(x) for k, x in zip(idx, center)}
        return [(Surd(val0), pt)]
    # optimum at center +- sqrt(m / w) G^-1 c
    rad = m / w
    out = []
    for sgn in (1, -1):
        val = Surd(val0, sgn * w, rad)  # val0 +- sqrt(m w) = val0 +- w sqrt(m/w)
        pt = {k: Surd(x, sgn * g, rad) for k, x, g in zip(idx, center, Gc)}
        out.append((val, pt))
    return out


def ellipsoid_extrema(fam: TAlphaFamily, functional, nonnegative: bool = True, face_cap: int = 14):
    """Exact inf and sup of alpha -> functional . T_alpha on {T_alpha^2 = 0}.

    ``functional`` is a DivisorClass or a pair (c0, [c_1..c_ell]) giving an
    affine function of alpha directly.  With ``nonnegative`` the zero set is
    intersected with the closed orthant by visiting every face (only when
    ell <= face_cap; otherwise the whole ellipsoid is used, which still gives
    valid outer bounds).  Returns (inf, sup) as Surds, or None if empty.
    """
    q0, b, G = _quadratic_data(fam)
    if isinstance(functional, DivisorClass):
        c0 = functional.dot(fam.v0)
        c = [functional.dot(fam.u(k)) for k in range(1, fam.ell + 1)]
    else:
        c0, c = _q(functional[0]), [_q(x) for x in functional[1]]
    ell = fam.ell
    if not nonnegative or ell > face_cap:
        faces = [set()]
    else:
        faces = (set(z) for r in range(ell + 1) for z in itertools.combinations(range(ell), r))
    vals = []
    for zero in faces:
        for val, pt in _face_extrema(q0, b, G, c0, c, zero):
            if nonnegative and ell <= face_cap and any(x.sign() < 0 for x in pt.values()):
                continue
            vals.append(val)
    if not vals:
        return None
    return min(vals), max(vals)


def coordinate_bounds(fam: TAlphaFamily, face_cap: int = 14):
    """Per-coordinate (lo, hi) Surd bounds of the non-negative part of {T_alpha^2 = 0}."""
    out = []
    for k in range(fam.ell):
        c = [Fraction(0)] * fam.ell
        c[k] = Fraction(1)
        ext = ellipsoid_extrema(fam, (0, c), True, face_cap)
        if ext is None:
            return None
        lo, hi = ext
        if lo.sign() < 0:
            lo = Surd(0)
        out.append((lo, hi))
    return out
