"""Exact coefficient fields: Q and simple algebraic extensions Q[t]/(m(t)).

Elements of a field are stored as ``flint.fmpq_poly`` in the generator ``t``,
reduced modulo the minimal polynomial.  The rational field is the degree-one
instance with minimal polynomial ``t``, so every element is a constant.

Univariate polynomials over a field are plain Python lists of elements, lowest
degree first.  They are only used for small degrees (gcds and factorizations
of polynomials cut out on exceptional divisors), so no attempt is made at
asymptotically fast arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import flint

fmpq = flint.fmpq
fmpq_poly = flint.fmpq_poly

_T = fmpq_poly([0, 1])

# bivariate helper ring used for norms and primitive elements
_ZT = flint.fmpq_mpoly_ctx.get(("z", "t"), "lex")


class FieldTowerTooDeep(ArithmeticError):
    """Hosting a point would need more nested extensions than allowed."""


def to_fmpq(value) -> fmpq:
    if isinstance(value, fmpq):
        return value
    if isinstance(value, Fraction):
        return fmpq(value.numerator, value.denominator)
    if isinstance(value, int):
        return fmpq(value)
    if isinstance(value, str):
        frac = Fraction(value)
        return fmpq(frac.numerator, frac.denominator)
    raise TypeError(f"cannot convert {value!r} to a rational")


def fmpq_to_fraction(q: fmpq) -> Fraction:
    return Fraction(int(q.p), int(q.q))


@dataclass(frozen=True, eq=False)
class NumberField:
    """The field Q[t]/(minpoly) with ``minpoly`` monic and irreducible over Q.

    ``depth`` counts the extension steps needed to reach the field from Q
    (0 for Q itself), which is what the tower cap of the desingularization
    is measured against.
    """

    minpoly: fmpq_poly
    depth: int = 0
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lc = self.minpoly.leading_coefficient()
        if lc != 1:
            object.__setattr__(self, "minpoly", self.minpoly / lc)
        object.__setattr__(self, "_key", tuple(self.minpoly.coeffs()))

    @classmethod
    def rational(cls) -> "NumberField":
        return QQ

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.is_rational:
            return "QQ"
        return f"NumberField({self.minpoly.str(var='t')})"

    # element arithmetic -------------------------------------------------
    def reduce(self, a: fmpq_poly) -> fmpq_poly:
        if self.is_rational:
            return fmpq_poly([a(self.root_of_rational())]) if a.degree() > 0 else a
        return a % self.minpoly

    def root_of_rational(self) -> fmpq:
        # minpoly of QQ is t, so the generator is 0
        return -self.minpoly.coeffs()[0] if self.minpoly.degree() == 1 else fmpq(0)

    def element(self, value) -> fmpq_poly:
        if isinstance(value, fmpq_poly):
            return self.reduce(value)
        return fmpq_poly([to_fmpq(value)])

    def gen(self) -> fmpq_poly:
        return self.reduce(_T)

    def mul(self, a: fmpq_poly, b: fmpq_poly) -> fmpq_poly:
        if self.is_rational:
            return a * b
        return (a * b) % self.minpoly

    def inv(self, a: fmpq_poly) -> fmpq_poly:
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.is_rational:
            return fmpq_poly([1 / a.coeffs()[0]])
        g, s, _ = a.xgcd(self.minpoly)
        if g.degree() != 0:
            raise ArithmeticError("minimal polynomial is not irreducible")
        return (s / g.coeffs()[0]) % self.minpoly

    def div(self, a: fmpq_poly, b: fmpq_poly) -> fmpq_poly:
        return self.mul(a, self.inv(b))

    def is_rational_element(self, a: fmpq_poly) -> bool:
        return a.degree() <= 0

    def rational_value(self, a: fmpq_poly) -> fmpq:
        if a.degree() > 0:
            raise ValueError("element is not rational")
        return a.coeffs()[0] if a.degree() == 0 else fmpq(0)

    def coordinates(self, a: fmpq_poly) -> list[fmpq]:
        """Coordinate vector of ``a`` in the power basis 1, t, ..., t^(n-1)."""
        cs = list(a.coeffs())
        return cs + [fmpq(0)] * (self.degree - len(cs))

    def norm(self, a: fmpq_poly) -> fmpq:
        if self.is_rational:
            return self.rational_value(a)
        # N(a) = res(m, a) for monic m
        return self.minpoly.resultant(a)

    def trace(self, a: fmpq_poly) -> fmpq:
        if self.is_rational:
            return self.rational_value(a)
        n = self.degree
        total = fmpq(0)
        # trace of multiplication-by-a in the power basis
        basis = _T ** 0
        for i in range(n):
            prod = self.mul(a, basis)
            total += self.coordinates(prod)[i]
            basis = self.mul(basis, _T)
        return total

    def embed_rational_poly(self, p: fmpq_poly) -> list[fmpq_poly]:
        return [fmpq_poly([c]) for c in p.coeffs()]


QQ = NumberField(fmpq_poly([0, 1]))


@dataclass(frozen=True)
class Embedding:
    """Field homomorphism K -> L given by the image of K's generator."""

    source: NumberField
    target: NumberField
    image_of_gen: fmpq_poly

    def __call__(self, a: fmpq_poly) -> fmpq_poly:
        if self.source.is_rational:
            return fmpq_poly([self.source.rational_value(a)]) if a.degree() >= 0 else a
        if a.degree() <= 0:
            return a
        return self.target.reduce(a(self.image_of_gen)) if self.target.is_rational else _compose_mod(a, self.image_of_gen, self.target.minpoly)

    def compose(self, other: "Embedding") -> "Embedding":
        """``other`` after ``self``: K -> L -> M."""
        return Embedding(self.source, other.target, other(self.image_of_gen))


def identity_embedding(k: NumberField) -> Embedding:
    return Embedding(k, k, k.gen())


def _compose_mod(a: fmpq_poly, b: fmpq_poly, m: fmpq_poly) -> fmpq_poly:
    # Horner evaluation a(b) mod m
    acc = fmpq_poly([])
    for c in reversed(a.coeffs()):
        acc = (acc * b + c) % m
    return acc


# --------------------------------------------------------------------------
# univariate polynomials over a number field (lists, lowest degree first)

def upoly_trim(p: list) -> list:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def upoly_degree(p: list) -> int:
    return len(upoly_trim(p)) - 1


def upoly_from_rational(p: fmpq_poly) -> list:
    return [fmpq_poly([c]) for c in p.coeffs()]


def upoly_monic(k: NumberField, p: list) -> list:
    p = upoly_trim(p)
    if not p:
        return p
    inv = k.inv(p[-1])
    return [k.mul(c, inv) for c in p]


def upoly_divmod(k: NumberField, a: list, b: list) -> tuple[list, list]:
    a = upoly_trim(a)
    b = upoly_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    inv_lc = k.inv(b[-1])
    db = len(b) - 1
    q = [fmpq_poly([])] * max(len(a) - db, 0)
    r = list(a)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = k.mul(r[-1], inv_lc)
        q[shift] = c
        for i, bc in enumerate(b):
            r[i + shift] = k.reduce(r[i + shift] - k.mul(c, bc))
        r = upoly_trim(r)
    return q, r


def upoly_gcd(k: NumberField, a: list, b: list) -> list:
    a = upoly_trim(a)
    b = upoly_trim(b)
    while b:
        _, r = upoly_divmod(k, a, b)
        a, b = b, r
    return upoly_monic(k, a)


def upoly_derivative(k: NumberField, p: list) -> list:
    return upoly_trim([k.reduce(c * i) for i, c in enumerate(p)][1:])


def upoly_mul(k: NumberField, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [fmpq_poly([])] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return upoly_trim([k.reduce(c) for c in out])


def upoly_squarefree(k: NumberField, p: list) -> list:
    """Product of the distinct monic irreducible factors of ``p``."""
    p = upoly_monic(k, p)
    if len(p) <= 2:
        return p
    g = upoly_gcd(k, p, upoly_derivative(k, p))
    if len(g) <= 1:
        return p
    q, r = upoly_divmod(k, p, g)
    assert not r
    return upoly_monic(k, q)


def _to_zt(p: list, shift: int) -> flint.fmpq_mpoly:
    """f(z - shift*t) as a polynomial in (z, t) for f with coefficients in K."""
    z, t = _ZT.gens()
    lin = z - shift * t
    acc = _ZT.from_dict({})
    power = _ZT.from_dict({(0, 0): 1})
    for c in p:
        cz = _ZT.from_dict({(0, e): v for e, v in enumerate(c.coeffs()) if v != 0})
        acc += cz * power
        power *= lin
    return acc


def _mpoly_z_to_fmpq_poly(p: flint.fmpq_mpoly) -> fmpq_poly:
    coeffs: dict[int, fmpq] = {}
    for (ez, et), c in p.terms():
        if et:
            raise ValueError("unexpected dependence on t")
        coeffs[ez] = c
    if not coeffs:
        return fmpq_poly([])
    return fmpq_poly([coeffs.get(i, fmpq(0)) for i in range(max(coeffs) + 1)])


def _norm_shifted(k: NumberField, p: list, shift: int) -> fmpq_poly:
    mt = _ZT.from_dict({(0, e): v for e, v in enumerate(k.minpoly.coeffs()) if v != 0})
    res = _to_zt(p, shift).resultant(mt, "t")
    return _mpoly_z_to_fmpq_poly(res)


def _shifts():
    yield 0
    for s in itertools.count(1):
        yield s
        yield -s


def factor_over(k: NumberField, p: list) -> list[list]:
    """Distinct monic irreducible factors of ``p`` over ``k`` (Trager)."""
    p = upoly_squarefree(k, p)
    if len(p) <= 1:
        return []
    if len(p) == 2:
        return [p]
    if k.is_rational:
        f = fmpq_poly([k.rational_value(c) for c in p])
        return [upoly_monic(k, upoly_from_rational(g)) for g, _ in f.factor()[1]]
    for s in _shifts():
        n = _norm_shifted(k, p, s)
        if n.gcd(n.derivative()).degree() == 0:
            break
    factors = []
    _, parts = n.factor()
    for h, _ in parts:
        # h(z + s t) back over K
        hz = [k.reduce(c) for c in _shift_rational(k, h, s)]
        g = upoly_gcd(k, p, hz)
        if len(g) > 1:
            factors.append(g)
    assert sum(len(g) - 1 for g in factors) == len(p) - 1
    return factors


def _shift_rational(k: NumberField, h: fmpq_poly, s: int) -> list:
    # coefficients (in K) of h(z + s*t) as a polynomial in z
    lin = [k.reduce(fmpq_poly([0, s])), fmpq_poly([1])]
    acc: list = []
    power = [fmpq_poly([1])]
    for c in h.coeffs():
        term = [k.reduce(pc * c) for pc in power]
        acc = _upoly_add(acc, term)
        power = upoly_mul(k, power, lin)
    return upoly_trim(acc)


def _upoly_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        ca = a[i] if i < len(a) else fmpq_poly([])
        cb = b[i] if i < len(b) else fmpq_poly([])
        out.append(ca + cb)
    return upoly_trim(out)


def extend_by_root(k: NumberField, g: list, max_depth: int | None = None) -> tuple[NumberField, Embedding, fmpq_poly]:
    """Adjoin a root of the irreducible ``g`` in K[z] to ``k``.

    Returns the new simple field L, the embedding K -> L and the root of g
    expressed in L.  For linear ``g`` the field is unchanged.
    """
    g = upoly_monic(k, g)
    if len(g) == 2:
        return k, identity_embedding(k), k.reduce(-g[0])
    new_depth = k.depth + 1
    if max_depth is not None and new_depth > max_depth:
        raise FieldTowerTooDeep(f"extension depth {new_depth} exceeds cap {max_depth}")
    if k.is_rational:
        m = fmpq_poly([k.rational_value(c) for c in g])
        big = NumberField(m, depth=new_depth)
        return big, Embedding(k, big, fmpq_poly([])), big.gen()
    for s in _shifts():
        if s == 0:
            continue
        n = _norm_shifted(k, g, s)
        if n.gcd(n.derivative()).degree() == 0:
            break
    big = NumberField(n, depth=new_depth)
    # t as a polynomial in w: gcd over L of m(t) and g(w - s t, t) is linear in t
    w = big.gen()
    m_t = upoly_from_rational(k.minpoly)
    g_t = _g_in_t(big, g, s, w)
    lin = upoly_gcd(big, m_t, g_t)
    assert len(lin) == 2, "primitive element construction failed"
    t_image = big.reduce(-lin[0])
    root = big.reduce(w - s * t_image)
    return big, Embedding(k, big, t_image), root


def _g_in_t(big: NumberField, g: list, s: int, w: fmpq_poly) -> list:
    """g(w - s*t, t) as a polynomial in t with coefficients in ``big``."""
    # each coefficient g_j(t) is a rational polynomial in t; expand (w - s t)^j
    acc: list = []
    lin = [w, big.reduce(fmpq_poly([-s]))]
    power = [fmpq_poly([1])]
    for gj in g:
        term = upoly_mul(big, upoly_from_rational(gj), power)
        acc = _upoly_add(acc, term)
        power = upoly_mul(big, power, lin)
    return upoly_trim([big.reduce(c) for c in acc])


def roots_over(k: NumberField, p: list, max_depth: int | None = None):
    """Roots of ``p`` grouped by irreducible factor over ``k``.

    Yields ``(factor, field, embedding, root)`` per irreducible factor; the
    root lives in ``field`` and represents the whole conjugate orbit.
    """
    for g in factor_over(k, p):
        big, emb, root = extend_by_root(k, g, max_depth)
        yield g, big, emb, root


@dataclass(frozen=True)
class Scalar:
    """An exact element of a number field, with field arithmetic."""

    field: NumberField
    value: fmpq_poly

    @classmethod
    def rational(cls, value) -> "Scalar":
        return cls(QQ, fmpq_poly([to_fmpq(value)]))

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError("scalars live in different fields")
            return other
        return Scalar(self.field, self.field.element(other))

    def __add__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field.reduce(self.value + other.value))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, -self.value)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field.div(self.value, other.value))

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash((self.field, tuple(self.value.coeffs())))

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __repr__(self):
        if self.field.is_rational:
            return str(self.field.rational_value(self.value))
        return f"{self.value.str(var='t')} mod {self.field.minpoly.str(var='t')}"
