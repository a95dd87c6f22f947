"""Discrete valuations, Newton polygons, and reduction of maps at a place.

Places are normalized so that a uniformizer has valuation 1.  Four kinds
are supported: a rational prime on Q, a monic irreducible pi(t) or the
degree place on GF(q)(t), and the trivial valuation on a finite field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import dense
from .algebra.fields import FieldElement, field_make, function_field
from .algebra.numtheory import is_prime, valuation_int
from .algebra.poly import Poly
from .dynamics import (
    ProjPoint,
    RationalMap,
    _canonical_scale,
    critical_points,
    map_evaluate,
)
from .errors import InseparableMap, NotPrime, PlaceMismatch, ReducibleModulus, Unsupported

INF = math.inf


class Place:
    field = None
    residue_characteristic = 0

    def valuation(self, a):
        """Valuation of a raw element of ``self.field``."""
        raise NotImplementedError

    def uniformizer(self):
        raise NotImplementedError

    def residue_field(self):
        raise NotImplementedError

    def reduce(self, a):
        """Residue of an integral raw element."""
        raise NotImplementedError

    def spec(self):
        raise NotImplementedError

    def __str__(self):
        return self.spec()

    def __repr__(self):
        return f"Place({self.spec()})"

    def __eq__(self, other):
        return isinstance(other, Place) and self.spec() == other.spec()

    def __hash__(self):
        return hash(self.spec())


class PrimePlace(Place):
    """p-adic valuation on Q."""

    def __init__(self, p):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.field = field_make(0)
        self.residue_characteristic = p

    def valuation(self, a):
        if a == 0:
            return INF
        a = Fraction(a)
        return valuation_int(a.numerator, self.p) - valuation_int(a.denominator, self.p)

    def uniformizer(self):
        return Fraction(self.p)

    def residue_field(self):
        return field_make(self.p)

    def reduce(self, a):
        a = Fraction(a)
        if self.valuation(a) < 0:
            raise ValueError(f"{a} is not integral at {self.p}")
        return (a.numerator * pow(a.denominator, -1, self.p)) % self.p

    def spec(self):
        return f"prime:{self.p}"


def _tpoly_valuation(B, coeffs, pi):
    n = 0
    cur = list(coeffs)
    while True:
        q, r = dense.divmod_(B, cur, pi)
        if r:
            return n
        n += 1
        cur = q


class PolyPlace(Place):
    """Finite place of base(t) given by a monic irreducible pi(t)."""

    def __init__(self, K, pi):
        if K.kind != "rational-function":
            raise PlaceMismatch(f"{K} is not a function field")
        if isinstance(pi, FieldElement):
            pi = pi.v
        if len(pi[1]) != 1 or len(pi[0]) < 2:
            raise ValueError("place must be a nonconstant polynomial in t")
        B = K.base
        self.field = K
        self.pi = dense.monic(B, list(pi[0]))
        self.residue_characteristic = B.characteristic
        if len(self.pi) > 2:
            if not B.is_finite:
                raise Unsupported("places of degree > 1 need a finite constant field")
            if B.kind != "prime":
                raise Unsupported("places of degree > 1 are supported over prime fields only")
            try:
                self._residue = field_make(B.p, len(self.pi) - 1, list(self.pi))
            except ReducibleModulus:
                raise ReducibleModulus(f"{K.format(pi)} is not irreducible") from None
        else:
            self._residue = B

    def valuation(self, a):
        num, den = a
        if not num:
            return INF
        B = self.field.base
        return _tpoly_valuation(B, num, self.pi) - _tpoly_valuation(B, den, self.pi)

    def uniformizer(self):
        return self.field.make(self.pi)

    def residue_field(self):
        return self._residue

    def _residue_of_poly(self, coeffs):
        B = self.field.base
        r = dense.rem(B, list(coeffs), self.pi)
        R = self._residue
        if R is B:
            return r[0] if r else B.zero
        return R.from_vec(list(r) + [0] * (R.degree - len(r)))

    def reduce(self, a):
        if self.valuation(a) < 0:
            raise ValueError("element is not integral at this place")
        num, den = a
        R = self._residue
        return R.div(self._residue_of_poly(num), self._residue_of_poly(den))

    def spec(self):
        K = self.field
        return f"place:{K._fmt_poly(self.pi)} over {_field_text(K.base)}"


class InfinitePlace(Place):
    """Degree place of base(t): v(f/g) = deg g - deg f."""

    def __init__(self, K):
        if K.kind != "rational-function":
            raise PlaceMismatch(f"{K} is not a function field")
        self.field = K
        self.residue_characteristic = K.base.characteristic

    def valuation(self, a):
        num, den = a
        if not num:
            return INF
        return len(den) - len(num)

    def uniformizer(self):
        K = self.field
        return K.inv(K.gen)

    def residue_field(self):
        return self.field.base

    def reduce(self, a):
        v = self.valuation(a)
        if v < 0:
            raise ValueError("element is not integral at infinity")
        B = self.field.base
        if v > 0:
            return B.zero
        return B.div(a[0][-1], a[1][-1])

    def spec(self):
        return f"place:inf over {_field_text(self.field.base)}"


class TrivialPlace(Place):
    """Trivial valuation on a field; its residue field is the field itself."""

    def __init__(self, F):
        self.field = F
        self.residue_characteristic = F.characteristic

    def valuation(self, a):
        return INF if a == self.field.zero else 0

    def uniformizer(self):
        raise Unsupported("the trivial valuation has no uniformizer")

    def residue_field(self):
        return self.field

    def reduce(self, a):
        return a

    def spec(self):
        return f"trivial over {_field_text(self.field)}"


def _field_text(F):
    from .textio import format_field

    return format_field(F)


def _check_field(F, v):
    if F != v.field:
        raise PlaceMismatch(f"{v.spec()} is a place of {v.field}, not of {F}")


def place_valuation(x, v):
    """Exact valuation of ``x``; +inf for zero."""
    if not isinstance(x, FieldElement):
        x = v.field(x)
    _check_field(x.field, v)
    return v.valuation(x.v)


# ---------------------------------------------------------------------------
# Newton polygons


@dataclass
class NewtonPolygon:
    """Lower convex hull of the points (i, v(a_i)).

    A segment of slope s and length l certifies l roots of valuation -s;
    ``ord0`` further roots are zero.
    """

    poly: Poly
    vertices: list
    segments: list  # (slope as Fraction, length)
    ord0: int

    def root_valuations(self):
        """[(valuation, multiplicity)] in increasing order of valuation."""
        out = [(_simplify(-s), n) for s, n in reversed(self.segments)]
        if self.ord0:
            out.append((INF, self.ord0))
        return out


def _simplify(q):
    return int(q) if q.denominator == 1 else q


def newton_polygon(f, v):
    if not isinstance(f, Poly):
        raise TypeError("newton_polygon expects a Poly")
    _check_field(f.field, v)
    if f.is_zero():
        raise ValueError("zero polynomial has no Newton polygon")
    pts = [(i, v.valuation(c)) for i, c in enumerate(f.c) if c != f.field.zero]
    ord0 = pts[0][0]
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(f, hull, segs, ord0)


def _self_test():
    # the root of x - 3 is 3, of 3-adic valuation 1
    Q = field_make(0)
    poly = Poly(Q, [-3, 1])
    got = newton_polygon(poly, PrimePlace(3)).root_valuations()
    if got != [(1, 1)]:
        raise AssertionError(f"Newton polygon convention broken: {got}")


_self_test()


@dataclass
class SpectrumClassification:
    attracting: int
    indifferent: int
    repelling: int
    breakdown: list = field(default_factory=list)  # (valuation, count)

    @property
    def total(self):
        return self.attracting + self.indifferent + self.repelling


def classify_spectrum(M, v):
    """Sort multipliers by the sign of their valuation; zero counts as attracting."""
    poly = M.poly if hasattr(M, "poly") else M
    np_ = newton_polygon(poly, v)
    att = ind = rep = 0
    for val, n in np_.root_valuations():
        if val > 0:
            att += n
        elif val == 0:
            ind += n
        else:
            rep += n
    return SpectrumClassification(att, ind, rep, np_.root_valuations())


# ---------------------------------------------------------------------------
# reduction and tameness


@dataclass
class Reduction:
    """A reduced model (F, G) of formal degree ``degree`` over the residue field."""

    field: object
    F: list
    G: list
    degree: int
    dropped: bool

    @property
    def map(self) -> Optional[RationalMap]:
        if self.degree < 2:
            return None
        coeffs = _canonical_scale(self.field, list(self.F) + list(self.G))
        d = self.degree
        return RationalMap(self.field, coeffs[: d + 1], coeffs[d + 1:], d)


def reduce_at_place(phi, v):
    """Scale to an integral model with a unit coefficient, reduce, and clear
    the common homogeneous factor of the reductions."""
    K = phi.field
    _check_field(K, v)
    d = phi.degree
    coeffs = list(phi.F) + list(phi.G)
    if isinstance(v, TrivialPlace):
        return Reduction(K, list(phi.F), list(phi.G), d, False)
    m = min(v.valuation(c) for c in coeffs)
    if m:
        s = K.pow(v.uniformizer(), -m)
        coeffs = [K.mul(c, s) for c in coeffs]
    R = v.residue_field()
    red = [v.reduce(c) for c in coeffs]
    f = dense.trim(R, red[: d + 1])
    g = dense.trim(R, red[d + 1:])
    # common power of Z: each form vanishes at infinity to order d - deg
    zf = d - (len(f) - 1) if f else INF
    zg = d - (len(g) - 1) if g else INF
    k = min(zf, zg)
    h = dense.gcd(R, f, g)
    if len(h) > 1:
        f = dense.exact_div(R, f, h)
        g = dense.exact_div(R, g, h)
    new_d = d - k - (len(h) - 1)
    return Reduction(R, dense.trim(R, f) + [R.zero] * (new_d + 1 - len(f)),
                     dense.trim(R, g) + [R.zero] * (new_d + 1 - len(g)), new_d, new_d < d)


@dataclass
class TameResult:
    kind: str  # "TameByDegree", "Tame", "Wild", "Indeterminate"
    reason: str = ""
    witness: Optional[tuple] = None  # (point, ramification index)
    indices: list = field(default_factory=list)
    dropped: bool = False

    def __str__(self):
        if self.kind == "Wild" and self.witness:
            return f"Wild(e={self.witness[1]} at {self.witness[0]})"
        return self.kind


def ramification_index(phi, c):
    """Local degree of ``phi`` at the point ``c``: vanishing order of
    phi(z) - phi(c) at c in the charts z or 1/z."""
    L = c.field
    psi = phi.embed(L)
    F, G = list(psi.F), list(psi.G)
    if c.is_infinity:
        F, G = F[::-1], G[::-1]
        x = L.zero
    else:
        x = c.x
    F = dense.trim(L, F)
    G = dense.trim(L, G)
    gx = dense.evaluate(L, G, x)
    if gx == L.zero:
        return dense.multiplicity(L, G, x)
    b = L.div(dense.evaluate(L, F, x), gx)
    h = dense.sub(L, F, dense.scale(L, G, b))
    return dense.multiplicity(L, h, x)


def tame_check(phi, v, max_ext=None):
    p = v.residue_characteristic
    d = phi.degree
    if p == 0 or d < p:
        return TameResult("TameByDegree", f"degree {d} below residue characteristic {p or 0}" if p else "residue characteristic 0")
    red = reduce_at_place(phi, v)
    psi = red.map
    if red.degree < 1:
        return TameResult("Indeterminate", "reduction is constant; the model says nothing about local degrees", dropped=True)
    if psi is None:
        return TameResult("Tame", "reduction is a Möbius map; every local degree is 1", dropped=True)
    try:
        crit = critical_points(psi, max_ext)
    except InseparableMap:
        pt = ProjPoint(psi.field, psi.field.zero)
        e = ramification_index(psi, pt)
        return TameResult("Wild", "reduction is inseparable", (pt, e), [(pt, e)], red.dropped)
    indices = [(c, ramification_index(psi, c)) for c, _ in crit]
    for c, e in indices:
        if e % p == 0:
            return TameResult("Wild", f"ramification index {e} divisible by {p}", (c, e), indices, red.dropped)
    total = sum(e - 1 for _, e in indices)
    if total < 2 * psi.degree - 2:
        c, e = indices[0] if indices else (None, 0)
        return TameResult("Wild", f"ramification total {total} < {2 * psi.degree - 2}", (c, e), indices, red.dropped)
    return TameResult("Tame", "given model checked", None, indices, red.dropped)
