"""Rational maps of the projective line and their periodic-point multipliers.

A degree-d map is stored as a pair of binary forms ``(F, G)``; coefficient
``i`` of each list multiplies ``X^i Z^(d-i)``, so the lists double as the
affine numerator and denominator ``f(z) = F(z, 1)``, ``g(z) = G(z, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import budget as _budget
from .algebra import dense, linalg
from .algebra.fields import FieldElement, embedding, extension
from .algebra.numtheory import divisors, mobius_mu, period_count
from .algebra.poly import Poly, poly_roots_enum
from .errors import (
    BudgetExceeded,
    ConjugationSearchFailed,
    CriticalPointsUnavailable,
    DegenerateMap,
    DegreeTooLow,
    DivideByZero,
    FieldMismatch,
    FieldTooLarge,
    InseparableMap,
    NotPeriodic,
)


# ---------------------------------------------------------------------------
# points and Möbius transformations


class ProjPoint:
    """A point (x : z) of P^1, canonical as (x : 1) or (1 : 0)."""

    __slots__ = ("field", "x", "z")

    def __init__(self, field, x, z=None):
        self.field = field
        if z is None:
            z = field.one
        if z == field.zero:
            if x == field.zero:
                raise ValueError("(0 : 0) is not a point")
            self.x, self.z = field.one, field.zero
        elif z == field.one:
            self.x, self.z = x, z
        else:
            self.x, self.z = field.div(x, z), field.one

    @classmethod
    def infinity(cls, field):
        return cls(field, field.one, field.zero)

    @classmethod
    def of(cls, value):
        """Finite point from a FieldElement."""
        return cls(value.field, value.v)

    @property
    def is_infinity(self):
        return self.z == self.field.zero

    @property
    def value(self):
        if self.is_infinity:
            raise ValueError("infinity has no affine coordinate")
        return FieldElement(self.field, self.x)

    def embed(self, L, emb=None):
        if L == self.field:
            return self
        emb = emb or embedding(self.field, L)
        return ProjPoint(L, emb(self.x), emb(self.z))

    def __eq__(self, other):
        return (
            isinstance(other, ProjPoint)
            and self.field == other.field
            and self.x == other.x
            and self.z == other.z
        )

    def __hash__(self):
        return hash((self.x, self.z))

    def __str__(self):
        return "inf" if self.is_infinity else self.field.format(self.x)

    def __repr__(self):
        return f"ProjPoint({self})"


def _canonical_scale(F, coeffs):
    z = F.zero
    for c in coeffs:
        if c != z:
            if c == F.one:
                return list(coeffs)
            inv = F.inv(c)
            return [F.mul(x, inv) for x in coeffs]
    raise ValueError("all coefficients are zero")


class MobiusTransform:
    """z -> (a z + b) / (c z + d), scaled so the first nonzero entry is 1."""

    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, field, a, b, c, d):
        det = field.sub(field.mul(a, d), field.mul(b, c))
        if det == field.zero:
            raise DegenerateMap("Möbius transformation with zero determinant")
        self.field = field
        self.a, self.b, self.c, self.d = _canonical_scale(field, [a, b, c, d])

    @classmethod
    def identity(cls, field):
        return cls(field, field.one, field.zero, field.zero, field.one)

    @classmethod
    def from_values(cls, field, a, b, c, d):
        co = field.coerce
        return cls(field, co(a), co(b), co(c), co(d))

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __call__(self, pt):
        F = self.field
        X = F.add(F.mul(self.a, pt.x), F.mul(self.b, pt.z))
        Z = F.add(F.mul(self.c, pt.x), F.mul(self.d, pt.z))
        return ProjPoint(F, X, Z)

    def inverse(self):
        F = self.field
        return MobiusTransform(F, self.d, F.neg(self.b), F.neg(self.c), self.a)

    def compose(self, other):
        """self ∘ other."""
        F = self.field
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        m = F.mul
        return MobiusTransform(
            F,
            F.add(m(a, e), m(b, g)),
            F.add(m(a, f), m(b, h)),
            F.add(m(c, e), m(d, g)),
            F.add(m(c, f), m(d, h)),
        )

    def __eq__(self, other):
        return isinstance(other, MobiusTransform) and self.field == other.field and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        from .algebra.poly import format_poly

        K = self.field
        num = format_poly(K, dense.trim(K, [self.b, self.a]), "z")
        den = format_poly(K, dense.trim(K, [self.d, self.c]), "z")
        return f"({num})/({den})"

    def __repr__(self):
        return f"MobiusTransform({self})"


# ---------------------------------------------------------------------------
# binary forms


def _hom_eval_pt(K, coeffs, x, z):
    n = len(coeffs) - 1
    if z == K.one:
        return dense.evaluate(K, dense.trim(K, list(coeffs)), x)
    if z == K.zero:
        return coeffs[n]
    acc = K.zero
    for i in range(n, -1, -1):
        acc = K.add(K.mul(acc, x), K.mul(coeffs[i], K.pow(z, n - i)))
    return acc


def _compose_forms(K, outer, d, P, Q, e):
    """outer(P, Q) for a degree-d form ``outer`` and degree-e forms P, Q.

    Inputs and output are trimmed coefficient lists; the output has formal
    degree d*e.
    """
    qpow = [[K.one]]
    for _ in range(d):
        qpow.append(dense.mul(K, qpow[-1], Q))
    acc = [outer[d]] if d < len(outer) and outer[d] != K.zero else []
    for i in range(d - 1, -1, -1):
        acc = dense.mul(K, acc, P)
        c = outer[i] if i < len(outer) else K.zero
        if c != K.zero:
            acc = dense.add(K, acc, dense.scale(K, qpow[d - i], c))
    return acc


def _pad(K, coeffs, n):
    coeffs = list(coeffs)
    return coeffs + [K.zero] * (n - len(coeffs))


def form_resultant(K, F, G, d):
    """Resultant of two degree-d binary forms, up to sign."""
    f = dense.trim(K, list(F))
    g = dense.trim(K, list(G))
    if len(f) < d + 1 and len(g) < d + 1:
        return K.zero
    r = dense.resultant(K, f, g)
    if r == K.zero:
        return r
    if len(f) == d + 1:
        return K.mul(r, K.pow(f[-1], d - (len(g) - 1)))
    return K.mul(r, K.pow(g[-1], d - (len(f) - 1)))


class BinaryForm:
    """Homogeneous polynomial in X, Z; ``coeffs[i]`` multiplies X^i Z^(degree-i)."""

    def __init__(self, field, coeffs, degree):
        self.field = field
        self.c = dense.trim(field, list(coeffs))
        self.degree = degree

    def affine(self, var="z"):
        return Poly.raw(self.field, self.c, var)

    @property
    def infinity_multiplicity(self):
        return self.degree - (len(self.c) - 1)

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.field == other.field
            and self.degree == other.degree
            and self.c == other.c
        )

    def __str__(self):
        K = self.field
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            c = self.c[i]
            if c == K.zero:
                continue
            j = self.degree - i
            mono = ""
            if i:
                mono += "X" if i == 1 else f"X^{i}"
            if j:
                mono += "Z" if j == 1 else f"Z^{j}"
            s = K.format(c)
            simple = s.isdigit()
            if not mono:
                terms.append(s if simple else f"({s})")
            elif s == "1":
                terms.append(mono)
            else:
                terms.append((s if simple else f"({s})") + mono)
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# maps


class RationalMap:
    """A validated degree-d endomorphism of P^1 (construct with :func:`map_make`)."""

    __slots__ = ("field", "degree", "F", "G", "_iterates")

    def __init__(self, field, F, G, degree):
        self.field = field
        self.degree = degree
        self.F = tuple(F)
        self.G = tuple(G)
        self._iterates = {1: (self.F, self.G)}

    @property
    def num(self):
        return Poly.raw(self.field, list(self.F), "z")

    @property
    def den(self):
        return Poly.raw(self.field, list(self.G), "z")

    def __call__(self, pt):
        return map_evaluate(self, pt)

    def iterate(self, n):
        return map_iterate(self, n)

    def conjugate(self, A):
        return map_conjugate(self, A)

    def embed(self, L, emb=None):
        """The same map with coefficients pushed into L."""
        if L == self.field:
            return self
        emb = emb or embedding(self.field, L)
        return RationalMap(L, [emb(c) for c in self.F], [emb(c) for c in self.G], self.degree)

    def __eq__(self, other):
        return (
            isinstance(other, RationalMap)
            and self.field == other.field
            and self.degree == other.degree
            and self.F == other.F
            and self.G == other.G
        )

    def __hash__(self):
        return hash((self.F, self.G))

    def __str__(self):
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalMap({self}, {self.field}, d={self.degree})"


def _normalized(K, F, G, d):
    coeffs = _canonical_scale(K, list(F) + list(G))
    return RationalMap(K, coeffs[: d + 1], coeffs[d + 1:], d)


def map_make(num, den, field, degree=None, raw=False):
    """Validate and normalize a map.

    ``num``/``den`` are affine coefficient lists (constant first); with
    ``degree`` they are read as binary forms of that formal degree, which is
    how a pair like (XZ, Z^2) with a shared factor can be written.
    """
    K = field
    if not raw:
        num = [K.coerce(c) for c in num]
        den = [K.coerce(c) for c in den]
    f = dense.trim(K, list(num))
    g = dense.trim(K, list(den))
    d = degree if degree is not None else max(len(f), len(g)) - 1
    if len(f) - 1 > d or len(g) - 1 > d:
        raise ValueError("coefficient list longer than the stated degree")
    if not g:
        raise DegenerateMap("denominator is zero")
    F = _pad(K, f, d + 1)
    G = _pad(K, g, d + 1)
    if form_resultant(K, F, G, d) == K.zero:
        raise DegenerateMap("Res(F, G) = 0: numerator and denominator share a factor")
    if d < 2:
        raise DegreeTooLow(f"degree {d} < 2")
    return _normalized(K, F, G, d)


def map_evaluate(phi, pt):
    K = phi.field
    if pt.field != K:
        phi = phi.embed(pt.field)
        K = pt.field
    if pt.is_infinity:
        return ProjPoint(K, phi.F[-1], phi.G[-1])
    x = pt.x
    return ProjPoint(K, dense.evaluate(K, dense.trim(K, list(phi.F)), x),
                     dense.evaluate(K, dense.trim(K, list(phi.G)), x))


def _check_coeff_growth(K, coeffs, b, what):
    if K.kind == "rational-function":
        deg = max((K.t_degree(c) for c in coeffs), default=0)
        b.check_coeff_degree(deg, what)


def _iterate_pair(phi, n, budget=None):
    """(F_n, G_n) as padded tuples; cached on the map."""
    if n in phi._iterates:
        return phi._iterates[n]
    b = budget or _budget.current()
    d = phi.degree
    b.check_degree(d**n, f"iterate {n}")
    K = phi.field
    k = max(m for m in phi._iterates if m <= n)
    Fk, Gk = phi._iterates[k]
    f1 = dense.trim(K, list(phi.F))
    g1 = dense.trim(K, list(phi.G))
    while k < n:
        e = d**k
        P = dense.trim(K, list(Fk))
        Q = dense.trim(K, list(Gk))
        Fn = _compose_forms(K, f1, d, P, Q, e)
        Gn = _compose_forms(K, g1, d, P, Q, e)
        k += 1
        Fk = tuple(_pad(K, Fn, d**k + 1))
        Gk = tuple(_pad(K, Gn, d**k + 1))
        _check_coeff_growth(K, Fk + Gk, b, f"iterate {k}")
        phi._iterates[k] = (Fk, Gk)
    return Fk, Gk


def map_iterate(phi, n, budget=None):
    if n < 1:
        raise ValueError("iteration count must be >= 1")
    if n == 1:
        return phi
    K = phi.field
    Fn, Gn = _iterate_pair(phi, n, budget)
    D = phi.degree**n
    if form_resultant(K, Fn, Gn, D) == K.zero:
        raise DegenerateMap("iterate lost degree; this should not happen")
    return _normalized(K, Fn, Gn, D)


def map_compose(phi, psi):
    """phi ∘ psi."""
    K = phi.field
    if psi.field != K:
        raise FieldMismatch(f"{phi.field} vs {psi.field}")
    e = psi.degree
    P = dense.trim(K, list(psi.F))
    Q = dense.trim(K, list(psi.G))
    d = phi.degree
    Fn = _compose_forms(K, dense.trim(K, list(phi.F)), d, P, Q, e)
    Gn = _compose_forms(K, dense.trim(K, list(phi.G)), d, P, Q, e)
    D = d * e
    return _normalized(K, _pad(K, Fn, D + 1), _pad(K, Gn, D + 1), D)


def map_conjugate(phi, A):
    """A ∘ phi ∘ A^-1."""
    K = phi.field
    if A.field != K:
        raise FieldMismatch(f"{A.field} vs {phi.field}")
    a, b, c, d = A.entries
    # A^-1 sends (X : Z) to (dX - bZ : -cX + aZ)
    P = dense.trim(K, [K.neg(b), d])
    Q = dense.trim(K, [a, K.neg(c)])
    n = phi.degree
    Fp = _pad(K, _compose_forms(K, dense.trim(K, list(phi.F)), n, P, Q, 1), n + 1)
    Gp = _pad(K, _compose_forms(K, dense.trim(K, list(phi.G)), n, P, Q, 1), n + 1)
    m = K.mul
    F2 = [K.add(m(a, x), m(b, y)) for x, y in zip(Fp, Gp)]
    G2 = [K.add(m(c, x), m(d, y)) for x, y in zip(Fp, Gp)]
    return _normalized(K, F2, G2, n)


# ---------------------------------------------------------------------------
# critical points


def wronskian(phi):
    """W = (F_X G - F G_X) / Z as a degree 2d-2 form; affinely f'g - fg'."""
    K = phi.field
    f = dense.trim(K, list(phi.F))
    g = dense.trim(K, list(phi.G))
    w = dense.sub(K, dense.mul(K, dense.derivative(K, f), g), dense.mul(K, f, dense.derivative(K, g)))
    return BinaryForm(K, w, 2 * phi.degree - 2)


def _rational_roots(K, coeffs):
    """Roots in K of a polynomial over an infinite field, as far as they can
    be found without factoring: 0, constants of a finite base field, and a
    final linear cofactor.  Returns (roots, cofactor)."""
    roots = []
    cur = list(coeffs)
    k = dense.order_at_zero(K, cur)
    if k:
        roots.append((K.zero, k))
        cur = cur[k:]
    cands = []
    if K.kind == "rational-function" and K.base.is_finite:
        cands = [K.const(c) for c in K.base.elements() if c != K.base.zero]
    elif K.kind == "rationals":
        cands = _rational_candidates(cur)
    for c in cands:
        if len(cur) <= 1:
            break
        m = dense.multiplicity(K, cur, c)
        if m:
            roots.append((c, m))
            for _ in range(m):
                cur = dense.exact_div(K, cur, [K.neg(c), K.one])
    if len(cur) == 2:
        roots.append((K.neg(K.div(cur[0], cur[1])), 1))
        cur = [cur[1]]
    return roots, cur


def _rational_candidates(coeffs):
    from fractions import Fraction
    from math import lcm

    from .algebra.numtheory import divisors as _divs

    if len(coeffs) <= 1:
        return []
    den = lcm(*[c.denominator for c in coeffs])
    ints = [int(c * den) for c in coeffs]
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 == 0 or a0 > 10**6 or an > 10**6:
        return []
    out = []
    for p in _divs(a0):
        for q in _divs(an):
            for s in (1, -1):
                v = Fraction(s * p, q)
                if v not in out:
                    out.append(v)
    return out


def critical_points(phi, max_ext=None, budget=None):
    """Critical points with multiplicity, as roots of the Wronskian form.

    Over a finite field the roots are enumerated over GF(q^j), j <= max_ext
    (``None``: as far as the enumeration budget allows); FieldTooLarge if
    they do not all appear.  Over Q or GF(q)(t) only roots we can find
    without factoring are supported.
    """
    K = phi.field
    W = wronskian(phi)
    if not W.c:
        raise InseparableMap("Wronskian vanishes identically: the map is inseparable")
    out = []
    finite = W.c
    if len(finite) > 1:
        if K.is_finite:
            roots = _roots_auto(Poly.raw(K, finite, "z"), max_ext, budget)
            for r, m in roots:
                out.append((ProjPoint(r.field, r.v), m))
        else:
            roots, rest = _rational_roots(K, finite)
            if len(rest) > 1:
                raise CriticalPointsUnavailable(
                    f"Wronskian factor of degree {len(rest) - 1} over {K} has no solvable roots"
                )
            for r, m in roots:
                out.append((ProjPoint(K, r), m))
    e = W.infinity_multiplicity
    if e:
        out.append((ProjPoint.infinity(K), e))
    return out


def _roots_auto(f, max_ext, budget=None):
    b = budget or _budget.current()
    q = f.field.order
    deg = f.degree
    if max_ext is None:
        j = 1
        while j < deg and q ** (j + 1) <= b.enumeration:
            j += 1
        max_ext = j
    roots = poly_roots_enum(f, max_ext, b)
    if sum(m for _, m in roots) != deg:
        raise FieldTooLarge(f"{f} does not split over GF({q}^j) for j <= {max_ext}")
    return roots


# ---------------------------------------------------------------------------
# dynatomic polynomials and multipliers


def dynatomic(phi, n, budget=None):
    """Dynatomic form Phi_n = prod_{k | n} (Z F_k - X G_k)^mu(n/k)."""
    K = phi.field
    d = phi.degree
    numer, denom = [K.one], [K.one]
    for k in divisors(n):
        mu = mobius_mu(n // k)
        if mu == 0:
            continue
        Fk, Gk = _iterate_pair(phi, k, budget)
        per = dense.sub(K, dense.trim(K, list(Fk)), dense.shift(K, dense.trim(K, list(Gk)), 1))
        if mu == 1:
            numer = dense.mul(K, numer, per)
        else:
            denom = dense.mul(K, denom, per)
    return BinaryForm(K, dense.exact_div(K, numer, denom), period_count(d, n))


def _chart_derivative(K, F, G, pt):
    """Derivative of the map at ``pt`` in the charts z (finite) or 1/z (infinity)."""
    if pt.is_infinity:
        f, f1 = F[-1], F[-2]
        g, g1 = G[-1], G[-2]
    else:
        x = pt.x
        fl = dense.trim(K, list(F))
        gl = dense.trim(K, list(G))
        f = dense.evaluate(K, fl, x)
        g = dense.evaluate(K, gl, x)
        f1 = dense.evaluate(K, dense.derivative(K, fl), x)
        g1 = dense.evaluate(K, dense.derivative(K, gl), x)
    if g != K.zero:
        return K.div(K.sub(K.mul(f1, g), K.mul(f, g1)), K.mul(g, g))
    # image is infinity: differentiate 1/phi instead
    return K.div(g1, f)


def multiplier_at(phi, z, n=1):
    """Multiplier (phi^n)'(z) at a point with phi^n(z) = z.

    Computed as the product of local derivatives along the orbit, each in
    the chart z or 1/z; charts cancel around a cycle.
    """
    L = z.field
    psi = phi.embed(L)
    pts = [z]
    for _ in range(n):
        pts.append(map_evaluate(psi, pts[-1]))
    if pts[-1] != z:
        raise NotPeriodic(f"{z} is not fixed by the {n}-th iterate")
    lam = L.one
    for p in pts[:-1]:
        lam = L.mul(lam, _chart_derivative(L, psi.F, psi.G, p))
    return FieldElement(L, lam)


@dataclass
class MultiplierData:
    """Multiplier polynomial M_n(T) = prod (T - lambda) over formal period-n points."""

    n: int
    poly: Poly
    K: int
    strategy: str = "direct"

    @property
    def sigma(self):
        """Elementary symmetric functions (sigma_1, ..., sigma_K) of the multipliers."""
        F = self.poly.field
        c = self.poly.c + [F.zero] * (self.K + 1 - len(self.poly.c))
        out = []
        for i in range(1, self.K + 1):
            v = c[self.K - i]
            out.append(FieldElement(F, v if i % 2 == 0 else F.neg(v)))
        return out

    @property
    def field(self):
        return self.poly.field


def _charpoly_of(K, lam, f):
    """prod over roots a of f of (T - lam(a)); f monic."""
    n = len(f) - 1
    if n == 0:
        return [K.one]
    if len(lam) <= 1:
        c = lam[0] if lam else K.zero
        return dense.power(K, [K.neg(c), K.one], n)
    return linalg.charpoly(K, linalg.multiplication_matrix(K, lam, f))


def _spectrum_affine(phi, n, Phi, budget=None):
    """Multiplier polynomial without moving points; None if a periodic orbit
    other than a fixed infinity passes through infinity."""
    K = phi.field
    e = Phi.infinity_multiplicity
    inf_fixed = phi.G[-1] == K.zero
    if e and not inf_fixed:
        return None
    f = dense.monic(K, Phi.c)
    Fn, Gn = _iterate_pair(phi, n, budget)
    fn = dense.trim(K, list(Fn))
    gn = dense.trim(K, list(Gn))
    N = dense.sub(K, dense.mul(K, dense.derivative(K, fn), gn), dense.mul(K, fn, dense.derivative(K, gn)))
    D = dense.mul(K, gn, gn)
    if len(f) > 1:
        Dr = dense.rem(K, D, f)
        try:
            Dinv = dense.inverse_mod(K, Dr, f)
        except DivideByZero:
            return None
        lam = dense.rem(K, dense.mul(K, dense.rem(K, N, f), Dinv), f)
        M = _charpoly_of(K, lam, f)
    else:
        M = [K.one]
    if e:
        mu = _chart_derivative(K, phi.F, phi.G, ProjPoint.infinity(K))
        M = dense.mul(K, M, dense.power(K, [K.neg(K.pow(mu, n)), K.one], e))
    return M


def _basepoint_candidates(K):
    if K.kind in ("prime", "extension"):
        yield from ((K, c) for c in K.elements())
        j = 2
        while True:
            L = extension(K, j)
            yield from ((L, c) for c in L.elements())
            j += 1
    elif K.kind == "rationals":
        yield (K, K.zero)
        m = 1
        while True:
            yield (K, K.from_int(m))
            yield (K, K.from_int(-m))
            m += 1
    else:
        B = K.base
        p = K.characteristic or 10
        m = 0
        while True:
            digits, x = [], m
            while x:
                x, r = divmod(x, p)
                digits.append(B.from_int(r))
            if not digits:
                digits = [B.zero]
            yield (K, K.make(digits))
            m += 1


def _is_low_period(phi, pt, n):
    cur = pt
    for _ in range(n):
        cur = map_evaluate(phi, cur)
        if cur == pt:
            return True
    return False


def multiplier_spectrum(phi, n, budget=None, max_basepoint_ext=4):
    """M_n(T) and Lambda_n for the formal period-n points of ``phi``."""
    b = budget or _budget.current()
    K = phi.field
    Phi = dynatomic(phi, n, b)
    M = _spectrum_affine(phi, n, Phi, b)
    strategy = "direct" if not Phi.infinity_multiplicity else "direct+infinity"
    if M is None:
        strategy = "conjugated"
        tried = 0
        for L, c in _basepoint_candidates(K):
            if L.is_finite and L.degree > K.degree * max_basepoint_ext:
                break
            tried += 1
            if tried > 10**5:
                break
            psi = phi.embed(L)
            if _is_low_period(psi, ProjPoint(L, c), n):
                continue
            A = MobiusTransform(L, L.zero, L.one, L.one, L.neg(c))
            conj = map_conjugate(psi, A)
            M = _spectrum_affine(conj, n, dynatomic(conj, n, b), b)
            if M is None:
                continue
            if L != K:
                emb = embedding(K, L)
                M = [emb.pull(x) for x in M]
            break
        if M is None:
            raise ConjugationSearchFailed("no non-periodic basepoint found")
    return MultiplierData(n, Poly.raw(K, M, "T"), period_count(phi.degree, n), strategy)


# ---------------------------------------------------------------------------
# orbits and PCF


@dataclass
class Orbit:
    start: ProjPoint
    found: bool
    tail: Optional[int] = None
    cycle: Optional[int] = None
    steps: int = 0

    def __str__(self):
        if not self.found:
            return f"NotFoundWithinBound({self.steps})"
        return f"tail {self.tail}, cycle {self.cycle}"


def orbit(phi, pt, bound, budget=None):
    """Forward orbit until a repeat (tail and cycle lengths) or ``bound`` steps."""
    b = budget or _budget.current()
    psi = phi.embed(pt.field)
    K = pt.field
    seen = {pt: 0}
    cur = pt
    for i in range(1, bound + 1):
        cur = map_evaluate(psi, cur)
        if K.kind == "rational-function" and K.t_degree(cur.x) > b.max_coeff_degree:
            return Orbit(pt, False, steps=i)
        if cur in seen:
            t = seen[cur]
            return Orbit(pt, True, t, i - t, i)
        seen[cur] = i
    return Orbit(pt, False, steps=bound)


@dataclass
class PCFResult:
    status: str  # "PCF", "NotPCFWithinBound", "Wild"
    orbits: list = field(default_factory=list)
    reason: str = ""


def pcf_check(phi, bound, max_ext=None, budget=None):
    try:
        crit = critical_points(phi, max_ext, budget)
    except InseparableMap as e:
        return PCFResult("Wild", [], str(e))
    orbits = [(c, m, orbit(phi, c, bound, budget)) for c, m in crit]
    status = "PCF" if all(o.found for _, _, o in orbits) else "NotPCFWithinBound"
    return PCFResult(status, orbits)


# ---------------------------------------------------------------------------
# conjugacy


def pgl2_elements(L):
    """All of PGL_2(L) in canonical order: a = 0 block first, then a = 1."""
    zero, one = L.zero, L.one
    elems = list(L.elements())
    for c in elems:
        if c == zero:
            continue
        for d in elems:
            yield (zero, one, c, d)
    for b in elems:
        for c in elems:
            bc = L.mul(b, c)
            for d in elems:
                if d != bc:
                    yield (one, b, c, d)


def pgl2_order(q):
    return q * (q * q - 1)


def _projective_points(L, limit):
    pts = [(x, L.one) for x in L.elements()] + [(L.one, L.zero)]
    return pts[:limit]


def conjugacy_test(phi, psi, max_ext=1, budget=None):
    """Search PGL_2(GF(q^j)), j <= max_ext, for A with A phi A^-1 = psi.

    Candidates are screened by A(phi(s)) = psi(A(s)) at sample points; two
    degree-d maps that agree at 2d+1 points coincide, so with enough points
    the screen is conclusive, otherwise the conjugate is compared exactly.
    """
    if phi.field != psi.field:
        raise FieldMismatch(f"{phi.field} vs {psi.field}")
    if phi.degree != psi.degree:
        return None
    K = phi.field
    if not K.is_finite:
        raise ValueError("conjugacy search needs a finite field")
    b = budget or _budget.current()
    d = phi.degree
    if phi == psi:
        return MobiusTransform.identity(K)
    for j in range(1, max_ext + 1):
        L = extension(K, j)
        b.check_enumeration(pgl2_order(L.order), f"PGL2({L})")
    for j in range(1, max_ext + 1):
        L = extension(K, j)
        A = _conjugacy_search(phi.embed(L), psi.embed(L), d, b)
        if A is not None:
            return A
    return None


def _conjugacy_search(phi, psi, d, b):
    L = phi.field
    samples = _projective_points(L, 2 * d + 1)
    conclusive = len(samples) >= 2 * d + 1
    images = [(map_evaluate(phi, ProjPoint(L, x, z))) for x, z in samples]
    pre = [(x, z, im.x, im.z) for (x, z), im in zip(samples, images)]
    PF, PG = list(psi.F), list(psi.G)
    add, mul = L.add, L.mul
    b.count("pgl2_candidates", pgl2_order(L.order))
    for a, bb, c, dd in pgl2_elements(L):
        ok = True
        for x, z, u, w in pre:
            X = add(mul(a, x), mul(bb, z))
            Z = add(mul(c, x), mul(dd, z))
            lhs_x = add(mul(a, u), mul(bb, w))
            lhs_z = add(mul(c, u), mul(dd, w))
            rx = _hom_eval_pt(L, PF, X, Z)
            rz = _hom_eval_pt(L, PG, X, Z)
            if mul(lhs_x, rz) != mul(lhs_z, rx):
                ok = False
                break
        if not ok:
            continue
        A = MobiusTransform(L, a, bb, c, dd)
        if conclusive or map_conjugate(phi, A) == psi:
            return A
    return None
