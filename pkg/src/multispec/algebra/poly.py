"""Univariate polynomials over a :class:`~multispec.algebra.fields.Field`."""

from __future__ import annotations

from .. import budget as _budget
from ..errors import FieldMismatch, FieldTooLarge
from . import dense
from .fields import FieldElement, embedding, extension

ZERO_DEGREE = -1
"""Degree reported for the zero polynomial."""


class Poly:
    __slots__ = ("field", "c", "var")

    def __init__(self, field, coeffs=(), var="x"):
        self.field = field
        self.c = dense.trim(field, [field.coerce(x) for x in coeffs])
        self.var = var

    @classmethod
    def raw(cls, field, coeffs, var="x"):
        p = cls.__new__(cls)
        p.field = field
        p.c = dense.trim(field, list(coeffs))
        p.var = var
        return p

    @classmethod
    def gen(cls, field, var="x"):
        return cls.raw(field, [field.zero, field.one], var)

    @classmethod
    def from_roots(cls, roots, var="x"):
        roots = list(roots)
        F = roots[0].field
        acc = [F.one]
        for r in roots:
            acc = dense.mul(F, acc, [F.neg(r.v), F.one])
        return cls.raw(F, acc, var)

    # -- basic data ---------------------------------------------------------
    @property
    def degree(self):
        return len(self.c) - 1 if self.c else ZERO_DEGREE

    @property
    def coeffs(self):
        return [FieldElement(self.field, x) for x in self.c]

    def coeff(self, i):
        if 0 <= i < len(self.c):
            return FieldElement(self.field, self.c[i])
        return FieldElement(self.field, self.field.zero)

    @property
    def lc(self):
        return FieldElement(self.field, self.c[-1] if self.c else self.field.zero)

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.c
        if isinstance(other, (int, FieldElement)):
            v = self.field.coerce(other)
            return [v] if v != self.field.zero else []
        return None

    def _new(self, coeffs):
        return Poly.raw(self.field, coeffs, self.var)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(dense.add(self.field, self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(dense.sub(self.field, self.c, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(dense.sub(self.field, o, self.c))

    def __neg__(self):
        return self._new(dense.neg(self.field, self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(dense.mul(self.field, self.c, o))

    __rmul__ = __mul__

    def __pow__(self, n):
        return self._new(dense.power(self.field, self.c, n))

    def __divmod__(self, other):
        o = self._coerce(other)
        q, r = dense.divmod_(self.field, self.c, o)
        return self._new(q), self._new(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        return self._new(dense.exact_div(self.field, self.c, self._coerce(other)))

    def monic(self):
        return self._new(dense.monic(self.field, self.c))

    def derivative(self):
        return self._new(dense.derivative(self.field, self.c))

    def gcd(self, other):
        return self._new(dense.gcd(self.field, self.c, self._coerce(other)))

    def resultant(self, other):
        return FieldElement(self.field, dense.resultant(self.field, self.c, self._coerce(other)))

    def compose(self, other):
        return self._new(dense.compose(self.field, self.c, other.c))

    def __call__(self, x):
        if isinstance(x, Poly):
            return self.compose(x)
        v = self.field.coerce(x)
        return FieldElement(self.field, dense.evaluate(self.field, self.c, v))

    def map_coeffs(self, target, fn):
        return Poly.raw(target, [fn(x) for x in self.c], self.var)

    # -- comparison / display -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.c == other.c
        if isinstance(other, (int, FieldElement)):
            return self.c == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, tuple(self.c)))

    def __str__(self):
        return format_poly(self.field, self.c, self.var)

    def __repr__(self):
        return f"Poly({self}, {self.field})"


def format_poly(F, coeffs, var="x"):
    """Human-readable form, e.g. ``T^3 + 5T^2``; highest degree first."""
    if not coeffs:
        return "0"
    out = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == F.zero:
            continue
        s = F.format(c)
        negative = F.kind == "rationals" and c < 0
        if negative:
            s = F.format(-c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        simple = s.isdigit()
        if i == 0:
            term = s if simple else f"({s})"
        elif s == "1":
            term = mono
        else:
            term = (s if simple else f"({s})") + mono
        if not out:
            out.append(("-" if negative else "") + term)
        else:
            out.append(("- " if negative else "+ ") + term)
    return " ".join(out)


# ---------------------------------------------------------------------------
# module-level operations


def poly_gcd(f, g):
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")
    return f.gcd(g)


def poly_resultant(f, g):
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")
    return f.resultant(g)


def poly_exact_div(f, g):
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")
    return f.exact_div(g)


def min_extension_degree(L, x, q, j):
    """Smallest i | j with x in GF(q^i), for x in L = GF(q^j)."""
    for i in range(1, j):
        if j % i == 0 and L.pow(x, q**i) == x:
            return i
    return j


def poly_roots_enum(f, max_ext=1, budget=None):
    """Roots of ``f`` over GF(q^j), j <= max_ext, by exhaustive evaluation.

    Returns ``[(root, multiplicity)]`` with each root an element of the
    smallest GF(q^j) containing it, ordered by j and then by canonical
    element order.
    """
    F = f.field
    if not F.is_finite:
        raise ValueError("root enumeration needs a finite coefficient field")
    if f.is_zero():
        raise ValueError("zero polynomial has every root")
    b = budget or _budget.current()
    q = F.order
    b.check_enumeration(q**max_ext, f"roots over GF({q}^{max_ext})")
    deg = f.degree
    found = []
    total = 0
    for j in range(1, max_ext + 1):
        if total >= deg:
            break
        L = extension(F, j)
        emb = embedding(F, L)
        coeffs = [emb(x) for x in f.c]
        b.count("enumerated", L.order)
        for x in L.elements():
            if dense.evaluate(L, coeffs, x) != L.zero:
                continue
            if j > 1 and min_extension_degree(L, x, q, j) != j:
                continue
            m = dense.multiplicity(L, coeffs, x)
            found.append((FieldElement(L, x), m))
            total += m
            if total >= deg:
                break
    return found


def split_completely(f, max_ext, budget=None):
    """Like :func:`poly_roots_enum`, but raise unless all roots were found."""
    roots = poly_roots_enum(f, max_ext, budget)
    if sum(m for _, m in roots) != f.degree:
        raise FieldTooLarge(
            f"{f} does not split over extensions of degree <= {max_ext} of {f.field}"
        )
    return roots
