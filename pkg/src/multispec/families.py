"""One-parameter families of maps over GF(q)(t), Lattès maps, and family probes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import dense
from .algebra.fields import FieldElement, embedding
from .algebra.poly import Poly
from .dynamics import (
    ProjPoint,
    RationalMap,
    conjugacy_test,
    map_evaluate,
    map_make,
    multiplier_spectrum,
)
from .errors import (
    BadSpecialization,
    DegenerateMap,
    DivideByZero,
    SingularCurve,
    Unsupported,
    UnsupportedM,
)


class Family:
    """A map over base(t), viewed as a family of maps parametrized by t."""

    def __init__(self, phi, expected_m1=None):
        if phi.field.kind != "rational-function":
            raise ValueError("a family needs a map over a function field")
        self.map = phi
        self.expected_m1 = expected_m1
        self._cache = {}
        self._model = self._polynomial_model()

    def _polynomial_model(self):
        """Coefficients rescaled into base[t] with no common factor, so that
        specializing t never meets a denominator."""
        B = self.base
        coeffs = list(self.map.F) + list(self.map.G)
        den = [B.one]
        for num_c, den_c in coeffs:
            den_c = list(den_c)
            g = dense.gcd(B, den, den_c)
            den = dense.mul(B, den, dense.exact_div(B, den_c, g))
        nums = [dense.mul(B, list(n), dense.exact_div(B, den, list(d))) for n, d in coeffs]
        content = []
        for n in nums:
            content = dense.gcd(B, content, n) if content else dense.monic(B, n) if n else []
        if len(content) > 1:
            nums = [dense.exact_div(B, n, content) if n else n for n in nums]
        K = self.field
        return [K.make(n) if n else K.zero for n in nums]

    @property
    def field(self):
        return self.map.field

    @property
    def base(self):
        return self.map.field.base

    @property
    def var(self):
        return self.map.field.var

    @property
    def degree(self):
        return self.map.degree

    def specialize(self, c, target=None):
        """The member at t = c, over ``target`` (default: the field of c)."""
        B = self.base
        if isinstance(c, FieldElement):
            target = target or c.field
            raw = c.v if c.field == target else embedding(c.field, target)(c.v)
        else:
            target = target or B
            raw = target.coerce(c)
        key = (target.key, raw)
        if key in self._cache:
            return self._cache[key]
        K = self.field
        emb = embedding(B, target) if target != B else None
        try:
            vals = [K.specialize(x, raw, target, emb) for x in self._model]
            F, G = vals[: self.degree + 1], vals[self.degree + 1:]
            phi = map_make(F, G, target, degree=self.degree, raw=True)
        except (DivideByZero, DegenerateMap) as e:
            raise BadSpecialization(f"t = {target.format(raw)}: {e}") from None
        self._cache[key] = phi
        return phi

    def __str__(self):
        return str(self.map)

    def __repr__(self):
        return f"Family({self.map}, {self.field})"


@dataclass
class IsospectralResult:
    isospectral: bool
    spectra: list  # MultiplierData per n
    witness: Optional[tuple] = None  # (n, index i of sigma_i, value)

    @property
    def constant_field(self):
        """Every computed coordinate lies in the constant field."""
        for md in self.spectra:
            K = md.field
            for s in md.sigma:
                if K.kind == "rational-function" and not K.is_constant(s.v):
                    return False
        return True

    def __str__(self):
        if self.isospectral:
            return "Isospectral"
        n, i, val = self.witness
        return f"Witness(n={n}, sigma_{i} = {val})"


def isospectral_check(fam, N=3, budget=None):
    """Isospectral iff every Lambda_n coordinate, n <= N, is constant in t."""
    phi = fam.map if isinstance(fam, Family) else fam
    K = phi.field
    spectra = []
    for n in range(1, N + 1):
        md = multiplier_spectrum(phi, n, budget)
        spectra.append(md)
        if K.kind != "rational-function":
            continue
        for i, s in enumerate(md.sigma, start=1):
            if not K.is_constant(s.v):
                return IsospectralResult(False, spectra, (n, i, s))
    return IsospectralResult(True, spectra)


def counterexample_family(psi, a, p=None):
    """phi_t(z) = psi_t(z^p) + a z for psi over GF(q)(t) and a nonzero constant a."""
    if not isinstance(psi, Poly):
        raise TypeError("psi must be a Poly over a function field")
    K = psi.field
    if K.kind != "rational-function":
        raise ValueError("psi must have coefficients in GF(q)(t)")
    p = p or K.characteristic
    if p == 0 or p != K.characteristic:
        raise ValueError(f"characteristic must be the prime {K.characteristic}")
    av = K.coerce(a)
    if av == K.zero or not K.is_constant(av):
        raise ValueError("a must be a nonzero constant")
    num = [K.zero] * (p * max(psi.degree, 0) + 1)
    for i, c in enumerate(psi.c):
        num[p * i] = c
    if len(num) < 2:
        num.append(K.zero)
    num[1] = K.add(num[1], av)
    phi = map_make(num, [K.one], K, raw=True)
    d = phi.degree
    # expected fixed-point spectrum: infinity superattracting, finite points all a
    expected = dense.mul(K, [K.zero, K.one], dense.power(K, [K.neg(av), K.one], d))
    return Family(phi, Poly.raw(K, expected, "T"))


# ---------------------------------------------------------------------------
# elliptic curves and Lattès maps


class EllipticCurve:
    """y^2 = x^3 + A x + B over a field of characteristic not 2 or 3."""

    def __init__(self, A, B, field=None):
        F = field or (A.field if isinstance(A, FieldElement) else None)
        if F is None:
            raise ValueError("field required")
        if F.characteristic in (2, 3):
            raise Unsupported("short Weierstrass form needs characteristic other than 2 and 3")
        self.field = F
        self.A = F.coerce(A)
        self.B = F.coerce(B)
        if self.discriminant == F.zero:
            raise SingularCurve(f"4A^3 + 27B^2 = 0 for A = {F.format(self.A)}, B = {F.format(self.B)}")

    @property
    def discriminant(self):
        F = self.field
        return F.add(F.mul(F.from_int(4), F.pow(self.A, 3)), F.mul(F.from_int(27), F.pow(self.B, 2)))

    @property
    def j_invariant(self):
        F = self.field
        num = F.mul(F.from_int(1728 * 4), F.pow(self.A, 3))
        return F.div(num, self.discriminant)

    def rhs(self, x):
        F = self.field
        return F.add(F.add(F.pow(x, 3), F.mul(self.A, x)), self.B)

    def points(self):
        """Affine points over a finite field, then None for the point at infinity."""
        F = self.field
        squares = {}
        for y in F.elements():
            squares.setdefault(F.mul(y, y), []).append(y)
        out = []
        for x in F.elements():
            for y in squares.get(self.rhs(x), []):
                out.append((x, y))
        out.append(None)
        return out

    def add(self, P, Q):
        F = self.field
        if P is None:
            return Q
        if Q is None:
            return P
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if F.add(y1, y2) == F.zero:
                return None
            lam = F.div(F.add(F.mul(F.from_int(3), F.mul(x1, x1)), self.A), F.mul(F.from_int(2), y1))
        else:
            lam = F.div(F.sub(y2, y1), F.sub(x2, x1))
        x3 = F.sub(F.sub(F.mul(lam, lam), x1), x2)
        y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
        return (x3, y3)

    def multiply(self, m, P):
        R = None
        for _ in range(m):
            R = self.add(R, P)
        return R

    def __str__(self):
        F = self.field
        return f"y^2 = x^3 + ({F.format(self.A)})x + ({F.format(self.B)})"


def _division_polys(E):
    """f_1..f_4 with psi_m = f_m for odd m and psi_m = y f_m for even m."""
    F = E.field
    A, B = E.A, E.B
    c = F.from_int
    m = F.mul
    f1 = [F.one]
    f2 = [c(2)]
    f3 = [F.neg(m(A, A)), m(c(12), B), m(c(6), A), F.zero, c(3)]
    f4 = dense.scale(F, [
        F.sub(F.neg(m(c(8), m(B, B))), F.pow(A, 3)),
        F.neg(m(c(4), m(A, B))),
        F.neg(m(c(5), m(A, A))),
        m(c(20), B),
        m(c(5), A),
        F.zero,
        F.one,
    ], c(4))
    return [None, f1, f2, f3, f4]


def lattes_from_curve(E, m=2, translation=None):
    """The map x(P) -> x(mP) on the x-line of E."""
    if translation is not None:
        raise Unsupported("Lattès maps with a 2-torsion translation are not implemented")
    if m not in (2, 3):
        raise UnsupportedM(f"m = {m}; only m = 2 and m = 3 are supported")
    F = E.field
    p = F.characteristic
    if p and (2 * m) % p == 0:
        raise Unsupported(f"characteristic {p} divides 2m = {2 * m}")
    f = _division_polys(E)
    R = [E.B, E.A, F.zero, F.one]
    X = [F.zero, F.one]
    sq = dense.mul(F, f[m], f[m])
    prod = dense.mul(F, f[m - 1], f[m + 1])
    if m % 2 == 0:
        den = dense.mul(F, R, sq)
        num = dense.sub(F, dense.mul(F, X, den), prod)
    else:
        den = sq
        num = dense.sub(F, dense.mul(F, X, sq), dense.mul(F, R, prod))
    g = dense.gcd(F, num, den)
    if len(g) > 1:
        num, den = dense.exact_div(F, num, g), dense.exact_div(F, den, g)
    return map_make(num, den, F, raw=True)


@dataclass
class LattesReport:
    curve: EllipticCurve
    map: RationalMap
    result: IsospectralResult
    j_nonconstant: bool

    @property
    def constant_field(self):
        return self.result.constant_field


def lattes_isospectral_probe(A, B, N=2, field=None, m=2, budget=None):
    E = EllipticCurve(A, B, field)
    phi = lattes_from_curve(E, m)
    K = E.field
    jv = E.j_invariant
    j_nonconst = K.kind == "rational-function" and not K.is_constant(jv)
    if K.kind == "rational-function":
        res = isospectral_check(Family(phi), N, budget)
    else:
        res = isospectral_check(phi, N, budget)
    return LattesReport(E, phi, res, j_nonconst)


# ---------------------------------------------------------------------------
# triviality


@dataclass
class TrivialityResult:
    all_conjugate: bool
    witnesses: list = field(default_factory=list)  # (c1, c2, MobiusTransform)
    distinct: Optional[tuple] = None

    def __str__(self):
        if self.all_conjugate:
            return "AllConjugate"
        return f"Distinct({self.distinct[0]}, {self.distinct[1]})"


def triviality_probe(fam, values, max_ext=1, target=None, budget=None):
    """Pairwise PGL_2 conjugacy of specializations; a necessary-condition probe."""
    target = target or fam.base
    vals = [FieldElement(target, target.coerce(v)) if not isinstance(v, FieldElement) else v for v in values]
    maps = [fam.specialize(v, target) for v in vals]
    witnesses = []
    for i in range(len(maps)):
        for j in range(i + 1, len(maps)):
            A = conjugacy_test(maps[i], maps[j], max_ext, budget)
            if A is None:
                return TrivialityResult(False, witnesses, (vals[i], vals[j]))
            witnesses.append((vals[i], vals[j], A))
    return TrivialityResult(True, witnesses)
