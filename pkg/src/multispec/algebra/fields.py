"""Exact fields: GF(p), GF(p^k), the rationals, and rational function fields.

Each field object does arithmetic on *raw* values and hands out
:class:`FieldElement` wrappers for user-facing code.  Raw values are

* ``int`` in ``range(p)`` for :class:`PrimeField`;
* ``int`` in ``range(q)`` for :class:`ExtensionField`, read as the base-p
  digit vector of a polynomial of degree < k in the generator ``g``;
* :class:`fractions.Fraction` for :class:`RationalField`;
* ``(num, den)`` tuples of base-field raw coefficient tuples for
  :class:`FunctionField`, reduced with monic denominator.

Raw values are canonical, so raw equality is field equality.
"""

from __future__ import annotations

import random as _random
from fractions import Fraction

from ..errors import DivideByZero, FieldMismatch, NotPrime, ReducibleModulus
from . import dense
from .numtheory import factorint, is_prime


class Field:
    kind = "abstract"
    characteristic = 0
    degree = 1
    order = None
    zero = None
    one = None
    var = None

    @property
    def is_finite(self):
        return self.order is not None

    def __call__(self, value):
        return FieldElement(self, self.coerce(value))

    def element(self, raw):
        return FieldElement(self, raw)

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.field == self:
                return value.v
            raise FieldMismatch(f"element of {value.field} used in {self}")
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, str):
            from ..textio import parse_element

            return parse_element(self, value).v
        return self._coerce_other(value)

    def _coerce_other(self, value):
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def is_zero(self, a):
        return a == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<{self}>"


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p):
        self.p = p
        self.characteristic = p
        self.order = p
        self.zero = 0
        self.one = 1 % p
        self.key = ("prime", p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise DivideByZero(f"inverse of 0 in GF({self.p})")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return iter(range(self.p))

    def random_raw(self, rng):
        return rng.randrange(self.p)

    def format(self, a):
        return str(a)

    def __str__(self):
        return f"GF({self.p})"


def _digits(n, p, k):
    out = []
    for _ in range(k):
        n, r = divmod(n, p)
        out.append(r)
    return out


def _undigits(ds, p):
    n = 0
    for d in reversed(ds):
        n = n * p + d
    return n


class ExtensionField(Field):
    """GF(p^k) as GF(p)[g]/(modulus), with log/Zech tables for speed."""

    kind = "extension"

    def __init__(self, p, modulus):
        modulus = tuple(modulus)
        self.p = p
        self.characteristic = p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.order = p**self.degree
        self.zero = 0
        self.one = 1
        self.gen = p
        self.key = ("extension", p, modulus)
        self._base = PrimeField(p)
        self._build_tables()

    # slow vector arithmetic, used only to build the tables
    def _vmul(self, a, b):
        F = self._base
        prod = dense.mul(F, dense.trim(F, _digits(a, self.p, self.degree)),
                         dense.trim(F, _digits(b, self.p, self.degree)))
        r = dense.rem(F, prod, list(self.modulus))
        return _undigits(r, self.p)

    def _vpow(self, a, n):
        result = 1
        while n:
            if n & 1:
                result = self._vmul(result, a)
            n >>= 1
            if n:
                a = self._vmul(a, a)
        return result

    def _build_tables(self):
        p, k, q = self.p, self.degree, self.order
        m = q - 1
        primes = list(factorint(m))
        g = None
        for cand in range(2, q) if q > 2 else [1]:
            if all(self._vpow(cand, m // r) != 1 for r in primes):
                g = cand
                break
        self.primitive = g
        exp = [0] * m
        log = [0] * q
        x = 1
        for i in range(m):
            exp[i] = x
            log[x] = i
            x = self._vmul(x, g)
        self._exp, self._log = exp, log
        neg = [0] * q
        for a in range(q):
            neg[a] = _undigits([(-d) % p for d in _digits(a, p, k)], p)
        self._neg = neg
        zech = [0] * m
        for i in range(m):
            v = exp[i]
            c = v % p
            w = v - c + (c + 1) % p
            zech[i] = -1 if w == 0 else log[w]
        self._zech = zech
        self._m = m

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        log = self._log
        la = log[a]
        z = self._zech[(log[b] - la) % self._m]
        if z < 0:
            return 0
        return self._exp[(la + z) % self._m]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self._m]

    def inv(self, a):
        if a == 0:
            raise DivideByZero(f"inverse of 0 in {self}")
        return self._exp[(-self._log[a]) % self._m]

    def pow(self, a, n):
        if a == 0:
            if n < 0:
                raise DivideByZero(f"inverse of 0 in {self}")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % self._m]

    def from_int(self, n):
        return n % self.p

    def from_vec(self, coeffs):
        return _undigits([c % self.p for c in coeffs], self.p)

    def to_vec(self, a):
        return _digits(a, self.p, self.degree)

    def elements(self):
        return iter(range(self.order))

    def random_raw(self, rng):
        return rng.randrange(self.order)

    def format(self, a):
        ds = self.to_vec(a)
        terms = []
        for i in range(self.degree - 1, -1, -1):
            c = ds[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "g" if i == 1 else f"g^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def __str__(self):
        return f"GF({self.p}^{self.degree})"


class RationalField(Field):
    kind = "rationals"

    def __init__(self):
        self.characteristic = 0
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.key = ("rationals",)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivideByZero("inverse of 0 in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise DivideByZero("division by 0 in Q")
        return a / b

    def pow(self, a, n):
        if a == 0 and n < 0:
            raise DivideByZero("inverse of 0 in Q")
        return a**n

    def from_int(self, n):
        return Fraction(n)

    def _coerce_other(self, value):
        if isinstance(value, Fraction):
            return value
        return super()._coerce_other(value)

    def random_raw(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    def format(self, a):
        return str(a)

    def __str__(self):
        return "Q"


class FunctionField(Field):
    """The rational function field ``base(t)``, elements kept reduced."""

    kind = "rational-function"

    def __init__(self, base, var="t"):
        if base.kind == "rational-function":
            raise ValueError("nested function fields are not supported")
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        one = base.one
        self.zero = ((), (one,))
        self.one = ((one,), (one,))
        self.gen = ((base.zero, one), (one,))
        self.key = ("rational-function", base.key, var)

    def _make(self, num, den):
        B = self.base
        num = dense.trim(B, list(num))
        den = dense.trim(B, list(den))
        if not den:
            raise DivideByZero("zero denominator")
        if not num:
            return self.zero
        if len(den) > 1:
            g = dense.gcd(B, num, den)
            if len(g) > 1:
                num = dense.exact_div(B, num, g)
                den = dense.exact_div(B, den, g)
        lc = den[-1]
        if lc != B.one:
            inv = B.inv(lc)
            num = dense.scale(B, num, inv)
            den = dense.scale(B, den, inv)
        return (tuple(num), tuple(den))

    def _coerce_other(self, value):
        # a raw (num, den) pair of coefficient tuples
        if isinstance(value, tuple) and len(value) == 2 and all(isinstance(x, tuple) for x in value):
            B = self.base
            return self._make([B.coerce(c) for c in value[0]], [B.coerce(c) for c in value[1]])
        return super()._coerce_other(value)

    def make(self, num, den=None):
        """Raw element num/den from raw base coefficient lists."""
        return self._make(num, den if den is not None else [self.base.one])

    def add(self, a, b):
        B = self.base
        (n1, d1), (n2, d2) = a, b
        if not n1:
            return b
        if not n2:
            return a
        if len(d1) == 1 and len(d2) == 1:
            num = dense.add(B, list(n1), list(n2))
            if not num:
                return self.zero
            return (tuple(num), d1)
        if d1 == d2:
            return self._make(dense.add(B, list(n1), list(n2)), d1)
        g = dense.gcd(B, list(d1), list(d2))
        if len(g) == 1:
            num = dense.add(B, dense.mul(B, list(n1), list(d2)), dense.mul(B, list(n2), list(d1)))
            return self._make(num, dense.mul(B, list(d1), list(d2)))
        d1g = dense.exact_div(B, list(d1), g)
        d2g = dense.exact_div(B, list(d2), g)
        num = dense.add(B, dense.mul(B, list(n1), d2g), dense.mul(B, list(n2), d1g))
        return self._make(num, dense.mul(B, d1g, list(d2)))

    def neg(self, a):
        return (tuple(dense.neg(self.base, list(a[0]))), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        B = self.base
        (n1, d1), (n2, d2) = a, b
        if not n1 or not n2:
            return self.zero
        if len(d1) == 1 and len(d2) == 1:
            return (tuple(dense.mul(B, list(n1), list(n2))), d1)
        n1, d1, n2, d2 = list(n1), list(d1), list(n2), list(d2)
        if len(d2) > 1:
            g = dense.gcd(B, n1, d2)
            if len(g) > 1:
                n1, d2 = dense.exact_div(B, n1, g), dense.exact_div(B, d2, g)
        if len(d1) > 1:
            g = dense.gcd(B, n2, d1)
            if len(g) > 1:
                n2, d1 = dense.exact_div(B, n2, g), dense.exact_div(B, d1, g)
        num = dense.mul(B, n1, n2)
        den = dense.mul(B, d1, d2)
        lc = den[-1]
        if lc != B.one:
            inv = B.inv(lc)
            num, den = dense.scale(B, num, inv), dense.scale(B, den, inv)
        return (tuple(num), tuple(den))

    def inv(self, a):
        if not a[0]:
            raise DivideByZero("inverse of 0 in function field")
        B = self.base
        num, den = list(a[1]), list(a[0])
        inv = B.inv(den[-1])
        return (tuple(dense.scale(B, num, inv)), tuple(dense.scale(B, den, inv)))

    def from_int(self, n):
        c = self.base.from_int(n)
        if c == self.base.zero:
            return self.zero
        return ((c,), (self.base.one,))

    def const(self, c):
        """Embed a raw base-field value."""
        if c == self.base.zero:
            return self.zero
        return ((c,), (self.base.one,))

    def is_constant(self, a):
        return len(a[0]) <= 1 and len(a[1]) == 1

    def constant_value(self, a):
        if not self.is_constant(a):
            raise ValueError("element is not constant")
        return a[0][0] if a[0] else self.base.zero

    def t_degree(self, a):
        return max(len(a[0]), len(a[1])) - 1

    def random_raw(self, rng, max_deg=2):
        B = self.base
        num = [B.random_raw(rng) for _ in range(rng.randint(0, max_deg) + 1)]
        den = [B.random_raw(rng) for _ in range(rng.randint(0, max_deg))] + [B.one]
        return self._make(num, den)

    def specialize(self, a, c, target=None, emb=None):
        """Evaluate at t = c; ``c`` raw in ``target`` (default the base field)."""
        T = target or self.base
        num = [emb(x) for x in a[0]] if emb else list(a[0])
        den = [emb(x) for x in a[1]] if emb else list(a[1])
        dv = dense.evaluate(T, den, c)
        if dv == T.zero:
            raise DivideByZero("denominator vanishes at the specialization")
        return T.div(dense.evaluate(T, num, c), dv)

    def _fmt_poly(self, coeffs):
        B = self.base
        terms = []
        for i in range(len(coeffs) - 1, -1, -1):
            c = coeffs[i]
            if c == B.zero:
                continue
            cs = B.format(c)
            simple = cs.lstrip("-").isdigit()
            if i == 0:
                terms.append(cs if simple else f"({cs})")
                continue
            mono = self.var if i == 1 else f"{self.var}^{i}"
            if c == B.one:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}" if simple else f"({cs})*{mono}")
        s = "+".join(terms) if terms else "0"
        return s.replace("+-", "-")

    def format(self, a):
        num = self._fmt_poly(a[0])
        if len(a[1]) == 1:
            return num
        return f"({num})/({self._fmt_poly(a[1])})"

    def __str__(self):
        return f"{self.base}({self.var})"


class FieldElement:
    __slots__ = ("field", "v")

    def __init__(self, field, raw):
        self.field = field
        self.v = raw

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.v
        if isinstance(other, int):
            return self.field.from_int(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.v, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(o, self.v))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.v, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.div(o, self.v))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.v))

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow(self.v, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.v))

    def is_zero(self):
        return self.v == self.field.zero

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.v == other.v
        if isinstance(other, int):
            return self.v == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.v))

    def __str__(self):
        return self.field.format(self.v)

    def __repr__(self):
        return f"{self.field}({self})"


# ---------------------------------------------------------------------------
# construction

_cache: dict = {}


def _is_irreducible(p, modulus):
    """Trial gcd with x^(p^j) - x for j <= k/2."""
    F = PrimeField(p)
    f = dense.monic(F, dense.trim(F, [c % p for c in modulus]))
    k = len(f) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(1, k // 2 + 1):
        h = _powmod(F, h, p, f)
        if len(dense.gcd(F, f, dense.sub(F, h, x))) > 1:
            return False
    return True


def _powmod(F, a, n, m):
    result = [F.one]
    while n:
        if n & 1:
            result = dense.rem(F, dense.mul(F, result, a), m)
        n >>= 1
        if n:
            a = dense.rem(F, dense.mul(F, a, a), m)
    return result


def first_irreducible(p, k):
    """First monic irreducible of degree k, lower coefficients in base-p counting order."""
    for n in range(p**k):
        cand = _digits(n, p, k) + [1]
        if _is_irreducible(p, cand):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")


def field_make(p, k=1, modulus=None):
    """Build GF(p^k), or Q for ``p == 0``.

    ``modulus`` is a constant-first coefficient list (or a Poly over GF(p)).
    Without it the first irreducible in counting order is used.
    """
    if p == 0:
        if k != 1:
            raise ValueError("Q has no extensions here")
        return _cached(("rationals",), RationalField)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be positive")
    if modulus is not None:
        if hasattr(modulus, "coeffs"):
            modulus = [int(str(c)) for c in modulus.coeffs]
        mod = [int(c) % p for c in modulus]
        while mod and mod[-1] == 0:
            mod.pop()
        if len(mod) - 1 != k:
            raise ReducibleModulus(f"modulus has degree {len(mod) - 1}, expected {k}")
        inv = pow(mod[-1], -1, p)
        mod = [(c * inv) % p for c in mod]
        if not _is_irreducible(p, mod):
            raise ReducibleModulus(f"modulus {mod} is reducible over GF({p})")
        if k == 1:
            return _cached(("prime", p), lambda: PrimeField(p))
        return _cached(("extension", p, tuple(mod)), lambda: ExtensionField(p, mod))
    if k == 1:
        return _cached(("prime", p), lambda: PrimeField(p))
    mod = _cache.get(("default-modulus", p, k))
    if mod is None:
        mod = first_irreducible(p, k)
        _cache[("default-modulus", p, k)] = mod
    return _cached(("extension", p, mod), lambda: ExtensionField(p, mod))


def function_field(base, var="t"):
    return _cached(("rational-function", base.key, var), lambda: FunctionField(base, var))


def _cached(key, make):
    f = _cache.get(key)
    if f is None:
        f = make()
        _cache[key] = f
    return f


def rationals():
    return field_make(0)


def extension(F, j):
    """GF(q^j) over the same prime, built with its own default modulus."""
    if j == 1:
        return F
    return field_make(F.characteristic, F.degree * j)


class Embedding:
    """Field embedding GF(q) -> GF(q^j) sending the generator to the first
    root (in canonical element order) of the smaller field's modulus."""

    def __init__(self, small, big):
        self.small, self.big = small, big
        if small == big:
            self.table = None
            self.image = None
            return
        if big.degree % small.degree or big.characteristic != small.characteristic:
            raise FieldMismatch(f"{small} does not embed in {big}")
        if small.kind == "prime":
            self.table = list(range(small.p))
        else:
            mod = list(small.modulus)
            root = None
            for r in big.elements():
                if dense.evaluate(big, [big.from_int(c) for c in mod], r) == big.zero:
                    root = r
                    break
            powers = [big.one]
            for _ in range(small.degree - 1):
                powers.append(big.mul(powers[-1], root))
            table = []
            for a in small.elements():
                acc = big.zero
                for c, pw in zip(small.to_vec(a), powers):
                    if c:
                        acc = big.add(acc, big.mul(big.from_int(c), pw))
                table.append(acc)
            self.table = table
        self.image = {v: i for i, v in enumerate(self.table)}

    def __call__(self, a):
        if self.table is None:
            return a
        return self.table[a]

    def pull(self, b):
        """Inverse on the image; raises ValueError outside it."""
        if self.image is None:
            return b
        try:
            return self.image[b]
        except KeyError:
            raise ValueError("element is not in the image of the embedding") from None


def embedding(small, big):
    key = ("embedding", small.key, big.key)
    e = _cache.get(key)
    if e is None:
        e = Embedding(small, big)
        _cache[key] = e
    return e


def field_arith(a, b, op):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def default_rng(seed=0):
    return _random.Random(seed)
