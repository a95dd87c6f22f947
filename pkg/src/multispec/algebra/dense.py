"""Dense univariate polynomial kernels on raw coefficient lists.

Coefficients are stored constant term first and are *raw* field values
(whatever the owning field uses internally).  Lists are kept trimmed: no
trailing zeros, and the zero polynomial is ``[]``.  Prime fields get an
integer fast path since nearly all heavy lifting happens there.
"""

from __future__ import annotations

from ..errors import DivideByZero, InexactDivision


def trim(F, a):
    z = F.zero
    n = len(a)
    while n and a[n - 1] == z:
        n -= 1
    if n != len(a):
        a = a[:n]
    return a


def degree(a):
    return len(a) - 1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    if F.kind == "prime":
        p = F.p
        out = list(a)
        for i, x in enumerate(b):
            out[i] = (out[i] + x) % p
    else:
        out = list(a)
        fadd = F.add
        for i, x in enumerate(b):
            out[i] = fadd(out[i], x)
    return trim(F, out)


def neg(F, a):
    if F.kind == "prime":
        p = F.p
        return [(-x) % p for x in a]
    return [F.neg(x) for x in a]


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, a, c):
    if c == F.zero:
        return []
    if F.kind == "prime":
        p = F.p
        return [(x * c) % p for x in a]
    fmul = F.mul
    return trim(F, [fmul(x, c) for x in a])


def shift(F, a, k):
    """Multiply by ``x**k``."""
    if not a:
        return []
    return [F.zero] * k + list(a)


def _single_term(F, a):
    z = F.zero
    idx = None
    for i, x in enumerate(a):
        if x != z:
            if idx is not None:
                return None
            idx = i
    return idx


def mul(F, a, b):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    k = _single_term(F, b) if len(b) > 1 else 0
    if k is not None:
        return shift(F, scale(F, a, b[k]), k)
    la, lb = len(a), len(b)
    if F.kind == "prime":
        p = F.p
        out = [0] * (la + lb - 1)
        for j, y in enumerate(b):
            if y:
                for i, x in enumerate(a):
                    out[i + j] += x * y
        return trim(F, [v % p for v in out])
    z = F.zero
    fadd, fmul = F.add, F.mul
    out = [z] * (la + lb - 1)
    for j, y in enumerate(b):
        if y != z:
            for i, x in enumerate(a):
                if x != z:
                    out[i + j] = fadd(out[i + j], fmul(x, y))
    return trim(F, out)


def power(F, a, n):
    result = [F.one]
    base = a
    while n:
        if n & 1:
            result = mul(F, result, base)
        n >>= 1
        if n:
            base = mul(F, base, base)
    return result


def divmod_(F, a, b):
    if not b:
        raise DivideByZero("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    inv = F.inv(b[-1])
    if F.kind == "prime":
        p = F.p
        r = list(a)
        q = [0] * (len(a) - db)
        for k in range(len(a) - 1 - db, -1, -1):
            c = (r[k + db] * inv) % p
            q[k] = c
            if c:
                for i in range(db + 1):
                    r[k + i] = (r[k + i] - c * b[i]) % p
        return trim(F, q), trim(F, r[:db])
    z = F.zero
    fsub, fmul = F.sub, F.mul
    r = list(a)
    q = [z] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = fmul(r[k + db], inv)
        q[k] = c
        if c != z:
            for i in range(db + 1):
                if b[i] != z:
                    r[k + i] = fsub(r[k + i], fmul(c, b[i]))
    return trim(F, q), trim(F, r[:db])


def rem(F, a, b):
    return divmod_(F, a, b)[1]


def exact_div(F, a, b):
    q, r = divmod_(F, a, b)
    if r:
        raise InexactDivision("nonzero remainder in exact division")
    return q


def monic(F, a):
    if not a:
        return []
    lc = a[-1]
    if lc == F.one:
        return list(a)
    return scale(F, a, F.inv(lc))


def gcd(F, a, b):
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], s0, t0
    inv = F.inv(r0[-1])
    return scale(F, r0, inv), scale(F, s0, inv), scale(F, t0, inv)


def inverse_mod(F, a, m):
    g, s, _ = xgcd(F, a, m)
    if g != [F.one]:
        raise DivideByZero("polynomial is not invertible modulo the given modulus")
    return rem(F, s, m)


def evaluate(F, a, x):
    if F.kind == "prime":
        p = F.p
        acc = 0
        for c in reversed(a):
            acc = (acc * x + c) % p
        return acc
    acc = F.zero
    fadd, fmul = F.add, F.mul
    for c in reversed(a):
        acc = fadd(fmul(acc, x), c)
    return acc


def derivative(F, a):
    return trim(F, [F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def compose(F, a, b):
    """``a(b(x))`` by Horner."""
    acc = []
    for c in reversed(a):
        acc = add(F, mul(F, acc, b), [c] if c != F.zero else [])
    return acc


def resultant(F, a, b):
    """Resultant over a field by the Euclidean remainder sequence.

    Uses ``Res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r) Res(b, r)``
    with ``r = a mod b``; every step is an exact field operation.
    """
    if not a or not b:
        return F.zero
    da, db = len(a) - 1, len(b) - 1
    acc = F.one
    while True:
        if db == 0:
            return F.mul(acc, F.pow(b[0], da))
        if da == 0:
            return F.mul(acc, F.pow(a[0], db))
        r = rem(F, a, b)
        if not r:
            return F.zero
        dr = len(r) - 1
        if (da * db) % 2:
            acc = F.neg(acc)
        acc = F.mul(acc, F.pow(b[-1], da - dr))
        a, b, da, db = b, r, db, dr


def order_at_zero(F, a):
    z = F.zero
    for i, c in enumerate(a):
        if c != z:
            return i
    return None


def multiplicity(F, a, x):
    """Multiplicity of ``x`` as a root of ``a`` (by repeated synthetic division)."""
    if not a:
        raise ValueError("zero polynomial has every root")
    m = 0
    cur = list(a)
    while len(cur) > 1:
        q, r = _synthetic(F, cur, x)
        if r != F.zero:
            break
        m += 1
        cur = q
    return m


def _synthetic(F, a, x):
    """Divide by ``(X - x)``: return (quotient, remainder)."""
    n = len(a) - 1
    q = [F.zero] * n
    acc = F.zero
    fadd, fmul = F.add, F.mul
    for i in range(n, 0, -1):
        acc = fadd(fmul(acc, x), a[i])
        q[i - 1] = acc
    r = fadd(fmul(acc, x), a[0])
    return q, r
