from fractions import Fraction
import random

import pytest

from multispec.algebra.fields import field_make, function_field
from multispec.algebra.poly import Poly
from multispec.dynamics import map_iterate, map_make, multiplier_spectrum
from multispec.errors import DegenerateMap
from multispec.families import counterexample_family
from multispec.textio import parse_place
from multispec.valuation import (
    INF,
    InfinitePlace,
    PolyPlace,
    PrimePlace,
    classify_spectrum,
    newton_polygon,
    place_valuation,
    reduce_at_place,
    tame_check,
)

Q = field_make(0)
GF5 = field_make(5)
K5 = function_field(GF5)


def random_tmap(K, rng, den_len=3):
    while True:
        try:
            return map_make([K.random_raw(rng, 1) for _ in range(3)],
                            [K.random_raw(rng, 1) for _ in range(den_len)], K, degree=2, raw=True)
        except DegenerateMap:
            continue


def t_place(K, text):
    return PolyPlace(K, K.coerce(text))


def test_valuation_examples():
    assert place_valuation(Q(12), PrimePlace(2)) == 2
    x = K5.coerce("(t^2+1)/t")
    assert place_valuation(x, t_place(K5, "t")) == -1
    assert place_valuation(x, InfinitePlace(K5)) == -1
    assert place_valuation(Q(0), PrimePlace(3)) == INF


PLACES = [
    ("prime:3", Q),
    ("prime:2", Q),
    ("place:t over 5^1", K5),
    ("place:t^2+2 over 5^1", K5),
    ("place:inf over 5^1", K5),
]


@pytest.mark.parametrize("spec,F", PLACES, ids=[p for p, _ in PLACES])
def test_valuation_axioms(spec, F):
    v = parse_place(spec)
    rng = random.Random(spec)
    for _ in range(1000):
        a, b = F.random_raw(rng), F.random_raw(rng)
        va, vb = v.valuation(a), v.valuation(b)
        if va != INF and vb != INF:
            assert v.valuation(F.mul(a, b)) == va + vb
        s = v.valuation(F.add(a, b))
        assert s >= min(va, vb)
        if va != vb:
            assert s == min(va, vb)


def test_newton_polygon_examples():
    p = 3
    f = Poly(Q, [1, 1, p])
    assert newton_polygon(f, PrimePlace(p)).root_valuations() == [(-1, 1), (0, 1)]
    g = Poly(Q, [-p, 1])
    assert newton_polygon(g, PrimePlace(p)).root_valuations() == [(1, 1)]
    h = Poly(K5, [K5.one, K5.one, K5.coerce("t")])
    assert newton_polygon(h, t_place(K5, "t")).root_valuations() == [(-1, 1), (0, 1)]


def test_polygon_lengths_add_up():
    rng = random.Random(1)
    v = PrimePlace(5)
    for _ in range(50):
        c = [Fraction(rng.randint(-50, 50), rng.choice([1, 5, 25])) for _ in range(rng.randint(2, 6))]
        f = Poly(Q, c)
        if f.is_zero() or f.degree < 1:
            continue
        np_ = newton_polygon(f, v)
        assert sum(n for _, n in np_.segments) + np_.ord0 == f.degree


@pytest.mark.parametrize("spec", ["place:t over 5^1", "place:t-2 over 5^1", "place:t^2+2 over 5^1", "place:inf over 5^1"])
def test_polygon_matches_root_valuations(spec):
    # split polynomials built from known roots; the oracle is the direct valuation of each root
    v = parse_place(spec)
    rng = random.Random(spec)
    for _ in range(50):
        deg = rng.randint(1, 3)
        roots = [K5.element(K5.random_raw(rng)) for _ in range(deg)]
        f = Poly.from_roots(roots)
        want = {}
        for r in roots:
            val = place_valuation(r, v)
            want[val] = want.get(val, 0) + 1
        got = dict(newton_polygon(f, v).root_valuations())
        assert got == want


def test_classify_examples():
    z2 = map_make([0, 0, 1], [1], Q)
    M1 = multiplier_spectrum(z2, 1)
    c = classify_spectrum(M1, PrimePlace(3))
    assert (c.attracting, c.indifferent, c.repelling) == (2, 1, 0)
    c = classify_spectrum(M1, PrimePlace(2))
    assert (c.attracting, c.indifferent, c.repelling) == (3, 0, 0)
    # T (T - t)^5 over GF(5)(t) at infinity, where v(t) = -1
    M = Poly(K5, [0, 1])
    for _ in range(5):
        M = M * Poly(K5, [-K5.element(K5.coerce("t")), K5.one])
    c = classify_spectrum(M, InfinitePlace(K5))
    assert (c.attracting, c.indifferent, c.repelling) == (1, 0, 5)


def test_classification_counts_sum_to_kn():
    F = field_make(7)
    K = function_field(F)
    rng = random.Random(4)
    v = t_place(K, "t")
    for _ in range(5):
        phi = random_tmap(K, rng, 2)
        for n in (1, 2):
            md = multiplier_spectrum(phi, n)
            c = classify_spectrum(md, v)
            assert c.attracting + c.indifferent + c.repelling == md.K


def test_reduction_examples():
    v = t_place(K5, "t")
    fam = map_make([K5.coerce("t"), 0, 1], [1], K5)
    red = reduce_at_place(fam, v)
    assert not red.dropped and red.map == map_make([0, 0, 1], [1], GF5)
    # (t X^2, XZ + Z^2) reduces to (0, XZ + Z^2) and loses degree
    phi = map_make([0, 0, K5.coerce("t")], [1, 1], K5, degree=2)
    red = reduce_at_place(phi, v)
    assert red.dropped and red.degree < 2
    assert reduce_at_place(map_make([0, 0, 1], [1], Q), PrimePlace(3)).map == map_make([0, 0, 1], [1], field_make(3))


def test_reduction_commutes_with_iteration():
    F = field_make(5)
    K = function_field(F)
    v = t_place(K, "t")
    rng = random.Random(9)
    done = 0
    while done < 20:
        phi = random_tmap(K, rng)
        red = reduce_at_place(phi, v)
        if red.dropped:
            continue
        red2 = reduce_at_place(map_iterate(phi, 2), v)
        assert not red2.dropped
        assert red2.map == map_iterate(red.map, 2)
        done += 1


def test_tame_examples():
    z2 = map_make([0, 0, 1], [1], Q)
    assert tame_check(z2, PrimePlace(7)).kind == "TameByDegree"
    z3 = map_make([0, 0, 0, 1], [1], Q)
    r = tame_check(z3, PrimePlace(3))
    assert r.kind == "Wild" and r.witness[1] == 3
    fam = counterexample_family(Poly(K5, [0, 1]), 2, 5)
    assert tame_check(fam.map, t_place(K5, "t")).kind == "Wild"


def test_tame_on_tame_model():
    phi = map_make([0, 0, 1, 1], [1], Q)
    assert tame_check(phi, PrimePlace(5)).kind == "TameByDegree"
    # z^4 + z^2 mod 3 = z^2 (z^2 + 1), and z^4 + z^2 - 2 = (z - 1)^2 (z + 1)^2:
    # e = 2 at 0 and +-1, e = 4 at infinity, total 6 = 2*4 - 2
    phi = map_make([0, 0, 1, 0, 1], [1], Q)
    r = tame_check(phi, PrimePlace(3))
    assert r.kind == "Tame"
    assert sorted(e for _, e in r.indices) == [2, 2, 2, 4]
    # z^4 + z = z (z + 1)^3 mod 3 is wild at -1
    r = tame_check(map_make([0, 1, 0, 0, 1], [1], Q), PrimePlace(3))
    assert r.kind == "Wild" and r.witness[1] == 3
