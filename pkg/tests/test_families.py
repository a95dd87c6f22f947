import random

import pytest

from multispec.algebra.fields import field_make, function_field
from multispec.algebra.numtheory import divisors, mobius_mu
from multispec.algebra.poly import Poly
from multispec.dynamics import ProjPoint, map_evaluate, map_make, multiplier_spectrum
from multispec.errors import BadSpecialization, DegenerateMap, SingularCurve, Unsupported, UnsupportedM
from multispec.families import (
    EllipticCurve,
    Family,
    counterexample_family,
    isospectral_check,
    lattes_from_curve,
    lattes_isospectral_probe,
    triviality_probe,
)


def ff(p, k=1):
    return function_field(field_make(p, k))


def kn(d, n):
    return sum(mobius_mu(n // k) * (d**k + 1) for k in divisors(n))


def test_counterexample_family_examples():
    K = ff(5)
    fam = counterexample_family(Poly(K, [0, 1]), 2, 5)
    assert fam.map == map_make([0, 2, 0, 0, 0, 1], [1], K)
    M1 = multiplier_spectrum(fam.map, 1).poly
    want = Poly(K, [0, 1])
    for _ in range(5):
        want = want * Poly(K, [-2, 1])
    assert M1 == want

    K3 = ff(3)
    fam = counterexample_family(Poly(K3, [0, 1, K3.coerce("t")]), 1, 3)
    assert fam.degree == 6
    assert fam.map == map_make([0, 1, 0, 1, 0, 0, K3.coerce("t")], [1], K3)
    assert isospectral_check(fam, 1).isospectral


def test_isospectral_examples():
    K = ff(5)
    assert isospectral_check(Family(map_make([0, 0, 1], [1], K)), 3).isospectral
    res = isospectral_check(Family(map_make([K.coerce("t"), 0, 1], [1], K)), 1)
    assert not res.isospectral
    assert res.witness[0] == 1


@pytest.mark.parametrize("p,a", [(3, 1), (3, 2), (5, 2)])
def test_counterexample_specializations_have_finite_multipliers_a_pow_n(p, a):
    K = ff(p)
    fam = counterexample_family(Poly(K, [0, 1, K.coerce("t")]), a, p)
    B = fam.base
    rng = random.Random(p * 10 + a)
    done = 0
    while done < 10:
        c = rng.randrange(1, p)
        try:
            phi = fam.specialize(c)
        except BadSpecialization:
            continue
        for n in (1, 2):
            M = multiplier_spectrum(phi, n).poly
            an = B.pow(B.from_int(a), n)
            s = 0
            rest = M
            while rest.c and rest.c[0] == B.zero:
                rest = Poly.raw(B, rest.c[1:], "T")
                s += 1
            want = Poly(B, [1])
            for _ in range(kn(2 * p, n) - s):
                want = want * Poly.raw(B, [B.neg(an), B.one], "T")
            assert rest == want
        done += 1


def test_specialization_rejects_bad_parameters():
    K = ff(7)
    t = K.coerce("t")
    fam = Family(map_make([0, 0, 1], [t, 1], K))  # z^2 / (z + t): degenerate at t = 0
    with pytest.raises(BadSpecialization):
        fam.specialize(0)
    assert fam.specialize(1).degree == 2


# --- Lattès -------------------------------------------------------------------


def _x(F, P):
    return ProjPoint.infinity(F) if P is None else ProjPoint(F, P[0])


@pytest.mark.parametrize("q,A,B", [(5, 1, 1), (7, 1, 1), (7, 3, 2), (13, 1, 1), (13, 2, 5)])
@pytest.mark.parametrize("m", [2, 3])
def test_lattes_commutes_with_multiplication(q, A, B, m):
    F = field_make(q)
    try:
        E = EllipticCurve(A, B, F)
    except SingularCurve:
        pytest.skip("singular curve")
    if m == 3 and q == 3:
        pytest.skip("char divides 2m")
    phi = lattes_from_curve(E, m)
    assert phi.degree == m * m
    for P in E.points():
        assert map_evaluate(phi, _x(F, P)) == _x(F, E.multiply(m, P))


def test_lattes_degree_two_formula():
    F = field_make(11)
    E = EllipticCurve(1, 3, F)
    A, B = 1, 3
    want = map_make([A * A, -8 * B, -2 * A, 0, 1], [4 * B, 4 * A, 0, 4], F)
    assert lattes_from_curve(E, 2) == want


def test_lattes_errors():
    F = field_make(7)
    with pytest.raises(SingularCurve):
        EllipticCurve(0, 0, F)
    E = EllipticCurve(1, 1, F)
    with pytest.raises(UnsupportedM):
        lattes_from_curve(E, 4)
    with pytest.raises(Unsupported):
        lattes_from_curve(E, 2, translation=(0, 1))


def test_lattes_probe_over_function_field():
    K = ff(7)
    rep = lattes_isospectral_probe(K("t"), 1, N=2)
    assert rep.result.isospectral and rep.constant_field


def test_lattes_probe_constant_curve():
    rep = lattes_isospectral_probe(1, 1, N=1, field=ff(7))
    assert rep.result.isospectral


# --- triviality -----------------------------------------------------------------


def test_triviality_examples():
    K = ff(7)
    assert triviality_probe(Family(map_make([0, 0, 1], [1], K)), [0, 1, 2]).all_conjugate
    res = triviality_probe(Family(map_make([K.coerce("t"), 0, 1], [1], K)), [0, 1])
    assert not res.all_conjugate
    assert [str(x) for x in res.distinct] == ["0", "1"]


def test_specialization_at_a_pole_of_the_scaled_model():
    # canonical scaling divides z^2 + t by t; the member at t = 0 is still z^2
    K = ff(7)
    fam = Family(map_make([K.coerce("t"), 0, 1], [1], K))
    assert fam.specialize(0) == map_make([0, 0, 1], [1], field_make(7))
    assert fam.specialize(3) == map_make([3, 0, 1], [1], field_make(7))


def test_random_quadratic_families_are_separated_by_low_spectra():
    # families of degree 2 that genuinely vary; Lambda_1 or Lambda_2 should see it
    F = field_make(7)
    K = function_field(F)
    rng = random.Random(77)
    failures = []
    tested = 0
    while tested < 20:
        try:
            phi = map_make([K.random_raw(rng, 1) for _ in range(3)],
                           [K.random_raw(rng, 1) for _ in range(3)], K, degree=2, raw=True)
        except DegenerateMap:
            continue
        # discard families whose members are all conjugate to one map
        vals = []
        fam = Family(phi)
        for c in range(7):
            try:
                vals.append(fam.specialize(c))
            except BadSpecialization:
                pass
        spectra = {tuple(multiplier_spectrum(m, 1).poly.c) for m in vals}
        if len(spectra) < 2:
            continue
        res = isospectral_check(fam, 2)
        if res.isospectral:
            failures.append(str(phi))
        tested += 1
    assert failures == []


def test_counterexample_members_split_by_square_class():
    # t z^6 + z^3 + z over GF(9): conjugation sends t to zeta t with zeta^4 = 1,
    # so the members form two classes, the squares and the non-squares of GF(9)*
    K = ff(3)
    fam = counterexample_family(Poly(K, [0, 1, K.coerce("t")]), 1, 3)
    L = field_make(3, 2)
    squares = {L.mul(x, x) for x in range(1, 9)}
    one = fam.specialize(L.element(1), L)
    for c in range(2, 9):
        other = fam.specialize(L.element(c), L)
        from multispec.dynamics import conjugacy_test

        assert (conjugacy_test(one, other, 1) is not None) == (c in squares)
