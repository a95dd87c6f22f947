from fractions import Fraction
import random

import pytest

from multispec.algebra.fields import field_make, function_field
from multispec.algebra.numtheory import is_prime
from multispec.algebra.poly import Poly
from multispec.dynamics import MobiusTransform, ProjPoint, conjugacy_test, map_conjugate, map_make, multiplier_at
from multispec.errors import IndeterminateStep, InseparablePolynomial
from multispec.rootfind import (
    IterativeAlgorithm,
    convergence_probe,
    fixed_point_sum_check,
    newton_map,
    residue_obstruction,
)
from multispec.valuation import PolyPlace, PrimePlace

from oracles import random_map

Q = field_make(0)


def test_newton_map_examples():
    f = Poly(Q, [-1, 0, 1])
    N = newton_map(f)
    assert N == map_make([1, 0, 1], [0, 2], Q)
    for c in (2, 3, Fraction(1, 2)):
        assert newton_map(Poly(Q, [-c, 0, 1])) == map_make([c, 0, 1], [0, 2], Q)


def test_newton_for_quadratic_is_conjugate_to_squaring():
    # w = (z - 1)/(z + 1) carries N to w^2; checked over GF(7) by exhaustive search as well
    F = field_make(7)
    N = newton_map(Poly(F, [-1, 0, 1]))
    A = MobiusTransform(F, 1, -1, 1, 1)
    assert map_conjugate(N, A) == map_make([0, 0, 1], [1], F)
    assert conjugacy_test(N, map_make([0, 0, 1], [1], F), 1) is not None


def test_newton_map_errors():
    F = field_make(3)
    with pytest.raises(InseparablePolynomial):
        newton_map(Poly(F, [1, 0, 0, 1]))  # x^3 + 1, derivative zero
    with pytest.raises(InseparablePolynomial):
        newton_map(Poly(Q, [1, 2, 1]))


@pytest.mark.parametrize("q", [7, 11, 13])
def test_newton_roots_are_superattracting(q):
    F = field_make(q)
    rng = random.Random(q)
    for r in (2, 3, 4):
        for _ in range(5):
            roots = rng.sample(range(q), r)
            f = Poly.from_roots([F(x) for x in roots])
            N = newton_map(f)
            for x in roots:
                p = ProjPoint(F, F.coerce(x))
                assert multiplier_at(N, p).v == F.zero


def test_template_algorithm_matches_newton():
    # Newton for quadratics written as a template in the coefficients a0, a1, a2
    alg = IterativeAlgorithm.template(2, ["a2*0 - a0", "0", "a2"], ["a1", "2*a2"])
    F = field_make(11)
    for a0 in range(1, 5):
        f = Poly(F, [a0, 3, 1])
        try:
            want = newton_map(f)
        except InseparablePolynomial:
            continue
        assert alg(f) == want
    newton = IterativeAlgorithm.newton(2)
    out = newton.apply_all([Poly(F, [1, 2, 1]), Poly(F, [2, 0, 1])])
    assert len(out) == 1 and len(newton.degenerate) == 1


def test_fixed_point_sum_examples():
    assert fixed_point_sum_check(map_make([0, 0, 1], [1], Q)).status == "HoldsExactly"
    assert fixed_point_sum_check(map_make([0, 1, 1], [1], Q)).status == "MultiplierOne"
    K = function_field(Q, "c")
    assert fixed_point_sum_check(map_make([K.coerce("c"), 0, 1], [1], K)).status == "HoldsExactly"


@pytest.mark.parametrize("q", [7, 11, 13])
def test_fixed_point_sum_random(q):
    F = field_make(q)
    rng = random.Random(q + 1)
    for _ in range(30):
        phi = random_map(F, rng.randint(2, 4), rng)
        assert fixed_point_sum_check(phi).status in ("HoldsExactly", "MultiplierOne")


def test_residue_obstruction_examples():
    r = residue_obstruction(2, 3, 2)
    assert r.obstructed and r.reason == "ResidueCount"
    assert r.hypothesis["attracting_fixed_points"] == 2
    r = residue_obstruction(4, 5, 3)
    assert r.obstructed and r.reason == "ResidueCount"
    r = residue_obstruction(4, 3, 2)
    assert r.obstructed and r.reason == "IsospectralCollapse"
    r = residue_obstruction(4, 3, 5)
    assert not r.obstructed and str(r) == "NotObstructedByTheseTests"
    assert len(r.notes) == 2


def test_quadratic_algorithms_always_obstructed():
    for p in [0] + [p for p in range(2, 200) if is_prime(p)]:
        for d in (2, 3, 7):
            assert residue_obstruction(2, p, d).obstructed


def test_residue_obstruction_rejects_bad_input():
    with pytest.raises(ValueError):
        residue_obstruction(1, 3, 2)
    with pytest.raises(ValueError):
        residue_obstruction(2, 4, 2)


def test_probe_examples():
    z2 = map_make([0, 0, 1], [1], Q)
    v = PrimePlace(3)
    res = {r.seed: r for r in convergence_probe(z2, v, [0, 1, -1], 20)}
    assert res[0].valuations == [0] * 21 and res[0].verdict == "NoConvergenceToSinks"
    assert res[1].valuations[:5] == [1, 2, 4, 8, 16] and res[1].verdict == "ConvergesTo(0)"
    assert res[-1].valuations[:4] == [-1, -2, -4, -8] and res[-1].verdict == "ConvergesTo(inf)"


def test_probe_partitions_by_sign():
    z2 = map_make([0, 0, 1], [1], Q)
    for r in convergence_probe(z2, PrimePlace(5), list(range(-6, 7)), 10):
        want = "NoConvergenceToSinks" if r.seed == 0 else "ConvergesTo(0)" if r.seed > 0 else "ConvergesTo(inf)"
        assert r.verdict == want


def test_probe_reports_indeterminate_steps():
    # z^2 + z at v(z) = 0: both terms have valuation 0, nothing forces the sum
    phi = map_make([0, 1, 1], [1], Q)
    (r,) = convergence_probe(phi, PrimePlace(3), [0], 5)
    assert r.verdict == "Indeterminate" and r.step == 1
    with pytest.raises(IndeterminateStep):
        convergence_probe(phi, PrimePlace(3), [0], 5, strict=True)


def test_probe_over_function_field():
    K = function_field(field_make(5))
    phi = map_make([0, 0, K.coerce("t")], [1], K)  # t z^2 at (t)
    v = PolyPlace(K, K.coerce("t"))
    (r,) = convergence_probe(phi, v, [0], 3)
    assert r.valuations == [0, 1, 3, 7]
