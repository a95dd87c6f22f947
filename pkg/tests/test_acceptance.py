"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL`` line with its time limit; the
lines are printed in the terminal summary (see conftest.py) and also to
stdout when run with ``-s``.
"""

import random
import time

from conftest import ACCEPTANCE_LINES
from multispec import cli
from multispec.algebra import dense
from multispec.algebra.fields import extension, field_make, function_field
from multispec.algebra.numtheory import divisors, is_prime, mobius_mu
from multispec.algebra.poly import Poly
from multispec.dynamics import (
    ProjPoint,
    dynatomic,
    map_evaluate,
    map_iterate,
    map_make,
    multiplier_spectrum,
)
from multispec.errors import BadSpecialization, DegenerateMap, DegreeTooLow, SingularCurve
from multispec.experiments import milnor_census
from multispec.families import (
    EllipticCurve,
    Family,
    counterexample_family,
    lattes_isospectral_probe,
    triviality_probe,
)
from multispec.rootfind import convergence_probe, fixed_point_sum_check, residue_obstruction
from multispec.valuation import (
    PolyPlace,
    PrimePlace,
    TrivialPlace,
    _self_test,
    newton_polygon,
    place_valuation,
    tame_check,
)

from oracles import multiplier_poly_with_multiplicity, random_map


def record(num, title, ok, detail, elapsed, limit):
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"{status} criterion {num}: {title} | {detail} | {elapsed:.1f}s (limit {limit:g}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok and within


def kn(d, n):
    return sum(mobius_mu(n // k) * (d**k + 1) for k in divisors(n))


def counterexample(p, a, quadratic):
    K = function_field(field_make(p))
    psi = Poly(K, [0, 1, K.coerce("t")]) if quadratic else Poly(K, [0, 1])
    return counterexample_family(psi, a, p)


# 1 -------------------------------------------------------------------------


def test_criterion_01_counterexample_isospectral():
    start = time.perf_counter()
    bad = []
    checked = 0
    for p in (3, 5):
        K = function_field(field_make(p))
        for a in range(1, p):
            for quadratic in (False, True):
                fam = counterexample(p, a, quadratic)
                d = fam.degree
                # infinity is a superattracting fixed point, so it is a root of Phi_1 only
                inf = ProjPoint.infinity(K)
                assert map_evaluate(fam.map, inf) == inf
                for n in (1, 2):
                    md = multiplier_spectrum(fam.map, n)
                    s = 1 if n == 1 else 0
                    an = K.pow(K.from_int(a), n)
                    want = Poly.raw(K, [K.one], "T")
                    want = want * Poly.raw(K, [K.zero, K.one], "T") if s else want
                    for _ in range(kn(d, n) - s):
                        want = want * Poly.raw(K, [K.neg(an), K.one], "T")
                    const = all(K.is_constant(x.v) for x in md.sigma)
                    checked += 1
                    if md.poly != want or not const:
                        bad.append((p, a, quadratic, n))
    ok = record(1, "counterexample isospectrality", not bad,
                f"{checked} spectra exact, mismatches {bad}", time.perf_counter() - start, 60)
    assert ok


# 2 -------------------------------------------------------------------------


def test_criterion_02_counterexample_nontrivial():
    start = time.perf_counter()
    fam = counterexample(3, 1, True)
    res = triviality_probe(fam, [1, 2], max_ext=2)
    detail = str(res)
    if res.all_conjugate:
        A = res.witnesses[0][2]
        detail += f" via A = {A} over {A.field}"
    ok = record(2, "t=1, t=2 not conjugate over GF(3^j), j<=2", not res.all_conjugate,
                detail, time.perf_counter() - start, 600)
    assert ok


def test_criterion_02b_supplementary_square_vs_nonsquare():
    # the members split by the square class of t in GF(9)*; 1 and g+1 lie in different classes
    start = time.perf_counter()
    fam = counterexample(3, 1, True)
    L = field_make(3, 2)
    res = triviality_probe(fam, [L.element(1), L.element(L.coerce("g+1"))], max_ext=1, target=L)
    ok = record("2b", "supplementary: t=1 vs t=g+1 not conjugate over GF(3^j), j<=2",
                not res.all_conjugate, str(res), time.perf_counter() - start, 600)
    assert ok


def test_criterion_02c_supplementary_distinct_over_gf27():
    # members at t = 1 and at a generator of GF(27) share all multipliers yet are not conjugate
    start = time.perf_counter()
    fam = counterexample(3, 1, True)
    L = field_make(3, 3)
    res = triviality_probe(fam, [L.element(1), L.element(L.gen)], max_ext=1, target=L)
    ok = record("2c", "supplementary: t=1 vs t=g in GF(27) distinct", not res.all_conjugate,
                str(res), time.perf_counter() - start, 600)
    assert ok


# 3 -------------------------------------------------------------------------


def test_criterion_03_wildness():
    start = time.perf_counter()
    verdicts = []
    for p in (3, 5):
        K = function_field(field_make(p))
        B = K.base
        for a in range(1, p):
            for quadratic in (False, True):
                fam = counterexample(p, a, quadratic)
                for c in range(p):
                    # the family at the place t = c ...
                    v = PolyPlace(K, K.make([B.from_int(-c), B.one]))
                    verdicts.append(tame_check(fam.map, v).kind)
                    # ... and the member at t = c over its own residue field
                    try:
                        member = fam.specialize(c)
                    except BadSpecialization:
                        continue
                    verdicts.append(tame_check(member, TrivialPlace(B)).kind)
    z2 = tame_check(map_make([0, 0, 1], [1], field_make(0)), PrimePlace(7)).kind
    ok = all(k == "Wild" for k in verdicts) and z2 == "TameByDegree"
    ok = record(3, "wild at residue char p, TameByDegree for z^2 at 7", ok,
                f"{verdicts.count('Wild')}/{len(verdicts)} Wild; z^2 at 7: {z2}",
                time.perf_counter() - start, 1)
    assert ok


# 4 -------------------------------------------------------------------------


def _random_q_map(rng, d):
    Q = field_make(0)
    while True:
        num = [rng.randint(-9, 9) for _ in range(d + 1)]
        den = [rng.randint(-9, 9) for _ in range(d + 1)]
        try:
            return map_make(num, den, Q, degree=d)
        except (DegenerateMap, DegreeTooLow):
            continue


def test_criterion_04_fixed_point_identity():
    start = time.perf_counter()
    rng = random.Random(4)
    counts = {}
    fails = 0
    for name in ("GF(7)", "GF(11)", "GF(13)", "Q"):
        holds = skipped = 0
        for _ in range(100):
            d = rng.randint(2, 4)
            if name == "Q":
                phi = _random_q_map(rng, d)
            else:
                phi = random_map(field_make(int(name[3:-1])), d, rng)
            st = fixed_point_sum_check(phi).status
            if st == "HoldsExactly":
                holds += 1
            elif st == "MultiplierOne":
                skipped += 1
            else:
                fails += 1
        counts[name] = f"{holds} hold/{skipped} skipped"
    ok = record(4, "fixed-point identity", fails == 0, f"{counts}, failures {fails}",
                time.perf_counter() - start, 60)
    assert ok


# 5 -------------------------------------------------------------------------


def test_criterion_05_dynatomic_degree_law():
    start = time.perf_counter()
    F = field_make(101)
    rng = random.Random(5)
    bad = 0
    total = 0
    for d in (2, 3):
        for _ in range(20):
            phi = random_map(F, d, rng)
            for n in range(1, 5):
                Phi = {k: dynatomic(phi, k) for k in divisors(n)}
                # prod_{k | n} Phi_k must reproduce Z F_n - X G_n exactly
                it = map_iterate(phi, n) if n > 1 else phi
                H = dense.sub(F, dense.trim(F, list(it.F)), dense.shift(F, dense.trim(F, list(it.G)), 1))
                prod = [F.one]
                for k in Phi:
                    prod = dense.mul(F, prod, Phi[k].affine().c)
                same = dense.sub(F, dense.monic(F, prod), dense.monic(F, H)) == []
                deg_ok = Phi[n].degree == kn(d, n) and sum(Phi[k].degree for k in Phi) == d**n + 1
                aff_ok = len(Phi[n].affine().c) - 1 <= kn(d, n)
                total += 1
                if not (same and deg_ok and aff_ok):
                    bad += 1
    ok = record(5, "dynatomic degree law", bad == 0, f"{total - bad}/{total} (d, n, map) cases",
                time.perf_counter() - start, 120)
    assert ok


# 6 -------------------------------------------------------------------------


def test_criterion_06_spectrum_oracle():
    start = time.perf_counter()
    F = field_make(5)
    rng = random.Random(6)
    exact = mism = partial = 0
    for _ in range(25):
        phi = random_map(F, 2, rng)
        for n in (1, 2):
            want, count = multiplier_poly_with_multiplicity(phi, n, 4)
            got = multiplier_spectrum(phi, n).poly.c
            if count != kn(2, n):
                partial += 1
            elif got == want:
                exact += 1
            else:
                mism += 1
    ok = record(6, "resultant M_n = enumeration product, GF(5)", mism == 0 and partial == 0,
                f"{exact}/50 exact, {mism} mismatched, {partial} short of K_n points",
                time.perf_counter() - start, 120)
    assert ok


# 7 -------------------------------------------------------------------------


def test_criterion_07_lambda1_separation():
    start = time.perf_counter()
    details = []
    ok = True
    for q in (5, 7):
        r = milnor_census(q)
        ok = ok and r["pass"]
        details.append(
            f"q={q}: {r['pgl2_orbits']} orbits, {r['spectrum_buckets']} buckets, "
            f"{r['conjugacy_classes']} classes, {len(r['exceptional_buckets'])} exceptional "
            f"(automorphisms: {r['exceptions_have_automorphisms']}), relation {r['plane']['relation']}"
        )
    ok = record(7, "Lambda separation for quadratics", ok, "; ".join(details),
                time.perf_counter() - start, 900)
    assert ok


# 8 -------------------------------------------------------------------------


def test_criterion_08_lattes():
    start = time.perf_counter()
    K = function_field(field_make(7))
    B = K.base
    rep = lattes_isospectral_probe(K("t"), 1, N=2)
    iso = rep.result.isospectral and rep.constant_field
    fam = Family(rep.map)
    commuting = []
    for c in range(7):
        if len(commuting) == 3:
            break
        try:
            E = EllipticCurve(c, 1, B)
            phi = fam.specialize(c)
        except (SingularCurve, BadSpecialization):
            continue
        good = True
        for P in E.points():
            Q = E.multiply(2, P)
            x = ProjPoint.infinity(B) if P is None else ProjPoint(B, B.coerce(P[0]))
            y = ProjPoint.infinity(B) if Q is None else ProjPoint(B, B.coerce(Q[0]))
            good = good and map_evaluate(phi, x) == y
        commuting.append((c, good))
    ok = iso and len(commuting) == 3 and all(g for _, g in commuting)
    ok = record(8, "Lattes isospectral over GF(7)(t), commutes with doubling", ok,
                f"isospectral={rep.result.isospectral}, constant field={rep.constant_field}, commutes at t={commuting}",
                time.perf_counter() - start, 300)
    assert ok


# 9 -------------------------------------------------------------------------


def test_criterion_09_newton_polygon():
    start = time.perf_counter()
    K = function_field(field_make(5))
    rng = random.Random(9)
    places = [PolyPlace(K, K.coerce(s)) for s in ("t", "t+1", "t^2+2")]
    bad = 0
    for i in range(50):
        v = places[i % len(places)]
        roots = [K.element(K.random_raw(rng)) for _ in range(rng.randint(1, 3))]
        f = Poly.from_roots(roots)
        want = {}
        for r in roots:
            val = place_valuation(r, v)
            want[val] = want.get(val, 0) + 1
        if dict(newton_polygon(f, v).root_valuations()) != want:
            bad += 1
    try:
        _self_test()
        self_ok = True
    except Exception:
        self_ok = False
    ok = record(9, "Newton polygon valuations", bad == 0 and self_ok,
                f"{50 - bad}/50 match, self-test {'ok' if self_ok else 'failed'}",
                time.perf_counter() - start, 60)
    assert ok


# 10 ------------------------------------------------------------------------


def test_criterion_10_obstruction_gates():
    start = time.perf_counter()
    r2 = all(residue_obstruction(2, p, 2).obstructed for p in range(2, 51) if is_prime(p))
    a = residue_obstruction(4, 5, 3).obstructed
    b = residue_obstruction(4, 3, 2)
    c = residue_obstruction(4, 3, 5)
    ok = r2 and a and b.obstructed and b.reason == "IsospectralCollapse" and not c.obstructed
    ok = record(10, "residue obstruction gates", ok,
                f"r=2 all p<=50: {r2}; (4,5,3): {a}; (4,3,2): {b}; (4,3,5): {c}",
                time.perf_counter() - start, 1)
    assert ok


# 11 ------------------------------------------------------------------------


def test_criterion_11_unit_sphere_trapping():
    start = time.perf_counter()
    z2 = map_make([0, 0, 1], [1], field_make(0))
    res = {r.seed: r for r in convergence_probe(z2, PrimePlace(3), [0, 1, -1], 20)}
    trapped = res[0].valuations == [0] * 21 and res[0].verdict == "NoConvergenceToSinks"
    up = res[1].valuations == [2**i for i in range(21)] and res[1].verdict == "ConvergesTo(0)"
    down = res[-1].valuations == [-(2**i) for i in range(21)] and res[-1].verdict == "ConvergesTo(inf)"
    ok = record(11, "unit-sphere trapping for z^2 at 3", trapped and up and down,
                f"v=0 {res[0].verdict}, v=1 {res[1].verdict}, v=-1 {res[-1].verdict}",
                time.perf_counter() - start, 1)
    assert ok


# 12 ------------------------------------------------------------------------

CE = "field: 3^1(t); num=[0,1,0,1,0,0,t]; den=[1]"
Z2Q = "field: Q; num=[0,0,1]; den=[1]"

DETERMINISM = [
    ["spectrum", "--map", CE, "--n", "2", "--upto"],
    ["family-iso", "--map", CE, "--N", "2"],
    ["trivial", "--map", CE, "--values", "1,2", "--max-ext", "2"],
    ["tame", "--map", CE, "--place", "place:t over 3^1"],
    ["tame", "--map", Z2Q, "--place", "prime:7"],
    ["rootfind", "fixedsum", "--map", "field: 13^1; num=[3,1,4]; den=[1,5,9]"],
    ["dynatomic", "--map", "field: 101^1; num=[2,0,0,1]; den=[1,1]", "--n", "4"],
    ["spectrum", "--map", "field: 5^1; num=[1,2,1]; den=[3,0,1]", "--n", "2", "--upto"],
    ["experiment", "milnor", "--q", "5"],
    ["experiment", "milnor", "--q", "7"],
    ["lattes", "A=t B=1 m=2 over 7^1(t)", "--N", "2"],
    ["polygon", "--poly", "[1,1,t]", "--place", "place:t over 5^1", "--field", "5^1(t)"],
    ["rootfind", "obstruct", "--r", "4", "--p", "3", "--d", "5"],
    ["rootfind", "probe", "--map", Z2Q, "--place", "prime:3", "--seeds", "0,1,-1", "--iters", "20"],
]


def test_criterion_12_determinism():
    start = time.perf_counter()
    differing = []
    for argv in DETERMINISM:
        r1, c1 = cli.run_command(argv)
        r2, c2 = cli.run_command(argv)
        if cli.dumps(r1) != cli.dumps(r2) or c1 != c2:
            differing.append(" ".join(argv[:2]))
    ok = record(12, "byte-identical JSON on rerun", not differing,
                f"{len(DETERMINISM) - len(differing)}/{len(DETERMINISM)} commands identical",
                time.perf_counter() - start, 600)
    assert ok
