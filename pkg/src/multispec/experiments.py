"""Finite-field censuses: spectra of all maps of a given shape against
PGL_2 conjugacy classes, and the affine relation among quadratic sigmas.

Every experiment returns a JSON-ready dict with a name and version.
"""

from __future__ import annotations

import itertools

from . import budget as _budget
from .algebra import linalg
from .algebra.fields import default_rng, extension, field_make
from .dynamics import (
    MobiusTransform,
    RationalMap,
    _canonical_scale,
    conjugacy_test,
    form_resultant,
    map_conjugate,
    map_make,
    multiplier_spectrum,
    pgl2_elements,
)
from .textio import format_field, format_map_spec

MILNOR_VERSION = 1
COUNTEREXAMPLE_VERSION = 1
PLANE_VERSION = 1


def _key(phi):
    return phi.F + phi.G


def rat2_maps(F):
    """All normalized degree-2 maps over a finite field, in canonical order."""
    elems = list(F.elements())
    zero, one = F.zero, F.one
    for coeffs in itertools.product(elems, repeat=6):
        first = next((c for c in coeffs if c != zero), None)
        if first != one:
            continue
        Fc, Gc = coeffs[:3], coeffs[3:]
        if form_resultant(F, Fc, Gc, 2) == zero:
            continue
        yield RationalMap(F, Fc, Gc, 2)


def pgl2_orbits(maps, F, budget=None):
    """Partition ``maps`` into PGL_2(F)-orbits.

    Returns [(representative, orbit size, stabilizer order)] with each
    representative the first member met in the given order.
    """
    b = budget or _budget.current()
    group = [MobiusTransform(F, *g) for g in pgl2_elements(F)]
    seen = set()
    orbits = []
    for phi in maps:
        k = _key(phi)
        if k in seen:
            continue
        orbit = set()
        stab = 0
        for A in group:
            psi = map_conjugate(phi, A)
            pk = _key(psi)
            if pk == k:
                stab += 1
            orbit.add(pk)
        b.count("conjugations", len(group))
        seen |= orbit
        orbits.append((phi, len(orbit), stab))
    return orbits


def automorphism_order(phi, L):
    """Number of A in PGL_2(L) commuting with phi."""
    psi = phi.embed(L)
    n = 0
    for g in pgl2_elements(L):
        A = MobiusTransform(L, *g)
        if map_conjugate(psi, A) == psi:
            n += 1
    return n


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        a, b = self.find(i), self.find(j)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _spectrum_key(phi, N):
    return tuple(tuple(multiplier_spectrum(phi, n).poly.c) for n in range(1, N + 1))


def _bucket_classes(reps, spectra, ext, budget):
    """Group orbit representatives by spectrum, merging orbits that are
    conjugate over GF(q^ext).  Returns {spectrum: [[orbit indices], ...]}."""
    buckets = {}
    for i, s in enumerate(spectra):
        buckets.setdefault(s, []).append(i)
    out = {}
    for s, idx in buckets.items():
        uf = _UnionFind(len(idx))
        for a in range(len(idx)):
            for c in range(a + 1, len(idx)):
                if uf.find(a) == uf.find(c):
                    continue
                if conjugacy_test(reps[idx[a]], reps[idx[c]], ext, budget) is not None:
                    uf.union(a, c)
        classes = {}
        for a in range(len(idx)):
            classes.setdefault(uf.find(a), []).append(idx[a])
        out[s] = list(classes.values())
    return out


def _fmt_poly(F, c):
    from .algebra.poly import format_poly

    return format_poly(F, list(c), "T")


def sigma_vector(phi):
    md = multiplier_spectrum(phi, 1)
    return [s.v for s in md.sigma]


def fit_affine_relations(F, vectors):
    """Basis of affine relations c . v + c0 = 0 satisfied by all vectors."""
    rows = [list(v) + [F.one] for v in vectors]
    ncols = len(rows[0]) if rows else 0
    return [_canonical_scale(F, r) for r in linalg.nullspace(F, rows, ncols)]


def _relation_text(F, rel, names):
    parts = []
    for c, nm in zip(rel, names):
        if c == F.zero:
            continue
        if not nm:
            parts.append(F.format(c))
        else:
            parts.append(nm if c == F.one else f"{F.format(c)}*{nm}")
    return " + ".join(parts) + " = 0"


def milnor_census(q, N=2, ext=2, budget=None):
    """All of Rat_2(GF(q)): do equal (Lambda_1..Lambda_N) imply conjugacy?"""
    b = budget or _budget.current()
    F = field_make(q)
    maps = list(rat2_maps(F))
    b.check_enumeration(len(maps), f"Rat_2(GF({q}))")
    orbits = pgl2_orbits(maps, F, b)
    reps = [o[0] for o in orbits]
    spectra = [_spectrum_key(phi, N) for phi in reps]
    classes = _bucket_classes(reps, spectra, ext, b)
    L = extension(F, ext)
    exceptional = []
    explained = True
    for s in sorted(classes, key=lambda s: [list(x) for x in s]):
        cls = classes[s]
        if len(cls) < 2:
            continue
        entry = {
            "spectra": {f"M{n + 1}": _fmt_poly(F, s[n]) for n in range(N)},
            "classes": [],
        }
        for members in cls:
            rep = reps[members[0]]
            aut = automorphism_order(rep, L)
            explained = explained and aut > 1
            entry["classes"].append({
                "rep": format_map_spec(rep),
                "orbits_over_base": len(members),
                "maps": sum(orbits[i][1] for i in members),
                "aut_order_over_extension": aut,
            })
        exceptional.append(entry)
    sig = [sigma_vector(phi) for phi in reps]
    rel = fit_affine_relations(F, sig)
    lambda1 = {s[0] for s in spectra}
    n_classes = sum(len(c) for c in classes.values())
    return {
        "experiment": "milnor",
        "version": MILNOR_VERSION,
        "field": format_field(F),
        "extension_degree": ext,
        "periods": N,
        "maps": len(maps),
        "pgl2_orbits": len(orbits),
        "spectrum_buckets": len(classes),
        "lambda1_buckets": len(lambda1),
        "conjugacy_classes": n_classes,
        "exceptional_buckets": exceptional,
        "exceptions_have_automorphisms": explained,
        "plane": {
            "samples": len(sig),
            "relations": len(rel),
            "relation": _relation_text(F, rel[0], ["s1", "s2", "s3", ""]) if len(rel) == 1 else None,
        },
        "pass": explained and len(rel) == 1,
    }


def plane_fit(q=11, samples=200, seed=0):
    """Fit the affine relations among (sigma_1, sigma_2, sigma_3) of random quadratic maps."""
    F = field_make(q)
    rng = default_rng(seed)
    vecs = []
    while len(vecs) < samples:
        coeffs = [F.random_raw(rng) for _ in range(6)]
        try:
            phi = map_make(coeffs[:3], coeffs[3:], F, degree=2, raw=True)
        except Exception:
            continue
        vecs.append(sigma_vector(phi))
    rel = fit_affine_relations(F, vecs)
    return {
        "experiment": "plane",
        "version": PLANE_VERSION,
        "field": format_field(F),
        "samples": samples,
        "seed": seed,
        "relations": len(rel),
        "relation": _relation_text(F, rel[0], ["s1", "s2", "s3", ""]) if len(rel) == 1 else None,
        "pass": len(rel) == 1,
    }


def counterexample_census(p=3, k=2, a=1, N=2, verify_ext=2, budget=None):
    """Maps c2 z^(2p) + c1 z^p + c0 + a z over GF(p^k): shared spectra, distinct classes."""
    b = budget or _budget.current()
    F = field_make(p, k)
    av = F.from_int(a)
    elems = list(F.elements())
    maps = []
    for c0, c1, c2 in itertools.product(elems, elems, elems):
        if c2 == F.zero:
            continue
        num = [F.zero] * (2 * p + 1)
        num[0], num[p], num[2 * p] = c0, c1, c2
        num[1] = F.add(num[1], av)
        coeffs = _canonical_scale(F, num + [F.one] + [F.zero] * (2 * p))
        maps.append(RationalMap(F, coeffs[: 2 * p + 1], coeffs[2 * p + 1:], 2 * p))
    orbits = pgl2_orbits(maps, F, b)
    reps = [o[0] for o in orbits]
    spectra = [_spectrum_key(phi, N) for phi in reps]
    buckets = {}
    for i, s in enumerate(spectra):
        buckets.setdefault(s, []).append(i)
    s0, idx = max(buckets.items(), key=lambda kv: len(kv[1]))
    verified = None
    if len(idx) >= 2 and verify_ext:
        A = conjugacy_test(reps[idx[0]], reps[idx[1]], verify_ext, b)
        verified = A is None
    return {
        "experiment": "counterexample",
        "version": COUNTEREXAMPLE_VERSION,
        "field": format_field(F),
        "a": F.format(av),
        "maps": len(maps),
        "spectrum_buckets": len(buckets),
        "largest_bucket": {
            "spectra": {f"M{n + 1}": _fmt_poly(F, s0[n]) for n in range(N)},
            "classes_over_base": len(idx),
            "reps": [format_map_spec(reps[i]) for i in idx],
            "first_two_nonconjugate_up_to_extension": verify_ext if verified else None,
        },
        "pass": len(idx) >= 2 and verified is not False,
    }
