"""Command-line front end: one verb per library operation, JSON reports.

Exit codes: 0 success, 1 domain error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from . import budget as _budget
from .algebra.fields import FieldElement
from .algebra.poly import Poly
from .dynamics import (
    ProjPoint,
    conjugacy_test,
    critical_points,
    dynatomic,
    multiplier_spectrum,
    orbit,
    pcf_check,
)
from .errors import MultispecError, ParseError
from .families import (
    Family,
    isospectral_check,
    lattes_isospectral_probe,
    triviality_probe,
)
from .textio import (
    format_field,
    format_map_spec,
    parse_element,
    parse_field,
    parse_lattes_spec,
    parse_list,
    parse_map_spec,
    parse_place,
)
from .valuation import classify_spectrum, newton_polygon, reduce_at_place, tame_check


class UsageError(MultispecError):
    exit_code = 2


def _read_map(text):
    if text == "-":
        text = sys.stdin.read().strip()
    return parse_map_spec(text)


def _as_map(obj):
    return obj.map if isinstance(obj, Family) else obj


def _val(x):
    """JSON form of a valuation (inf becomes the string "inf")."""
    if x == float("inf"):
        return "inf"
    return str(x) if not isinstance(x, int) else x


def _spectrum_payload(md):
    return {
        f"M{md.n}": str(md.poly),
        "lambda": [str(s) for s in md.sigma],
        "K": md.K,
        "strategy": md.strategy,
    }


# ---------------------------------------------------------------------------
# verbs


def cmd_spectrum(a):
    phi = _as_map(_read_map(a.map))
    out = {}
    for n in range(1, a.n + 1) if a.upto else [a.n]:
        out.update(_spectrum_payload(multiplier_spectrum(phi, n)))
        if a.upto:
            out[f"lambda{n}"] = out.pop("lambda")
            out[f"K{n}"] = out.pop("K")
            out.pop("strategy")
    return {"map": format_map_spec(phi), "n": a.n}, out


def cmd_dynatomic(a):
    phi = _as_map(_read_map(a.map))
    P = dynatomic(phi, a.n)
    return {"map": format_map_spec(phi), "n": a.n}, {
        "Phi": str(P),
        "degree": P.degree,
        "infinity_multiplicity": P.infinity_multiplicity,
    }


def _points(pts):
    return [{"point": str(p), "field": format_field(p.field), "multiplicity": m} for p, m in pts]


def cmd_critical(a):
    phi = _as_map(_read_map(a.map))
    return {"map": format_map_spec(phi), "max_ext": a.max_ext}, {
        "critical_points": _points(critical_points(phi, a.max_ext)),
    }


def _parse_point(F, text):
    if text.strip() in ("inf", "infinity", "oo"):
        return ProjPoint.infinity(F)
    return ProjPoint(F, parse_element(F, text).v)


def _orbit_payload(o):
    if not o.found:
        return {"status": "NotFoundWithinBound", "steps": o.steps}
    return {"status": "Found", "tail": o.tail, "cycle": o.cycle}


def cmd_orbit(a):
    phi = _as_map(_read_map(a.map))
    pt = _parse_point(phi.field, a.point)
    return {"map": format_map_spec(phi), "point": str(pt), "bound": a.bound}, _orbit_payload(
        orbit(phi, pt, a.bound)
    )


def cmd_pcf(a):
    phi = _as_map(_read_map(a.map))
    r = pcf_check(phi, a.bound, a.max_ext)
    orbits = [
        dict(point=str(c), multiplicity=m, **_orbit_payload(o)) for c, m, o in r.orbits
    ]
    res = {"status": r.status, "orbits": orbits}
    if r.reason:
        res["reason"] = r.reason
    return {"map": format_map_spec(phi), "bound": a.bound, "max_ext": a.max_ext}, res


def cmd_conjugate(a):
    phi = _as_map(_read_map(a.map))
    psi = _as_map(_read_map(a.map2))
    A = conjugacy_test(phi, psi, a.max_ext)
    res = {"conjugate": A is not None}
    if A is not None:
        res["witness"] = str(A)
        res["witness_field"] = format_field(A.field)
    return {"map": format_map_spec(phi), "map2": format_map_spec(psi), "max_ext": a.max_ext}, res


def cmd_tame(a):
    phi = _as_map(_read_map(a.map))
    v = parse_place(a.place)
    r = tame_check(phi, v, a.max_ext)
    res = {"verdict": r.kind, "reason": r.reason, "degree_dropped": r.dropped}
    if r.witness:
        res["witness"] = {"point": str(r.witness[0]), "e": r.witness[1]}
    if r.indices:
        res["ramification"] = [{"point": str(c), "e": e} for c, e in r.indices]
    return {"map": format_map_spec(phi), "place": v.spec()}, res


def cmd_reduce(a):
    phi = _as_map(_read_map(a.map))
    v = parse_place(a.place)
    red = reduce_at_place(phi, v)
    m = red.map
    res = {
        "degree": red.degree,
        "dropped": red.dropped,
        "residue_field": format_field(red.field),
        "map": format_map_spec(m) if m is not None else None,
    }
    return {"map": format_map_spec(phi), "place": v.spec()}, res


def cmd_polygon(a):
    v = parse_place(a.place)
    F = parse_field(a.field) if a.field else v.field
    f = Poly.raw(F, parse_list(F, a.poly), a.var)
    np_ = newton_polygon(f, v)
    return {"poly": str(f), "field": format_field(F), "place": v.spec()}, {
        "vertices": [[i, _val(y)] for i, y in np_.vertices],
        "segments": [{"slope": str(s), "length": n} for s, n in np_.segments],
        "root_valuations": [{"valuation": _val(x), "count": n} for x, n in np_.root_valuations()],
    }


def cmd_classify(a):
    phi = _as_map(_read_map(a.map))
    v = parse_place(a.place)
    md = multiplier_spectrum(phi, a.n)
    c = classify_spectrum(md, v)
    return {"map": format_map_spec(phi), "place": v.spec(), "n": a.n}, {
        f"M{a.n}": str(md.poly),
        "attracting": c.attracting,
        "indifferent": c.indifferent,
        "repelling": c.repelling,
        "valuations": [{"valuation": _val(x), "count": n} for x, n in c.breakdown],
    }


def _iso_payload(r):
    res = {"verdict": "Isospectral" if r.isospectral else "Witness", "constant_field": r.constant_field}
    if r.witness:
        n, i, val = r.witness
        res["witness"] = {"n": n, "coordinate": f"sigma_{i}", "value": str(val)}
    res["spectra"] = {f"M{md.n}": str(md.poly) for md in r.spectra}
    return res


def cmd_family_iso(a):
    fam = _read_map(a.map)
    return {"map": format_map_spec(fam), "N": a.N}, _iso_payload(isospectral_check(fam, a.N))


def cmd_trivial(a):
    fam = _read_map(a.map)
    if not isinstance(fam, Family):
        raise UsageError("triviality probe needs a family over a function field")
    target = parse_field(a.target) if a.target else fam.base
    vals = [parse_element(target, s).v for s in a.values.split(",")]
    r = triviality_probe(fam, [FieldElement(target, x) for x in vals], a.max_ext, target)
    res = {"verdict": "AllConjugate" if r.all_conjugate else "Distinct"}
    if r.distinct:
        res["distinct"] = [str(x) for x in r.distinct]
    res["witnesses"] = [{"pair": [str(x), str(y)], "A": str(A)} for x, y, A in r.witnesses]
    return {"map": format_map_spec(fam), "values": a.values, "target": format_field(target), "max_ext": a.max_ext}, res


def _commutation(E, phi, m, fam_field, count=3):
    """Check x(mP) = phi(x(P)) on all points of E at ``count`` specializations."""
    from .dynamics import map_evaluate
    from .errors import BadSpecialization, SingularCurve
    from .families import EllipticCurve

    K = fam_field
    out = []
    if K.kind != "rational-function":
        return out
    B = K.base
    fam = Family(phi)
    for c in B.elements():
        if len(out) >= count:
            break
        try:
            Ec = EllipticCurve(K.specialize(E.A, c), K.specialize(E.B, c), B)
            phic = fam.specialize(FieldElement(B, c))
        except (SingularCurve, BadSpecialization, ZeroDivisionError):
            continue
        ok = True
        pts = Ec.points()
        for P in pts:
            if P is None:
                continue
            Q = Ec.multiply(m, P)
            want = ProjPoint.infinity(B) if Q is None else ProjPoint(B, Q[0])
            ok = ok and map_evaluate(phic, ProjPoint(B, P[0])) == want
        out.append({"t": B.format(c), "points": len(pts), "commutes": ok})
    return out


def cmd_lattes(a):
    A, B, m, F = parse_lattes_spec(a.spec)
    rep = lattes_isospectral_probe(A, B, a.N, F, m)
    res = _iso_payload(rep.result)
    res["map"] = format_map_spec(rep.map)
    res["degree"] = rep.map.degree
    res["j_nonconstant"] = rep.j_nonconstant
    res["commutation"] = _commutation(rep.curve, rep.map, m, F)
    return {"spec": a.spec, "N": a.N}, res


def cmd_rootfind(a):
    from .rootfind import (
        convergence_probe,
        fixed_point_sum_check,
        newton_map,
        residue_obstruction,
    )

    if a.rf == "obstruct":
        r = residue_obstruction(a.r, a.p, a.d)
        res = {"verdict": "Obstructed" if r.obstructed else "NotObstructedByTheseTests"}
        if r.obstructed:
            res["reason"] = r.reason
            res["hypothesis"] = r.hypothesis
        res["notes"] = r.notes
        return {"r": a.r, "p": a.p, "d": a.d}, res
    if a.rf == "newton":
        F = parse_field(a.field)
        f = Poly.raw(F, parse_list(F, a.f), "z")
        N = newton_map(f, F)
        return {"f": str(f), "field": format_field(F)}, {"map": format_map_spec(N), "degree": N.degree, "formula": str(N)}
    if a.rf == "fixedsum":
        phi = _as_map(_read_map(a.map))
        r = fixed_point_sum_check(phi)
        res = {"verdict": r.status}
        if r.value is not None:
            res["sum"] = str(r.value)
        return {"map": format_map_spec(phi)}, res
    # probe
    phi = _as_map(_read_map(a.map))
    v = parse_place(a.place)
    seeds = [int(s) for s in a.seeds.replace("−", "-").split(",")]
    rs = convergence_probe(phi, v, seeds, a.iters)
    return {"map": format_map_spec(phi), "place": v.spec(), "seeds": seeds, "iters": a.iters}, {
        "trajectories": [
            {"seed": r.seed, "valuations": r.valuations, "verdict": r.verdict, "indeterminate_step": r.step}
            for r in rs
        ]
    }


def cmd_experiment(a):
    from .experiments import counterexample_census, milnor_census, plane_fit

    if a.name == "milnor":
        r = milnor_census(a.q, a.periods, a.ext)
        return {"q": a.q, "periods": a.periods, "ext": a.ext}, r
    if a.name == "counterexample":
        r = counterexample_census(a.p, a.k, a.a, a.periods, a.ext)
        return {"p": a.p, "k": a.k, "a": a.a, "periods": a.periods, "ext": a.ext}, r
    r = plane_fit(a.q, a.samples, a.seed)
    return {"q": a.q, "samples": a.samples, "seed": a.seed}, r


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="enumeration cap (default 10^6)")
    common.add_argument("--out", default=None, help="also write the report to this file")
    common.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte stability)")

    p = _Parser(prog="multispec", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"multispec {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    s = verb("spectrum", cmd_spectrum, "multiplier polynomial M_n and Lambda_n")
    s.add_argument("--map", required=True)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--upto", action="store_true", help="report every period 1..n")

    s = verb("dynatomic", cmd_dynatomic, "dynatomic form Phi_n")
    s.add_argument("--map", required=True)
    s.add_argument("--n", type=int, default=1)

    s = verb("critical", cmd_critical, "critical points with multiplicity")
    s.add_argument("--map", required=True)
    s.add_argument("--max-ext", type=int, default=None)

    s = verb("orbit", cmd_orbit, "tail and cycle length of a forward orbit")
    s.add_argument("--map", required=True)
    s.add_argument("--point", required=True)
    s.add_argument("--bound", type=int, default=100)

    s = verb("pcf", cmd_pcf, "postcritical finiteness within a bound")
    s.add_argument("--map", required=True)
    s.add_argument("--bound", type=int, default=100)
    s.add_argument("--max-ext", type=int, default=None)

    s = verb("conjugate", cmd_conjugate, "PGL_2 conjugacy search")
    s.add_argument("--map", required=True)
    s.add_argument("--map2", required=True)
    s.add_argument("--max-ext", type=int, default=1)

    s = verb("tame", cmd_tame, "tameness of the given model at a place")
    s.add_argument("--map", required=True)
    s.add_argument("--place", required=True)
    s.add_argument("--max-ext", type=int, default=None)

    s = verb("reduce", cmd_reduce, "reduction of a map at a place")
    s.add_argument("--map", required=True)
    s.add_argument("--place", required=True)

    s = verb("polygon", cmd_polygon, "Newton polygon and certified root valuations")
    s.add_argument("--poly", required=True, help="coefficient list, constant first")
    s.add_argument("--place", required=True)
    s.add_argument("--field", default=None)
    s.add_argument("--var", default="x")

    s = verb("classify", cmd_classify, "attracting/indifferent/repelling counts of Lambda_n")
    s.add_argument("--map", required=True)
    s.add_argument("--place", required=True)
    s.add_argument("--n", type=int, default=1)

    s = verb("family-iso", cmd_family_iso, "isospectrality of a family up to period N")
    s.add_argument("--map", required=True)
    s.add_argument("--N", type=int, default=3)

    s = verb("trivial", cmd_trivial, "pairwise conjugacy of family specializations")
    s.add_argument("--map", required=True)
    s.add_argument("--values", required=True, help="comma-separated parameter values")
    s.add_argument("--target", default=None, help="field containing the values")
    s.add_argument("--max-ext", type=int, default=1)

    s = verb("lattes", cmd_lattes, "Lattès family isospectrality probe")
    s.add_argument("spec", help="'A=<expr> B=<expr> m=2 over <field>'")
    s.add_argument("--N", type=int, default=2)

    s = verb("rootfind", cmd_rootfind, "root-finding algorithm obstructions")
    rf = s.add_subparsers(dest="rf", required=True, parser_class=_Parser)
    o = rf.add_parser("obstruct", parents=[common])
    o.add_argument("--r", type=int, required=True)
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--d", type=int, required=True)
    o = rf.add_parser("newton", parents=[common])
    o.add_argument("--f", required=True)
    o.add_argument("--field", default="Q")
    o = rf.add_parser("fixedsum", parents=[common])
    o.add_argument("--map", required=True)
    o = rf.add_parser("probe", parents=[common])
    o.add_argument("--map", required=True)
    o.add_argument("--place", required=True)
    o.add_argument("--seeds", default="0,1,-1")
    o.add_argument("--iters", type=int, default=20)

    s = verb("experiment", cmd_experiment, "named census experiments")
    s.add_argument("name", choices=["milnor", "counterexample", "plane"])
    s.add_argument("--q", type=int, default=5)
    s.add_argument("--p", type=int, default=3)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--a", type=int, default=1)
    s.add_argument("--periods", type=int, default=2)
    s.add_argument("--ext", type=int, default=2)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    return p


def _command_name(args):
    return f"rootfind {args.rf}" if args.verb == "rootfind" else args.verb


def _execute(argv):
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        report = {"command": None, "argv": argv, "version": __version__, "input": None, "result": None,
                  "error": {"type": "UsageError", "message": str(e)}, "diagnostics": {}}
        return report, 2, None
    b = _budget.Budget()
    if args.budget:
        b.enumeration = args.budget
    report = {"command": _command_name(args), "argv": argv, "version": __version__, "input": None, "result": None}
    start = time.perf_counter()
    code = 0
    with _budget.using(b):
        try:
            report["input"], report["result"] = args.fn(args)
        except MultispecError as e:
            code = getattr(e, "exit_code", 1)
            report["error"] = {"type": type(e).__name__, "message": str(e)}
            if isinstance(e, ParseError):
                report["error"].update(line=e.line, col=e.col, expected=e.expected)
        except (ValueError, TypeError) as e:
            code = 2
            report["error"] = {"type": "UsageError", "message": str(e)}
    diag = {
        "budget": dict(sorted(b.counters.items())),
        "limits": {"enumeration": b.enumeration, "max_degree": b.max_degree, "max_coeff_degree": b.max_coeff_degree},
    }
    if args.timing:
        diag["seconds"] = round(time.perf_counter() - start, 3)
    report["diagnostics"] = diag
    return report, code, args.out


def run_command(argv):
    """Run one command; returns (report dict, exit code)."""
    report, code, _ = _execute(argv)
    return report, code


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2, default=str)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    report, code, out = _execute(argv)
    text = dumps(report)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
