"""Purely iterative root-finding algorithms and non-archimedean obstructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .algebra import dense
from .algebra.fields import FieldElement
from .algebra.numtheory import is_prime
from .algebra.poly import Poly
from .dynamics import map_make, multiplier_spectrum
from .errors import IndeterminateStep, InseparablePolynomial
from .valuation import INF


# ---------------------------------------------------------------------------
# algorithms


def newton_map(f, field=None):
    """N_f(z) = z - f/f' = (z f' - f) / f'."""
    K = field or f.field
    if K != f.field:
        f = Poly(K, f.coeffs)
    c = f.c
    df = dense.derivative(K, c)
    if not df:
        raise InseparablePolynomial(f"f' vanishes identically for f = {f}")
    if len(dense.gcd(K, c, df)) > 1:
        raise InseparablePolynomial(f"{f} has a repeated root")
    num = dense.sub(K, dense.shift(K, df, 1), c)
    return map_make(num, df, K, raw=True)


class IterativeAlgorithm:
    """A rule f -> T_f sending degree-r polynomials to rational maps.

    ``build`` receives the Poly f and returns a RationalMap.  Use
    :meth:`newton` or :meth:`template` for the two built-in kinds.
    """

    def __init__(self, r, build: Callable, name="custom"):
        self.r = r
        self.build = build
        self.name = name
        self.degenerate = []

    @classmethod
    def newton(cls, r):
        return cls(r, newton_map, "newton")

    @classmethod
    def template(cls, r, num, den):
        """Coefficients of T_f as expressions in a0..ar, the coefficients of f.

        The expressions are evaluated after specializing f, so the template
        is never treated symbolically.
        """
        from .textio import parse_element

        def build(f):
            K = f.field
            cs = f.c + [K.zero] * (r + 1 - len(f.c))
            syms = {f"a{i}": v for i, v in enumerate(cs)}
            n = [parse_element(K, e, syms).v for e in num]
            d = [parse_element(K, e, syms).v for e in den]
            return map_make(n, d, K, raw=True)

        return cls(r, build, "template")

    def __call__(self, f):
        if f.degree != self.r:
            raise ValueError(f"expected a degree-{self.r} polynomial, got degree {f.degree}")
        return self.build(f)

    def apply_all(self, polys):
        """T_f for each f; degenerate inputs are recorded and skipped."""
        out = []
        for f in polys:
            try:
                out.append((f, self(f)))
            except Exception as e:  # recorded, not fatal
                self.degenerate.append((f, e))
        return out


# ---------------------------------------------------------------------------
# fixed-point identity


@dataclass
class FixedPointSum:
    status: str  # "HoldsExactly", "MultiplierOne", "Fails"
    value: Optional[FieldElement] = None

    def __str__(self):
        if self.status == "Fails":
            return f"Fails(sum = {self.value})"
        return self.status


def fixed_point_sum_check(phi):
    """Compare sum 1/(1 - lambda_i) over fixed points, read off as M_1'(1)/M_1(1), with 1."""
    M = multiplier_spectrum(phi, 1).poly
    K = M.field
    m1 = dense.evaluate(K, M.c, K.one)
    if m1 == K.zero:
        return FixedPointSum("MultiplierOne")
    s = K.div(dense.evaluate(K, dense.derivative(K, M.c), K.one), m1)
    if s == K.one:
        return FixedPointSum("HoldsExactly", FieldElement(K, s))
    return FixedPointSum("Fails", FieldElement(K, s))


# ---------------------------------------------------------------------------
# residue obstruction


@dataclass
class ObstructionResult:
    obstructed: bool
    reason: str = ""  # "ResidueCount" or "IsospectralCollapse"
    hypothesis: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def __str__(self):
        return f"Obstructed({self.reason})" if self.obstructed else "NotObstructedByTheseTests"


def residue_obstruction(r, p, d):
    """Gates ruling out a generally convergent algorithm Poly_r -> Rat_d at
    residue characteristic p (0 for equal characteristic zero)."""
    if r < 2 or d < 2:
        raise ValueError("need r >= 2 and d >= 2")
    if p < 0 or (p and not is_prime(p)):
        raise ValueError(f"residue characteristic {p} is not 0 or a prime")
    notes = []
    if p == 0 or p >= r:
        if p == 0 or (r - 1) % p:
            hyp = {
                "attracting_fixed_points": r,
                "premise": "each attracting fixed point has 1/(1 - lambda) = 1 mod m, the rest contribute 0 mod m",
                "consequence": "r = 1 mod m, i.e. p | r - 1",
                "checked": f"p = {p} does not divide r - 1 = {r - 1}" if p else "residue characteristic 0",
            }
            return ObstructionResult(True, "ResidueCount", hyp)
        notes.append(f"ResidueCount: p = {p} divides r - 1 = {r - 1}")
    else:
        notes.append(f"ResidueCount: needs p = 0 or p >= r, have p = {p} < r = {r}")
    if p > d:
        hyp = {
            "premise": "isospectral families are trivial when p > d (cited, not computed)",
            "checked": f"p = {p} > d = {d}",
        }
        return ObstructionResult(True, "IsospectralCollapse", hyp, notes)
    notes.append(f"IsospectralCollapse: needs p > d, have p = {p} <= d = {d}")
    return ObstructionResult(False, "", {}, notes)


# ---------------------------------------------------------------------------
# valuation-level orbit tracking


@dataclass
class ProbeResult:
    seed: int
    valuations: list
    verdict: str  # "NoConvergenceToSinks", "ConvergesTo(0)", "ConvergesTo(inf)", "Indeterminate", "NoVerdict"
    step: Optional[int] = None  # first indeterminate step


def _forced_min(vals, s):
    """v(sum a_i z^i) for v(z) = s when the minimum is attained once; else None."""
    terms = [va + i * s for i, va in enumerate(vals) if va != INF]
    if not terms:
        return INF
    m = min(terms)
    return m if terms.count(m) == 1 else None


def _step(fv, gv, s):
    a = _forced_min(fv, s)
    b = _forced_min(gv, s)
    if a is None or b is None:
        return None
    if a == INF and b == INF:
        return None
    return a - b


def convergence_probe(phi, v, seeds, iters=20, strict=False):
    """Follow v(z_i) along the orbit for a generic z_0 of each seed valuation."""
    fv = [v.valuation(c) for c in phi.F]
    gv = [v.valuation(c) for c in phi.G]
    out = []
    for seed in seeds:
        vals = [seed]
        bad = None
        for i in range(iters):
            nxt = _step(fv, gv, vals[-1])
            if nxt is None or abs(nxt) == INF:
                bad = i + 1
                break
            vals.append(nxt)
        if bad is not None:
            if strict:
                raise IndeterminateStep(f"seed {seed}: valuation not forced at step {bad}")
            out.append(ProbeResult(seed, vals, "Indeterminate", bad))
            continue
        out.append(ProbeResult(seed, vals, _verdict(vals)))
    return out


def _verdict(vals):
    if all(x == 0 for x in vals):
        return "NoConvergenceToSinks"
    rising = all(b > a for a, b in zip(vals, vals[1:]))
    falling = all(b < a for a, b in zip(vals, vals[1:]))
    if rising and vals[0] > 0:
        return "ConvergesTo(0)"
    if falling and vals[0] < 0:
        return "ConvergesTo(inf)"
    return "NoVerdict"
