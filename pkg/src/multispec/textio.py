"""Text encodings for fields, elements, polynomials, maps and places.

Grammar summary::

    field    := "Q" | "0" | "q:0" | P "^" K ["[modulus=" LIST "]"] ["(" VAR ")"]
    element  := arithmetic expression in integers, "g" (extension generator),
                the function-field variable, "+ - * / ^ ( )"; a bracketed
                integer list "[c0,c1,...]" is an extension element by
                coefficient vector
    map      := "field: " FIELD "; num = " LIST "; den = " LIST ["; deg = " K]
    place    := "prime:" P | "place:" POLY " over " FIELD | "place:inf over " FIELD
                | "trivial over " FIELD

Lists are coefficient lists, constant term first.
"""

from __future__ import annotations

import re

from .algebra import dense
from .algebra.fields import FieldElement, field_make, function_field
from .errors import ParseError


def _linecol(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Lexer:
    def __init__(self, text, offset=0, source=None):
        self.text = text
        self.source = source if source is not None else text
        self.offset = offset
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            if m.group(1) is not None:
                self.toks.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.toks.append(("name", m.group(2), m.start(2)))
            elif m.group(3) is not None and not m.group(3).isspace():
                self.toks.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg, expected=None, tok=None):
        tok = tok or self.peek()
        line, col = _linecol(self.source, self.offset + tok[2])
        return ParseError(msg, line, col, expected)


class _ExprParser:
    """Recursive descent evaluator producing raw field values."""

    def __init__(self, field, symbols, lexer):
        self.F = field
        self.symbols = symbols
        self.lx = lexer

    def parse(self):
        v = self.expr()
        if self.lx.peek()[0] != "end":
            raise self.lx.error("unexpected token", "end of expression")
        return v

    def expr(self):
        F = self.F
        v = self.term()
        while True:
            kind, val, _ = self.lx.peek()
            if kind == "op" and val == "+":
                self.lx.next()
                v = F.add(v, self.term())
            elif kind == "op" and val == "-":
                self.lx.next()
                v = F.sub(v, self.term())
            else:
                return v

    def term(self):
        F = self.F
        v = self.unary()
        while True:
            kind, val, _ = self.lx.peek()
            if kind == "op" and val == "*":
                self.lx.next()
                v = F.mul(v, self.unary())
            elif kind == "op" and val == "/":
                tok = self.lx.next()
                d = self.unary()
                if d == F.zero:
                    raise self.lx.error("division by zero", tok=tok)
                v = F.div(v, d)
            elif kind == "name" or (kind == "op" and val in "(["):
                v = F.mul(v, self.power())
            else:
                return v

    def unary(self):
        kind, val, _ = self.lx.peek()
        if kind == "op" and val == "-":
            self.lx.next()
            return self.F.neg(self.unary())
        if kind == "op" and val == "+":
            self.lx.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.lx.peek()
        if kind == "op" and val == "^":
            self.lx.next()
            sign = 1
            if self.lx.peek()[:2] == ("op", "-"):
                self.lx.next()
                sign = -1
            tok = self.lx.next()
            if tok[0] != "int":
                raise self.lx.error("bad exponent", "integer", tok)
            return self.F.pow(base, sign * int(tok[1]))
        return base

    def atom(self):
        F = self.F
        tok = self.lx.next()
        kind, val, _ = tok
        if kind == "int":
            return F.from_int(int(val))
        if kind == "name":
            if val in self.symbols:
                return self.symbols[val]
            raise self.lx.error(f"unknown symbol {val!r}", "one of " + ", ".join(sorted(self.symbols)) if self.symbols else "a number", tok)
        if kind == "op" and val == "(":
            v = self.expr()
            close = self.lx.next()
            if close[:2] != ("op", ")"):
                raise self.lx.error("unbalanced parenthesis", "')'", close)
            return v
        if kind == "op" and val == "[":
            digits = []
            while True:
                neg = False
                t = self.lx.next()
                if t[:2] == ("op", "-"):
                    neg = True
                    t = self.lx.next()
                if t[0] != "int":
                    raise self.lx.error("bad coefficient vector", "integer", t)
                digits.append(-int(t[1]) if neg else int(t[1]))
                t = self.lx.next()
                if t[:2] == ("op", "]"):
                    break
                if t[:2] != ("op", ","):
                    raise self.lx.error("bad coefficient vector", "',' or ']'", t)
            return _vector_element(F, digits, self.lx, tok)
        raise self.lx.error("unexpected token", "number, symbol or '('", tok)


def _vector_element(F, digits, lx, tok):
    target = F.base if F.kind == "rational-function" else F
    if target.kind != "extension":
        raise lx.error("coefficient vectors only denote extension-field elements", tok=tok)
    if len(digits) > target.degree:
        raise lx.error("coefficient vector too long", f"at most {target.degree} entries", tok)
    v = target.from_vec(digits + [0] * (target.degree - len(digits)))
    return F.const(v) if F is not target else v


def field_symbols(F):
    syms = {}
    if F.kind == "extension":
        syms["g"] = F.gen
    if F.kind == "rational-function":
        syms[F.var] = F.gen
        if F.base.kind == "extension":
            syms["g"] = F.const(F.base.gen)
    return syms


def parse_element(F, text, symbols=None, *, offset=0, source=None):
    syms = field_symbols(F)
    if symbols:
        syms.update(symbols)
    lx = _Lexer(text, offset, source)
    if lx.peek()[0] == "end":
        raise lx.error("empty expression", "an element")
    return FieldElement(F, _ExprParser(F, syms, lx).parse())


def format_element(x):
    return str(x)


# ---------------------------------------------------------------------------
# fields

_FIELD_RE = re.compile(
    r"^\s*(?:GF\()?\s*(\d+)\s*(?:\^\s*(\d+))?\s*\)?\s*"
    r"(?:\[\s*modulus\s*=\s*(\[[^\]]*\])\s*\])?\s*(?:\(\s*([A-Za-z_]\w*)\s*\))?\s*$"
)


def parse_field(text):
    s = text.strip()
    m = re.fullmatch(r"(?:Q|q:0|0)(?:\^1)?\s*(?:\(\s*([A-Za-z_]\w*)\s*\))?", s)
    if m:
        Q = field_make(0)
        return function_field(Q, m.group(1)) if m.group(1) else Q
    m = _FIELD_RE.match(s)
    if not m:
        raise ParseError(f"cannot read field {text!r}", 1, 1, "p^k, p^k(t) or Q")
    p = int(m.group(1))
    k = int(m.group(2) or 1)
    modulus = None
    if m.group(3):
        modulus = [int(x) for x in m.group(3).strip("[]").split(",") if x.strip()]
    F = field_make(p, k, modulus)
    if m.group(4):
        return function_field(F, m.group(4))
    return F


def format_field(F):
    if F.kind == "rational-function":
        return f"{format_field(F.base)}({F.var})"
    if F.kind == "rationals":
        return "Q"
    if F.kind == "prime":
        return f"{F.p}^1"
    mod = ",".join(str(c) for c in F.modulus)
    return f"{F.p}^{F.degree}[modulus=[{mod}]]"


# ---------------------------------------------------------------------------
# coefficient lists and polynomials


def split_top(text, sep=","):
    """Split on ``sep`` outside brackets/parentheses; returns (piece, offset) pairs."""
    out = []
    opened = []
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            opened.append(i)
        elif ch in ")]":
            if not opened:
                line, col = _linecol(text, i)
                raise ParseError(f"unmatched {ch!r}", line, col, "matching opening bracket")
            opened.pop()
        elif ch == sep and not opened:
            out.append((text[start:i], start))
            start = i + 1
    if opened:
        line, col = _linecol(text, opened[-1])
        raise ParseError("unclosed bracket", line, col, "closing bracket")
    out.append((text[start:], start))
    return out


def parse_list(F, text, *, offset=0, source=None, symbols=None):
    source = source if source is not None else text
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if not (s.startswith("[") and s.endswith("]")):
        line, col = _linecol(source, offset + lead)
        raise ParseError("coefficient list must be bracketed", line, col, "'[' ... ']'")
    inner = s[1:-1]
    base = offset + lead + 1
    if not inner.strip():
        return []
    return [
        parse_element(F, piece, symbols, offset=base + off, source=source).v
        for piece, off in split_top(inner)
    ]


def format_list(F, coeffs):
    return "[" + ",".join(F.format(c) for c in coeffs) + "]"


def parse_poly(F, text, var="x"):
    from .algebra.poly import Poly

    return Poly.raw(F, parse_list(F, text), var)


def format_poly_list(p):
    return format_list(p.field, p.c)


# ---------------------------------------------------------------------------
# maps, families and places


def _fields_of(text):
    """Split ``key = value; ...`` into a dict of (value, offset)."""
    out = {}
    for piece, off in split_top(text, ";"):
        if not piece.strip():
            continue
        m = re.match(r"\s*([A-Za-z_]+)\s*[:=]\s*", piece)
        if not m:
            line, col = _linecol(text, off)
            raise ParseError("expected 'key = value'", line, col, "key")
        out[m.group(1).lower()] = (piece[m.end():], off + m.end())
    return out


def parse_map_spec(text):
    """Parse a map spec; function-field maps come back as a Family."""
    from .dynamics import map_make
    from .families import Family

    parts = _fields_of(text)
    for key in ("field", "num", "den"):
        if key not in parts:
            raise ParseError(f"missing '{key}'", 1, 1, key)
    ftext, foff = parts["field"]
    try:
        F = parse_field(ftext)
    except ParseError as e:
        line, col = _linecol(text, foff)
        raise ParseError(f"cannot read field {ftext.strip()!r}", line, col, e.expected) from None
    num = parse_list(F, parts["num"][0], offset=parts["num"][1], source=text)
    den = parse_list(F, parts["den"][0], offset=parts["den"][1], source=text)
    degree = None
    if "deg" in parts:
        degree = int(parts["deg"][0].strip())
    phi = map_make(num, den, F, degree=degree, raw=True)
    if F.kind == "rational-function":
        return Family(phi)
    return phi


def format_map_spec(phi):
    """Affine spec of a map; includes ``deg`` only when it is not implied."""
    from .families import Family

    if isinstance(phi, Family):
        phi = phi.map
    F = phi.field
    num = dense.trim(F, list(phi.F))
    den = dense.trim(F, list(phi.G))
    s = f"field: {format_field(F)}; num={format_list(F, num)}; den={format_list(F, den)}"
    if max(len(num), len(den)) - 1 != phi.degree:
        s += f"; deg={phi.degree}"
    return s


def parse_place(text):
    from .valuation import InfinitePlace, PolyPlace, PrimePlace, TrivialPlace

    s = text.strip()
    m = re.fullmatch(r"prime\s*:\s*(\d+)", s)
    if m:
        return PrimePlace(int(m.group(1)))
    m = re.fullmatch(r"trivial\s+over\s+(.+)", s)
    if m:
        return TrivialPlace(parse_field(m.group(1)))
    m = re.fullmatch(r"place\s*:\s*(.+?)\s+over\s+(.+)", s)
    if m:
        base = parse_field(m.group(2))
        if base.kind == "rational-function":
            base = base.base
        K = function_field(base)
        if m.group(1).strip() in ("inf", "infinity", "oo"):
            return InfinitePlace(K)
        pi = parse_element(K, m.group(1))
        return PolyPlace(K, pi)
    raise ParseError(f"cannot read place {text!r}", 1, 1, "prime:P, place:POLY over FIELD, place:inf over FIELD")


def format_place(v):
    return v.spec()


def parse_lattes_spec(text):
    """``A=<expr> B=<expr> [m=2] over <field>`` -> (A, B, m, field)."""
    m = re.fullmatch(r"\s*(?:lattes\s+)?(.*?)\s+over\s+(.+?)\s*", text)
    if not m:
        raise ParseError("expected 'A=<expr> B=<expr> m=<int> over <field>'", 1, 1, "'over'")
    F = parse_field(m.group(2))
    vals = {}
    for km in re.finditer(r"([ABm])\s*=\s*(\S+)", m.group(1)):
        vals[km.group(1)] = (km.group(2), km.start(2))
    for key in ("A", "B"):
        if key not in vals:
            raise ParseError(f"missing {key}=", 1, 1, f"{key}=<expr>")
    A = parse_element(F, vals["A"][0], offset=vals["A"][1], source=text)
    B = parse_element(F, vals["B"][0], offset=vals["B"][1], source=text)
    mm = int(vals["m"][0]) if "m" in vals else 2
    return A, B, mm, F


def format_lattes_spec(A, B, m, F):
    return f"A={F.format(A.v)} B={F.format(B.v)} m={m} over {format_field(F)}"
