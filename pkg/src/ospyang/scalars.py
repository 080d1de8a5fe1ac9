"""Exact arithmetic substrate: rationals, polynomials in (u, v, k), rational functions.

Every quantity in the package is built over this module.  Coefficients are
arbitrary-precision ``fractions.Fraction``; polynomials are sparse maps from
exponent triples to coefficients; a ``Scalar`` is a reduced fraction of two
polynomials.  There is no floating-point mode anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction

VARS = ("u", "v", "k")  # k stands in for the fusion shift parameter kappa
NVARS = len(VARS)
_ZEROEXP = (0, 0, 0)


def _monomial_key(exp):
    # graded lexicographic, u < v < k: total degree first, then k, v, u
    return (sum(exp), exp[2], exp[1], exp[0])


class MultiPoly:
    """Sparse polynomial in (u, v, k) over Fraction.  Immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        clean = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    clean[exp] = c if isinstance(c, Fraction) else Fraction(c)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ---------------------------------------------------
    @staticmethod
    def const(c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly({_ZEROEXP: c}) if c else MultiPoly()

    @staticmethod
    def var(name: str) -> "MultiPoly":
        i = VARS.index(name)
        exp = tuple(1 if j == i else 0 for j in range(NVARS))
        return MultiPoly({exp: Fraction(1)})

    # -- queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZEROEXP in self.terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("polynomial is not constant: %s" % self)
        return self.terms.get(_ZEROEXP, Fraction(0))

    def degree(self, var: int | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        return max(e[var] for e in self.terms)

    def leading(self):
        """(exponent, coefficient) of the leading monomial in the fixed order."""
        exp = max(self.terms, key=_monomial_key)
        return exp, self.terms[exp]

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return MultiPoly(terms)

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly()
            return MultiPoly({e: x * c for e, x in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return MultiPoly()
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                s = terms.get(exp, 0) + c1 * c2
                if s:
                    terms[exp] = s
                else:
                    terms.pop(exp, None)
        return MultiPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self.terms.items())))
        return self._hash

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        vals = [Fraction(assignment.get(v, 0)) for v in VARS]
        total = Fraction(0)
        for exp, c in self.terms.items():
            t = c
            for i, e in enumerate(exp):
                if e:
                    t *= vals[i] ** e
            total += t
        return total

    # -- printing --------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=_monomial_key, reverse=True):
            c = self.terms[exp]
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(VARS[i])
                elif e > 1:
                    factors.append("%s^%d" % (VARS[i], e))
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = str(abs(c)) + "*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            out += " %s %s" % (sign, body)
        return out

    def __repr__(self):
        return "MultiPoly(%s)" % self


ZERO_POLY = MultiPoly()
ONE_POLY = MultiPoly.const(1)


# -- polynomial gcd (content/primitive-part Euclid over Q) ----------------

def _to_nested(p: MultiPoly, var: int) -> dict:
    """View p as a univariate polynomial in `var` with MultiPoly coefficients."""
    out: dict = {}
    for exp, c in p.terms.items():
        rest = list(exp)
        d = rest[var]
        rest[var] = 0
        key = tuple(rest)
        coeff = out.setdefault(d, {})
        coeff[key] = coeff.get(key, 0) + c
    return {d: MultiPoly(t) for d, t in out.items() if any(t.values())}


def _from_nested(coeffs: Mapping[int, MultiPoly], var: int) -> MultiPoly:
    terms: dict = {}
    for d, poly in coeffs.items():
        for exp, c in poly.terms.items():
            e = list(exp)
            e[var] += d
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return MultiPoly(terms)


def _content_gcd(polys: Iterable[MultiPoly], level: int) -> MultiPoly:
    g = ZERO_POLY
    for p in polys:
        g = _gcd_level(g, p, level)
        if g.is_const() and not g.is_zero():
            break
    return g


def _divide_exact(p: MultiPoly, q: MultiPoly, var: int):
    """Exact division of p by q treating both as univariate in `var`.

    Returns the quotient, or None if q does not divide p.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    pn = _to_nested(p, var)
    qn = _to_nested(q, var)
    dq = max(qn) if qn else 0
    lead_q = qn[dq]
    quot: dict = {}
    while pn:
        dp = max(pn)
        if dp < dq:
            return None
        lc = _divide_exact_flat(pn[dp], lead_q)
        if lc is None:
            return None
        quot[dp - dq] = lc
        for d, c in qn.items():
            nd = d + dp - dq
            cur = pn.get(nd, ZERO_POLY) - lc * c
            if cur.is_zero():
                pn.pop(nd, None)
            else:
                pn[nd] = cur
    return _from_nested(quot, var)


def _divide_exact_flat(p: MultiPoly, q: MultiPoly):
    """Exact multivariate division p/q, or None."""
    if q.is_const():
        c = q.const_value()
        return MultiPoly({e: x / c for e, x in p.terms.items()})
    for var in range(NVARS):
        if q.degree(var) > 0:
            return _divide_exact(p, q, var)
    return None


def _gcd_level(a: MultiPoly, b: MultiPoly, level: int) -> MultiPoly:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if level < 0 or a.is_const() or b.is_const():
        return ONE_POLY
    if a.degree(level) == 0 and b.degree(level) == 0:
        return _gcd_level(a, b, level - 1)
    an = _to_nested(a, level)
    bn = _to_nested(b, level)
    ca = _content_gcd(an.values(), level - 1)
    cb = _content_gcd(bn.values(), level - 1)
    cont = _gcd_level(ca, cb, level - 1)
    pa = _from_nested({d: _must(_divide_exact_flat(c, ca)) for d, c in an.items()}, level)
    pb = _from_nested({d: _must(_divide_exact_flat(c, cb)) for d, c in bn.items()}, level)
    # primitive pseudo-remainder sequence in variable `level`
    while not pb.is_zero():
        r = _pseudo_rem(pa, pb, level)
        if r.is_zero():
            pa = pb
            pb = ZERO_POLY
            break
        rn = _to_nested(r, level)
        cr = _content_gcd(rn.values(), level - 1)
        r = _from_nested({d: _must(_divide_exact_flat(c, cr)) for d, c in rn.items()}, level)
        pa, pb = pb, r
    if pb.is_zero() and pa.degree(level) == 0:
        pa = ONE_POLY if not pa.is_const() else pa
    g = cont * pa
    # normalize: positive leading coefficient, content 1 over Q
    exp, lead = g.leading()
    g = g * (1 / lead)
    return g


def _must(x):
    if x is None:
        raise ArithmeticError("exact division failed during gcd computation")
    return x


def _pseudo_rem(a: MultiPoly, b: MultiPoly, var: int) -> MultiPoly:
    an = _to_nested(a, var)
    bn = _to_nested(b, var)
    db = max(bn)
    lb = bn[db]
    r = dict(an)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        # lb * r - lr * x^(dr-db) * b
        new: dict = {}
        for d, c in r.items():
            new[d] = lb * c
        for d, c in bn.items():
            nd = d + dr - db
            new[nd] = new.get(nd, ZERO_POLY) - lr * c
        r = {d: c for d, c in new.items() if not c.is_zero()}
    return _from_nested(r, var)


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic gcd of two polynomials over Q (1 if coprime)."""
    g = _gcd_level(a, b, NVARS - 1)
    if g.is_zero():
        return g
    _, lead = g.leading()
    return g * (1 / lead)


# -- Scalar: the fraction field -------------------------------------------

class Scalar:
    """Element of the fraction field of MultiPoly, kept in canonical form.

    Canonical form: gcd(num, den) = 1 and the denominator has positive
    leading coefficient in the graded-lex order (u < v < k).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if isinstance(num, (int, Fraction)):
            num = MultiPoly.const(num)
        if den is None:
            den = ONE_POLY
        elif isinstance(den, (int, Fraction)):
            den = MultiPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Scalar")
        if not _reduced:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def const(c) -> "Scalar":
        return Scalar(MultiPoly.const(c), ONE_POLY, _reduced=True)

    @staticmethod
    def var(name: str) -> "Scalar":
        return Scalar(MultiPoly.var(name), ONE_POLY, _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE_POLY

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == ONE_POLY and other.den == ONE_POLY:
            return Scalar(self.num + other.num, ONE_POLY)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == ONE_POLY and other.den == ONE_POLY:
            return Scalar(self.num * other.num, ONE_POLY, _reduced=True)
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return Scalar.const(1) / self ** (-n)
        return Scalar(self.num ** n, self.den ** n)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        d = self.den.evaluate(assignment)
        if d == 0:
            raise ZeroDivisionError("pole of scalar at assignment %r" % (assignment,))
        return self.num.evaluate(assignment) / d

    def substitute(self, **shifts) -> "Scalar":
        """Substitute u, v, k by polynomial expressions given as Scalars."""
        vals = {}
        for name in VARS:
            vals[name] = shifts.get(name, Scalar.var(name))
        return _subst_poly(self.num, vals) / _subst_poly(self.den, vals)

    def degree(self, var_name: str) -> int:
        i = VARS.index(var_name)
        return max(self.num.degree(i), self.den.degree(i))

    def __str__(self):
        if self.den == ONE_POLY:
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = "(%s)" % num
        den = str(self.den)
        if len(self.den.terms) > 1:
            den = "(%s)" % den
        return "%s / %s" % (num, den)

    def __repr__(self):
        return "Scalar(%s)" % self


def _reduce(num: MultiPoly, den: MultiPoly):
    if num.is_zero():
        return ZERO_POLY, ONE_POLY
    if den.is_const():
        c = den.const_value()
        return num * (1 / c), ONE_POLY
    g = poly_gcd(num, den)
    if not g.is_const():
        num = _must(_divide_exact_flat(num, g))
        den = _must(_divide_exact_flat(den, g))
    _, lead = den.leading()
    if lead < 0:
        num, den = num * Fraction(-1), den * Fraction(-1)
    if den.is_const():
        c = den.const_value()
        return num * (1 / c), ONE_POLY
    # make the leading denominator coefficient exactly +1 for canonicity
    _, lead = den.leading()
    if lead != 1:
        num, den = num * (1 / lead), den * (1 / lead)
    return num, den


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.const(x)
    return NotImplemented


def _subst_poly(p: MultiPoly, vals: Mapping[str, Scalar]) -> Scalar:
    total = Scalar.const(0)
    for exp, c in p.terms.items():
        t = Scalar.const(c)
        for i, e in enumerate(exp):
            if e:
                t = t * vals[VARS[i]] ** e
        total = total + t
    return total


ZERO = Scalar.const(0)
ONE = Scalar.const(1)
U = Scalar.var("u")
V = Scalar.var("v")
K = Scalar.var("k")


# -- spec-facing operations ------------------------------------------------

def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact field arithmetic; op is one of add/sub/mul/div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def scalar_eval(a: Scalar, assignment: Mapping[str, Fraction]) -> Fraction:
    return a.evaluate(assignment)


def is_identically_zero(a: Scalar) -> bool:
    return a.is_zero()


# -- textual serialization --------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+/\d+|\d+)|(?P<var>[uvk])|(?P<op>[-+*^()]))")


def format_poly(p: MultiPoly) -> str:
    return str(p)


def parse_poly(text: str) -> MultiPoly:
    """Parse the sorted-monomial-list format, e.g. "u^2*v - 3/2*u"."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError("cannot parse polynomial at %r" % text[pos:])
            break
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", Fraction(m.group("num"))))
        elif m.group("var"):
            tokens.append(("var", m.group("var")))
        else:
            tokens.append(("op", m.group("op")))
    return _Parser(tokens).parse()


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> MultiPoly:
        p = self.sum()
        if self.i != len(self.tokens):
            raise ValueError("trailing tokens in polynomial text")
        return p

    def sum(self) -> MultiPoly:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        total = self.term() * Fraction(sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                total = total + (t if val == "+" else -t)
            else:
                return total

    def term(self) -> MultiPoly:
        out = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                out = out * self.factor()
            elif kind == "op" and val == "/":
                raise ValueError("'/' not allowed inside a polynomial factor")
            else:
                return out

    def factor(self) -> MultiPoly:
        kind, val = self.take()
        if kind == "num":
            base = MultiPoly.const(val)
            # allow "3/2" already handled by Fraction in the tokenizer
        elif kind == "var":
            base = MultiPoly.var(val)
        elif kind == "op" and val == "(":
            base = self.sum()
            kind, val = self.take()
            if (kind, val) != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
        else:
            raise ValueError("unexpected token %r" % ((kind, val),))
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ValueError("exponent must be an integer")
            base = base ** int(val)
        return base


def format_scalar(s: Scalar) -> str:
    return str(s)


def parse_scalar(text: str) -> Scalar:
    """Parse "num / den" where num, den are polynomial texts.

    Fraction literals like 3/2 are single tokens, so only a bare top-level
    '/' separates numerator from denominator.
    """
    tokens = _tokenize(text)
    depth = 0
    for i, (kind, val) in enumerate(tokens):
        if kind == "op" and val == "(":
            depth += 1
        elif kind == "op" and val == ")":
            depth -= 1
        elif kind == "op" and val == "/" and depth == 0:
            num = _Parser(_unwrap(tokens[:i])).parse()
            den = _Parser(_unwrap(tokens[i + 1:])).parse()
            return Scalar(num, den)
    return Scalar(_Parser(tokens).parse())


def _tokenize(text: str):
    tokens = []
    pos = 0
    pattern = re.compile(r"\s*(?:(?P<num>\d+/\d+|\d+)|(?P<var>[uvk])|(?P<op>[-+*^()/]))")
    while pos < len(text):
        m = pattern.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError("cannot parse scalar at %r" % text[pos:])
            break
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", Fraction(m.group("num"))))
        elif m.group("var"):
            tokens.append(("var", m.group("var")))
        else:
            tokens.append(("op", m.group("op")))
    return tokens


def _unwrap(tokens):
    # drop a single enclosing parenthesis pair if present
    if len(tokens) >= 2 and tokens[0] == ("op", "(") and tokens[-1] == ("op", ")"):
        depth = 0
        for i, tok in enumerate(tokens):
            if tok == ("op", "("):
                depth += 1
            elif tok == ("op", ")"):
                depth -= 1
                if depth == 0:
                    return tokens[1:-1] if i == len(tokens) - 1 else tokens
    return tokens
