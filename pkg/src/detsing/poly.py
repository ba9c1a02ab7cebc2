"""Exact multivariate polynomial arithmetic over the rationals.

A polynomial is an immutable term map from exponent tuples to nonzero
Fraction coefficients, tied to an ordered variable set.  Exponent tuples
index into the variable set, whose order is fixed for the lifetime of a
computation.  All operations are pure; any value may be shared freely.

The text grammar accepted by :func:`parse_polynomial`:

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := rational | ident | '(' expr ')'
    rational := nat ('/' nat)?

Whitespace is insignificant.  Identifiers are a letter followed by
letters, digits or underscores.  The ``'/' nat`` denominator is a strict
extension of the integer-only model-file grammar so that printed
polynomials with rational coefficients re-parse (print/parse round
trip); integer-coefficient input is unaffected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ParseError,
    UnknownVariableError,
    ValidationError,
    VariableSetMismatchError,
)

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class VariableSet:
    """Ordered, disjoint ambient coordinates and family parameters."""

    ambient: tuple
    parameters: tuple = ()

    def __post_init__(self):
        names = self.ambient + self.parameters
        if not names:
            raise ValidationError("variable set must not be empty")
        if len(set(names)) != len(names):
            raise ValidationError("variable names must be unique")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @property
    def names(self):
        return self.ambient + self.parameters

    def __len__(self):
        return len(self.ambient) + len(self.parameters)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    def is_parameter(self, name):
        return name in self.parameters

    def without_ambient(self, name):
        """Variable set with one ambient coordinate removed (slicing)."""
        if name not in self.ambient:
            raise UnknownVariableError(f"{name!r} is not an ambient variable")
        return VariableSet(tuple(v for v in self.ambient if v != name), self.parameters)

    def ambient_only(self):
        return VariableSet(self.ambient, ())

    def extended(self, extra):
        """Append a fresh working variable (tag variables for elimination)."""
        return VariableSet(self.names + (extra,), ())

    def fresh_name(self, stem):
        name = stem
        i = 0
        while name in self._index:
            i += 1
            name = f"{stem}{i}"
        return name


def _grevlex_key(exps):
    # Ascending sort key: compare total degree, then reversed negated exponents.
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrdering:
    """A monomial order: grevlex, lex, or block elimination.

    ``block`` holds the indices of the first (eliminated) block; for the
    public block-elimination(first-block-size) form it is range(size).
    """

    kind: str
    block: tuple = ()

    @staticmethod
    def grevlex():
        return MonomialOrdering("grevlex")

    @staticmethod
    def lex():
        return MonomialOrdering("lex")

    @staticmethod
    def block_elimination(first_block_size):
        return MonomialOrdering("block", tuple(range(first_block_size)))

    @staticmethod
    def eliminating(indices):
        return MonomialOrdering("block", tuple(sorted(indices)))

    def key(self, exps):
        """Sort key; larger key means larger monomial."""
        if self.kind == "grevlex":
            return _grevlex_key(exps)
        if self.kind == "lex":
            return exps
        inside = self.block
        first = tuple(exps[i] for i in inside)
        rest = tuple(e for i, e in enumerate(exps) if i not in inside)
        return (_grevlex_key(first), _grevlex_key(rest))


GREVLEX = MonomialOrdering.grevlex()
LEX = MonomialOrdering.lex()


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, vars: VariableSet, terms=None):
        self.vars = vars
        clean = {}
        if terms:
            width = len(vars)
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff == 0:
                    continue
                if len(mono) != width or any(e < 0 for e in mono):
                    raise ValidationError(f"bad exponent vector {mono!r}")
                clean[tuple(mono)] = coeff
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(vars):
        return Polynomial(vars)

    @staticmethod
    def constant(vars, value):
        return Polynomial(vars, {(0,) * len(vars): Fraction(value)})

    @staticmethod
    def variable(vars, name):
        exp = [0] * len(vars)
        exp[vars.index(name)] = 1
        return Polynomial(vars, {tuple(exp): Fraction(1)})

    # -- inspection ----------------------------------------------------

    @property
    def terms(self):
        return self._terms

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(sum(m) == 0 for m in self._terms)

    def constant_value(self):
        return self._terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def leading_monomial(self, ordering=GREVLEX):
        if not self._terms:
            raise ValidationError("zero polynomial has no leading monomial")
        return max(self._terms, key=ordering.key)

    def leading_coefficient(self, ordering=GREVLEX):
        return self._terms[self.leading_monomial(ordering)]

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            items = tuple(sorted(self._terms.items()))
            self._hash = hash((self.vars.names, items))
        return self._hash

    def __repr__(self):
        return f"Polynomial({poly_to_str(self)!r})"

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise VariableSetMismatchError("operands use different variable sets")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.vars, out)

    def __neg__(self):
        return Polynomial(self.vars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = monomial_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.vars, out)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.vars)
        return Polynomial(self.vars, {m: c * v for m, v in self._terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValidationError("polynomial powers must be non-negative integers")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and substitution --------------------------------------

    def derivative(self, name):
        """Formal partial derivative with respect to one variable."""
        j = self.vars.index(name)
        out = {}
        for m, c in self._terms.items():
            e = m[j]
            if e == 0:
                continue
            mm = list(m)
            mm[j] = e - 1
            out[tuple(mm)] = c * e
        return Polynomial(self.vars, out)

    def substitute(self, assignment, target=None):
        """Simultaneous substitution of polynomials for variables.

        ``assignment`` maps variable names to polynomials over a common
        target variable set.  Variables not assigned must exist (by
        name) in the target set and map to themselves.
        """
        values = {}
        for name, val in assignment.items():
            self.vars.index(name)  # raises for unknown names
            if not isinstance(val, Polynomial):
                raise ValidationError("substitution values must be polynomials")
            values[name] = val
        if target is None:
            for val in values.values():
                target = val.vars
                break
            else:
                target = self.vars
        for val in values.values():
            if val.vars != target:
                raise VariableSetMismatchError(
                    "substitution values use different variable sets"
                )
        per_var = []
        for name in self.vars.names:
            if name in values:
                per_var.append(values[name])
            else:
                per_var.append(Polynomial.variable(target, name))
        result = Polynomial.zero(target)
        pow_cache = {}
        for m, c in self._terms.items():
            piece = Polynomial.constant(target, c)
            for j, e in enumerate(m):
                if e == 0:
                    continue
                key = (j, e)
                if key not in pow_cache:
                    pow_cache[key] = per_var[j] ** e
                piece = piece * pow_cache[key]
            result = result + piece
        return result

    def lift(self, target: VariableSet):
        """Re-express over a larger variable set containing the same names."""
        positions = [target.index(n) for n in self.vars.names]
        width = len(target)
        out = {}
        for m, c in self._terms.items():
            mm = [0] * width
            for pos, e in zip(positions, m):
                mm[pos] = e
            out[tuple(mm)] = c
        return Polynomial(target, out)

    def restrict(self, target: VariableSet):
        """Re-express over a smaller variable set; dropped variables must
        not occur."""
        positions = []
        for i, n in enumerate(self.vars.names):
            positions.append(target._index.get(n))
        width = len(target)
        out = {}
        for m, c in self._terms.items():
            mm = [0] * width
            for i, e in enumerate(m):
                if e == 0:
                    continue
                pos = positions[i]
                if pos is None:
                    raise ValidationError(
                        f"variable {self.vars.names[i]!r} occurs but is not in the target set"
                    )
                mm[pos] = e
            out[tuple(mm)] = c
        return Polynomial(target, out)


# ---------------------------------------------------------------------------
# Parsing


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def error(self, message):
        raise ParseError(message, position=self.pos)

    def take_nat(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a non-negative integer")
        return int(self.text[start : self.pos])

    def take_ident(self):
        self.skip_ws()
        m = _IDENT_RE.match(self.text, self.pos)
        if not m:
            self.error("expected an identifier")
        self.pos = m.end()
        return m.group(0)

    def take(self, ch):
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.take(ch):
            self.error(f"expected {ch!r}")


def parse_polynomial(text, vars: VariableSet) -> Polynomial:
    """Parse a polynomial expression over the given variables."""
    toks = _Tokens(text)
    poly = _parse_expr(toks, vars)
    toks.skip_ws()
    if toks.pos != len(toks.text):
        toks.error(f"unexpected input {toks.text[toks.pos]!r}")
    return poly


def _parse_expr(toks, vars):
    negate = toks.take("-")
    poly = _parse_term(toks, vars)
    if negate:
        poly = -poly
    while True:
        if toks.take("+"):
            poly = poly + _parse_term(toks, vars)
        elif toks.take("-"):
            poly = poly - _parse_term(toks, vars)
        else:
            return poly


def _parse_term(toks, vars):
    poly = _parse_factor(toks, vars)
    while toks.take("*"):
        poly = poly * _parse_factor(toks, vars)
    return poly


def _parse_factor(toks, vars):
    base = _parse_base(toks, vars)
    if toks.take("^"):
        return base ** toks.take_nat()
    return base


def _parse_base(toks, vars):
    ch = toks.peek()
    if ch is None:
        toks.error("unexpected end of expression")
    if ch == "(":
        toks.take("(")
        inner = _parse_expr(toks, vars)
        toks.expect(")")
        return inner
    if ch.isdigit():
        num = toks.take_nat()
        if toks.take("/"):
            den = toks.take_nat()
            if den == 0:
                toks.error("zero denominator")
            return Polynomial.constant(vars, Fraction(num, den))
        return Polynomial.constant(vars, num)
    if ch.isalpha():
        start = toks.pos
        name = toks.take_ident()
        try:
            return Polynomial.variable(vars, name)
        except UnknownVariableError:
            raise ParseError(f"unknown variable {name!r}", position=start) from None
    toks.error(f"unexpected character {ch!r}")


# ---------------------------------------------------------------------------
# Printing


def _coeff_str(c: Fraction):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _monomial_str(mono, names):
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_to_str(p: Polynomial) -> str:
    """Canonical text form: terms in descending grevlex order."""
    if p.is_zero():
        return "0"
    names = p.vars.names
    monos = sorted(p.terms, key=GREVLEX.key, reverse=True)
    pieces = []
    for m in monos:
        c = p.terms[m]
        mono = _monomial_str(m, names)
        mag = abs(c)
        if not mono:
            body = _coeff_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coeff_str(mag)}*{mono}"
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = body if sign == "+" else "-" + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
