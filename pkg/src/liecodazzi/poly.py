"""Exact sparse polynomials over Q in the four structure parameters.

Every quantity in the engine lives in the ring Q[a, b, g, d] where the
ASCII names a, b, g, d stand for the parameters alpha, beta, gamma,
delta.  Polynomials are kept in canonical form at all times: a term map
from exponent tuples to nonzero ``Fraction`` coefficients, so equality
is dict equality and "is zero" is "map empty".  No floating point
appears anywhere.

Printed output orders terms graded-lexicographically (total degree
first, then exponent tuple), descending, so rendering is deterministic.
Both the human text form (``-(a^2+b^2)``) and the JSON term-list form
round-trip through :func:`parse` / :func:`from_json`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

VARS = ("a", "b", "g", "d")
GREEK = {"a": "α", "b": "β", "g": "γ", "d": "δ"}
_VAR_INDEX = {v: i for i, v in enumerate(VARS)}
# Spelled-out and Greek aliases accepted on input.
_VAR_ALIASES = {
    "alpha": "a", "beta": "b", "gamma": "g", "delta": "d",
    "α": "a", "β": "b", "γ": "g", "δ": "d",
}

Rational = Union[int, Fraction]


class PolyError(ValueError):
    pass


def _as_fraction(c: Rational) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise PolyError(f"not an exact rational: {c!r}")


def _term_key(exps):
    # graded lex, built so that sorting descending puts higher total
    # degree first and breaks ties on the exponent tuple
    return (sum(exps), exps)


class Polynomial:
    """Immutable multivariate polynomial over Q in the fixed variables."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Rational] | None = None):
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != len(VARS) or any(e < 0 for e in exps):
                    raise PolyError(f"bad exponent tuple {exps!r}")
                c = _as_fraction(coeff)
                if c:
                    clean[exps] = clean.get(exps, Fraction(0)) + c
            clean = {e: c for e, c in clean.items() if c}
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def const(c: Rational) -> "Polynomial":
        c = _as_fraction(c)
        return Polynomial({(0, 0, 0, 0): c} if c else None)

    @staticmethod
    def var(name: str) -> "Polynomial":
        name = _VAR_ALIASES.get(name, name)
        if name not in _VAR_INDEX:
            raise PolyError(f"unknown variable {name!r}; expected one of {VARS}")
        exps = [0, 0, 0, 0]
        exps[_VAR_INDEX[name]] = 1
        return Polynomial({tuple(exps): 1})

    # -- ring operations ----------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        merged = dict(self.terms)
        for exps, c in other.terms.items():
            s = merged.get(exps, Fraction(0)) + c
            if s:
                merged[exps] = s
            else:
                merged.pop(exps, None)
        return _raw(merged)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return _raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prod: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                s = prod.get(exps, Fraction(0)) + c1 * c2
                if s:
                    prod[exps] = s
                else:
                    prod.pop(exps, None)
        return _raw(prod)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise PolyError(f"exponent must be a non-negative integer, got {n!r}")
        out = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: Rational) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero()
        return _raw({e: coeff * c for e, coeff in self.terms.items()})

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolyError(f"not a constant: {self}")
        return self.terms.get((0, 0, 0, 0), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def variables(self) -> set:
        used = set()
        for exps in self.terms:
            for v, e in zip(VARS, exps):
                if e:
                    used.add(v)
        return used

    def leading_coeff(self) -> Fraction:
        """Coefficient of the graded-lex leading term; 0 for zero."""
        if not self.terms:
            return Fraction(0)
        lead = max(self.terms, key=_term_key)
        return self.terms[lead]

    def monic(self) -> "Polynomial":
        """Divide by the leading coefficient (zero stays zero)."""
        lc = self.leading_coeff()
        if not lc:
            return self
        return self.scale(Fraction(1, 1) / lc)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- substitution and evaluation ------------------------------------

    def substitute(self, assignment: Mapping[str, "Polynomial | Rational"]) -> "Polynomial":
        """Simultaneous substitution of variables; unassigned pass through."""
        if not assignment:
            return self
        subs = {}
        for name, val in assignment.items():
            name = _VAR_ALIASES.get(name, name)
            if name not in _VAR_INDEX:
                raise PolyError(f"unknown variable {name!r}")
            subs[_VAR_INDEX[name]] = val if isinstance(val, Polynomial) else Polynomial.const(val)
        out = Polynomial.zero()
        for exps, coeff in self.terms.items():
            term = Polynomial.const(coeff)
            for i, e in enumerate(exps):
                if not e:
                    continue
                if i in subs:
                    term = term * subs[i] ** e
                else:
                    kept = [0, 0, 0, 0]
                    kept[i] = e
                    term = term * _raw({tuple(kept): Fraction(1)})
            out = out + term
        return out

    def eval_at(self, point: Mapping[str, Rational]) -> Fraction:
        """Exact value at a total assignment of all four variables."""
        vals = {}
        for name, v in point.items():
            name = _VAR_ALIASES.get(name, name)
            if name not in _VAR_INDEX:
                raise PolyError(f"unknown variable {name!r}")
            vals[_VAR_INDEX[name]] = _as_fraction(v)
        missing = [VARS[i] for i in range(len(VARS)) if i not in vals]
        if missing:
            raise PolyError(f"point misses variables {missing}")
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            v = coeff
            for i, e in enumerate(exps):
                if e:
                    v *= vals[i] ** e
            total += v
        return total

    # -- rendering -------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _term_key(t[0]), reverse=True)

    def text(self, greek: bool = False) -> str:
        if not self.terms:
            return "0"
        names = [GREEK[v] if greek else v for v in VARS]
        terms = self.sorted_terms()
        if len(terms) > 1 and all(c < 0 for _, c in terms):
            return "-(" + (-self).text(greek=greek) + ")"
        parts = []
        for exps, coeff in terms:
            s = _term_text(exps, coeff, names)
            if parts and not s.startswith("-"):
                parts.append("+")
            parts.append(s)
        return "".join(parts)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"Polynomial({self.text()})"

    def to_json(self) -> list:
        out = []
        for exps, coeff in self.sorted_terms():
            out.append({
                "coeff": str(coeff),
                "exps": {v: e for v, e in zip(VARS, exps) if e},
            })
        return out


def _raw(terms: dict) -> Polynomial:
    # bypasses __init__ cleaning; callers guarantee canonical input
    p = object.__new__(Polynomial)
    object.__setattr__(p, "terms", terms)
    return p


def _coerce(x) -> "Polynomial":
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    return NotImplemented


def _term_text(exps, coeff, names) -> str:
    factors = []
    for name, e in zip(names, exps):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    if not factors:
        return str(coeff)
    body = "*".join(factors)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{coeff}*{body}"


ZERO = Polynomial.zero()
ONE = Polynomial.const(1)
A = Polynomial.var("a")
B = Polynomial.var("b")
G = Polynomial.var("g")
D = Polynomial.var("d")


# -- parsing ---------------------------------------------------------------


class PolyParseError(PolyError):
    pass


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j])))
            i = j
            continue
        if ch.isalpha() or ch in GREEK.values():
            j = i
            while j < n and (text[j].isalpha() or text[j] in GREEK.values()):
                j += 1
            word = text[i:j]
            name = _VAR_ALIASES.get(word, word)
            if name not in _VAR_INDEX:
                raise PolyParseError(f"unknown name {word!r} in {text!r}")
            tokens.append(("var", name))
            i = j
            continue
        raise PolyParseError(f"unexpected character {ch!r} in {text!r}")
    return tokens


class _Parser:
    def __init__(self, tokens, source):
        self.tokens = tokens
        self.pos = 0
        self.source = source

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}, got {tok[1]!r} in {self.source!r}")
        return tok

    def parse_expr(self) -> Polynomial:
        out = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.parse_term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def parse_term(self) -> Polynomial:
        out = self.parse_factor()
        while True:
            kind = self.peek()[0]
            if kind in ("*", "/"):
                op = self.next()[0]
                rhs = self.parse_factor()
                if op == "*":
                    out = out * rhs
                else:
                    if not rhs.is_constant() or rhs.is_zero():
                        raise PolyParseError(
                            f"division only by nonzero constants in {self.source!r}")
                    out = out.scale(Fraction(1) / rhs.constant_value())
            elif kind in ("num", "var", "("):
                # implicit multiplication, e.g. "2a" or "a(b+g)"
                out = out * self.parse_factor()
            else:
                return out

    def parse_factor(self) -> Polynomial:
        kind, val = self.peek()
        if kind == "-":
            self.next()
            return -self.parse_factor()
        if kind == "+":
            self.next()
            return self.parse_factor()
        base = self.parse_atom()
        if self.peek()[0] == "^":
            self.next()
            sign = 1
            if self.peek()[0] == "-":
                raise PolyParseError(f"negative exponent in {self.source!r}")
            tok = self.expect("num")
            return base ** (sign * tok[1])
        return base

    def parse_atom(self) -> Polynomial:
        kind, val = self.next()
        if kind == "num":
            return Polynomial.const(val)
        if kind == "var":
            return Polynomial.var(val)
        if kind == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise PolyParseError(f"unexpected {val!r} in {self.source!r}")


def parse(text: str) -> Polynomial:
    """Parse the human text form (also accepts alpha/beta/gamma/delta and Greek)."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial text")
    parser = _Parser(tokens, text)
    out = parser.parse_expr()
    if parser.pos != len(tokens):
        raise PolyParseError(f"trailing input in {text!r}")
    return out


def from_json(data: Iterable[Mapping]) -> Polynomial:
    """Inverse of Polynomial.to_json."""
    terms: dict = {}
    for item in data:
        coeff = Fraction(item["coeff"])
        exps = [0, 0, 0, 0]
        for name, e in item.get("exps", {}).items():
            name = _VAR_ALIASES.get(name, name)
            if name not in _VAR_INDEX:
                raise PolyError(f"unknown variable {name!r} in JSON term")
            exps[_VAR_INDEX[name]] = int(e)
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Polynomial(terms)
