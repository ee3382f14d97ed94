"""The seven 3-dimensional Lorentzian Lie algebra families.

Each family g_1..g_7 is given by structure constants on a fixed
pseudo-orthonormal frame e1, e2, e3 (e3 timelike, metric diag(1,1,-1))
with parameters alpha, beta, gamma, delta subject to the family's
printed side conditions.  Brackets are stored for i<j and extended by
antisymmetry; eta (only g_4 has one) is resolved to +1 or -1 at
construction time and never appears as a ring symbol.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .poly import Polynomial, Rational, parse

FAMILIES = ("G1", "G2", "G3", "G4", "G5", "G6", "G7")
METRIC_SIGNATURE = (1, 1, -1)


class ConstraintViolation(ValueError):
    """A numeric instance breaks one of the family's side conditions."""

    def __init__(self, polynomial: Polynomial, kind: str):
        self.polynomial = polynomial
        self.kind = kind  # "equality" or "inequation"
        want = "= 0" if kind == "equality" else "!= 0"
        super().__init__(f"constraint violated: {polynomial} {want}")


class SamplerStarvation(RuntimeError):
    """No admissible parameter point found within the attempt budget."""


class FrameVector:
    """Vector with three polynomial components in the fixed frame."""

    __slots__ = ("c",)

    def __init__(self, c1, c2, c3):
        comps = []
        for x in (c1, c2, c3):
            if isinstance(x, Polynomial):
                comps.append(x)
            else:
                comps.append(Polynomial.const(x))
        object.__setattr__(self, "c", tuple(comps))

    def __setattr__(self, *_):
        raise AttributeError("FrameVector is immutable")

    @staticmethod
    def zero() -> "FrameVector":
        return FrameVector(0, 0, 0)

    def __add__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(*(x + y for x, y in zip(self.c, other.c)))

    def __sub__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(*(x - y for x, y in zip(self.c, other.c)))

    def __neg__(self) -> "FrameVector":
        return FrameVector(*(-x for x in self.c))

    def scale(self, s) -> "FrameVector":
        if isinstance(s, Polynomial):
            return FrameVector(*(x * s for x in self.c))
        return FrameVector(*(x.scale(s) for x in self.c))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.c)

    def substitute(self, assignment) -> "FrameVector":
        return FrameVector(*(x.substitute(assignment) for x in self.c))

    def __eq__(self, other):
        return isinstance(other, FrameVector) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def text(self, greek: bool = False) -> str:
        if self.is_zero():
            return "0"
        frame = "ẽ" if greek else "e"
        parts = []
        for i, comp in enumerate(self.c, start=1):
            if comp.is_zero():
                continue
            body = comp.text(greek=greek)
            if body == "1":
                s = f"{frame}{i}"
            elif body == "-1":
                s = f"-{frame}{i}"
            elif "+" in body.lstrip("-") or (body.count("-") - body.startswith("-")) > 0:
                s = f"({body})*{frame}{i}"
            else:
                s = f"{body}*{frame}{i}"
            if parts and not s.startswith("-"):
                parts.append("+")
            parts.append(s)
        return "".join(parts)

    def __repr__(self):
        return f"FrameVector({self.text()})"

    def to_json(self) -> list:
        return [comp.to_json() for comp in self.c]


E1 = FrameVector(1, 0, 0)
E2 = FrameVector(0, 1, 0)
E3 = FrameVector(0, 0, 1)
BASIS = (E1, E2, E3)


@dataclass(frozen=True)
class ConstraintSet:
    equalities: tuple = ()
    inequations: tuple = ()


@dataclass(frozen=True)
class LieAlgebra:
    family: str
    eta: Optional[int]
    # brackets[(i, j)] = [e_i, e_j] for 1 <= i < j <= 3
    brackets: Mapping[tuple, FrameVector]
    constraints: ConstraintSet
    params: Optional[Mapping[str, Fraction]] = None
    metric_signature: tuple = METRIC_SIGNATURE

    def bracket_basis(self, i: int, j: int) -> FrameVector:
        if i == j:
            return FrameVector.zero()
        if i < j:
            return self.brackets[(i, j)]
        return -self.brackets[(j, i)]

    def label(self) -> str:
        if self.eta is None:
            return self.family
        return f"{self.family}(eta={'+1' if self.eta > 0 else '-1'})"

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "brackets": {
                f"e{i}e{j}": self.brackets[(i, j)].to_json() for i, j in ((1, 2), (1, 3), (2, 3))
            },
            "equalities": [p.text() for p in self.constraints.equalities],
            "inequations": [p.text() for p in self.constraints.inequations],
        }
        if self.eta is not None:
            out["eta"] = self.eta
        if self.params is not None:
            out["params"] = {k: str(v) for k, v in sorted(self.params.items())}
        return out


def bracket(L: LieAlgebra, X: FrameVector, Y: FrameVector) -> FrameVector:
    """Bilinear antisymmetric extension of the structure constants."""
    out = FrameVector.zero()
    for i in range(1, 4):
        xi = X.c[i - 1]
        if xi.is_zero():
            continue
        for j in range(1, 4):
            yj = Y.c[j - 1]
            if yj.is_zero() or i == j:
                continue
            out = out + L.bracket_basis(i, j).scale(xi * yj)
    return out


def metric(X: FrameVector, Y: FrameVector) -> Polynomial:
    """g(X,Y) with the fixed signature (+,+,-); e3 is timelike."""
    out = Polynomial.zero()
    for eps, x, y in zip(METRIC_SIGNATURE, X.c, Y.c):
        out = out + (x * y).scale(eps)
    return out


# -- family tables -----------------------------------------------------

def _family_structure(family: str, eta: Optional[int]):
    e = {}  # texts for [e1,e2], [e1,e3], [e2,e3] and the constraints
    if family == "G1":
        b12, b13, b23 = ("a", "0", "-b"), ("-a", "-b", "0"), ("b", "a", "a")
        eqs, ineqs = (), ("a",)
    elif family == "G2":
        b12, b13, b23 = ("0", "g", "-b"), ("0", "-b", "-g"), ("a", "0", "0")
        eqs, ineqs = (), ("g",)
    elif family == "G3":
        b12, b13, b23 = ("0", "0", "-g"), ("0", "-b", "0"), ("a", "0", "0")
        eqs, ineqs = (), ()
    elif family == "G4":
        h = eta
        b12, b13, b23 = ("0", "-1", f"{2 * h}-b"), ("0", "-b", "1"), ("a", "0", "0")
        eqs, ineqs = (), ()
    elif family == "G5":
        b12, b13, b23 = ("0", "0", "0"), ("a", "b", "0"), ("g", "d", "0")
        eqs, ineqs = ("a*g+b*d",), ("a+d",)
    elif family == "G6":
        b12, b13, b23 = ("0", "a", "b"), ("0", "g", "d"), ("0", "0", "0")
        eqs, ineqs = ("a*g-b*d",), ("a+d",)
    elif family == "G7":
        b12, b13, b23 = ("-a", "-b", "-b"), ("a", "b", "b"), ("g", "d", "d")
        eqs, ineqs = ("a*g",), ("a+d",)
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    brackets = {
        (1, 2): FrameVector(*(parse(t) for t in b12)),
        (1, 3): FrameVector(*(parse(t) for t in b13)),
        (2, 3): FrameVector(*(parse(t) for t in b23)),
    }
    constraints = ConstraintSet(
        equalities=tuple(parse(t) for t in eqs),
        inequations=tuple(parse(t) for t in ineqs),
    )
    return brackets, constraints


def make_group(family: str, eta: Optional[int] = None,
               numeric_params: Optional[Mapping[str, Rational]] = None) -> LieAlgebra:
    """Build one of G1..G7, symbolic or at a numeric parameter point.

    eta (+1 or -1) must be supplied exactly for G4.  With numeric_params
    all four parameters must be given as exact rationals; the instance
    is checked against the family's equalities and inequations.
    """
    family = family.upper()
    if family == "G4":
        if eta not in (1, -1):
            raise ValueError("G4 requires eta=+1 or eta=-1")
    elif eta is not None:
        raise ValueError(f"{family} takes no eta")
    brackets, constraints = _family_structure(family, eta)
    params = None
    if numeric_params is not None:
        params = {}
        for name in ("a", "b", "g", "d"):
            aliases = {"a": ("a", "alpha"), "b": ("b", "beta"),
                       "g": ("g", "gamma"), "d": ("d", "delta")}[name]
            val = None
            for k in aliases:
                if k in numeric_params:
                    val = numeric_params[k]
            if val is None:
                raise ValueError(f"numeric instance misses parameter {name!r}")
            params[name] = Fraction(val)
        extra = set(numeric_params) - {"a", "b", "g", "d", "alpha", "beta", "gamma", "delta"}
        if extra:
            raise ValueError(f"unknown parameters {sorted(extra)}")
        for p in constraints.equalities:
            if p.eval_at(params) != 0:
                raise ConstraintViolation(p, "equality")
        for p in constraints.inequations:
            if p.eval_at(params) == 0:
                raise ConstraintViolation(p, "inequation")
        subs = {k: Polynomial.const(v) for k, v in params.items()}
        brackets = {k: v.substitute(subs) for k, v in brackets.items()}
    return LieAlgebra(family=family, eta=eta, brackets=brackets,
                      constraints=constraints, params=params)


def _raw_algebra(b12: FrameVector, b13: FrameVector, b23: FrameVector,
                 constraints: ConstraintSet = ConstraintSet(),
                 family: str = "raw") -> LieAlgebra:
    # test-only entry point: arbitrary structure constants, no validation
    return LieAlgebra(family=family, eta=None,
                      brackets={(1, 2): b12, (1, 3): b13, (2, 3): b23},
                      constraints=constraints)


def abelian() -> LieAlgebra:
    """All brackets zero; handy flat test case."""
    z = FrameVector.zero()
    return _raw_algebra(z, z, z, family="abelian")


# -- constraint-variety sampling ----------------------------------------

def _rand_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    num = rng.randint(-10, 10)
    while nonzero and num == 0:
        num = rng.randint(-10, 10)
    return Fraction(num, rng.randint(1, 10))


def sample_constraint_point(L: LieAlgebra, rng: random.Random,
                            max_attempts: int = 1000) -> dict:
    """One random rational point satisfying the family's equalities and
    inequations.  Equalities are met by explicit parameterization: G5/G6
    solve for delta when the beta coefficient is nonzero, G7 samples the
    alpha=0 and gamma=0 branches.
    """
    for _ in range(max_attempts):
        pt = {v: _rand_rational(rng) for v in ("a", "b", "g", "d")}
        if L.family == "G5":
            if pt["b"] == 0:
                continue
            pt["d"] = -pt["a"] * pt["g"] / pt["b"]
        elif L.family == "G6":
            if pt["b"] == 0:
                continue
            pt["d"] = pt["a"] * pt["g"] / pt["b"]
        elif L.family == "G7":
            pt["a" if rng.random() < 0.5 else "g"] = Fraction(0)
        if any(p.eval_at(pt) != 0 for p in L.constraints.equalities):
            continue
        if any(p.eval_at(pt) == 0 for p in L.constraints.inequations):
            continue
        return pt
    raise SamplerStarvation(
        f"no admissible point for {L.label()} in {max_attempts} attempts")


# -- well-formedness ------------------------------------------------------

@dataclass
class JacobiReport:
    passed: bool
    points_checked: int
    # symbolic residuals that are not identically zero, keyed by basis triple
    symbolic_residuals: dict = field(default_factory=dict)
    # triple -> point at which a residual failed to vanish (never for G1..G7)
    failures: dict = field(default_factory=dict)


def jacobi_check(L: LieAlgebra, points: int = 25, seed: int = 0) -> JacobiReport:
    """Check [X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0 on all basis triples.

    Residuals that are not identically zero (possible only with equality
    constraints) must vanish exactly at `points` random points on the
    constraint variety.
    """
    residuals = {}
    for i in range(1, 4):
        for j in range(1, 4):
            for k in range(1, 4):
                X, Y, Z = BASIS[i - 1], BASIS[j - 1], BASIS[k - 1]
                r = (bracket(L, X, bracket(L, Y, Z))
                     + bracket(L, Y, bracket(L, Z, X))
                     + bracket(L, Z, bracket(L, X, Y)))
                if not r.is_zero():
                    residuals[(i, j, k)] = r
    if not residuals:
        return JacobiReport(passed=True, points_checked=0)
    rng = random.Random(seed)
    failures = {}
    for n in range(points):
        pt = sample_constraint_point(L, rng)
        for triple, r in residuals.items():
            if any(comp.eval_at(pt) != 0 for comp in r.c):
                failures[triple] = pt
    return JacobiReport(passed=not failures, points_checked=points,
                        symbolic_residuals=residuals, failures=failures)
