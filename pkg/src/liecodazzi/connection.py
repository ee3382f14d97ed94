"""The four affine connections as frame coefficient tables.

Levi-Civita comes from the Koszul formula, which collapses to a purely
algebraic expression on a left-invariant frame (all metric entries are
constant, so the three derivative terms drop).  The Bott connection
splits the tangent space as D = span{e1,e2}, D_perp = span{e3} and mixes
projected Levi-Civita derivatives with projected brackets.  The
canonical and Kobayashi-Nomizu connections correct Levi-Civita by the
covariant derivative of the product structure J = diag(1,1,-1).

Everything here treats frame vectors as constant-coefficient
combinations of the left-invariant frame, so connections are bilinear
over ring scalars in both slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .liealg import BASIS, FrameVector, LieAlgebra, bracket, metric
from .poly import Polynomial

KINDS = ("levi_civita", "bott", "canonical", "kobayashi_nomizu")
# CLI-facing aliases
KIND_ALIASES = {
    "lc": "levi_civita", "levi-civita": "levi_civita", "levi_civita": "levi_civita",
    "bott": "bott", "b": "bott",
    "canonical": "canonical", "c": "canonical",
    "kn": "kobayashi_nomizu", "k": "kobayashi_nomizu",
    "kobayashi-nomizu": "kobayashi_nomizu", "kobayashi_nomizu": "kobayashi_nomizu",
}


@dataclass(frozen=True)
class Connection:
    kind: str
    # gamma[(i, j)] = nabla_{e_i} e_j as a FrameVector, i, j in 1..3
    gamma: Mapping[tuple, FrameVector]
    algebra: LieAlgebra

    def entry(self, i: int, j: int) -> FrameVector:
        return self.gamma[(i, j)]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "algebra": self.algebra.label(),
            "entries": {f"{i},{j}": self.gamma[(i, j)].to_json()
                        for i in (1, 2, 3) for j in (1, 2, 3)},
        }


def apply(C: Connection, X: FrameVector, Y: FrameVector) -> FrameVector:
    """nabla_X Y by bilinear extension of the coefficient table."""
    out = FrameVector.zero()
    for i in (1, 2, 3):
        xi = X.c[i - 1]
        if xi.is_zero():
            continue
        for j in (1, 2, 3):
            yj = Y.c[j - 1]
            if yj.is_zero():
                continue
            out = out + C.gamma[(i, j)].scale(xi * yj)
    return out


def levi_civita(L: LieAlgebra) -> Connection:
    """Koszul formula against the constant Gram matrix diag(1,1,-1):

    2 g(nabla_{e_i} e_j, e_k)
        = g([e_i,e_j], e_k) - g([e_j,e_k], e_i) + g([e_k,e_i], e_j)
    """
    eps = L.metric_signature
    gamma = {}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            comps = []
            for k in (1, 2, 3):
                rhs = (metric(L.bracket_basis(i, j), BASIS[k - 1])
                       - metric(L.bracket_basis(j, k), BASIS[i - 1])
                       + metric(L.bracket_basis(k, i), BASIS[j - 1]))
                comps.append(rhs.scale(Fraction(1, 2 * eps[k - 1])))
            gamma[(i, j)] = FrameVector(*comps)
    return Connection(kind="levi_civita", gamma=gamma, algebra=L)


def _proj_d(v: FrameVector) -> FrameVector:
    return FrameVector(v.c[0], v.c[1], 0)


def _proj_d_perp(v: FrameVector) -> FrameVector:
    return FrameVector(0, 0, v.c[2])


def bott(L: LieAlgebra) -> Connection:
    """Distribution split D = span{e1,e2}, D_perp = span{e3}."""
    lc = levi_civita(L)
    gamma = {}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i <= 2 and j <= 2:
                gamma[(i, j)] = _proj_d(lc.gamma[(i, j)])
            elif i == 3 and j <= 2:
                gamma[(i, j)] = _proj_d(L.bracket_basis(i, j))
            elif i <= 2 and j == 3:
                gamma[(i, j)] = _proj_d_perp(L.bracket_basis(i, j))
            else:
                gamma[(i, j)] = _proj_d_perp(lc.gamma[(i, j)])
    return Connection(kind="bott", gamma=gamma, algebra=L)


def J(v: FrameVector) -> FrameVector:
    """Product structure: J e1 = e1, J e2 = e2, J e3 = -e3."""
    return FrameVector(v.c[0], v.c[1], -v.c[2])


def nabla_J(L: LieAlgebra, X: FrameVector, Y: FrameVector,
            lc: Optional[Connection] = None) -> FrameVector:
    """(nabla^L_X J) Y = nabla^L_X (J Y) - J(nabla^L_X Y)."""
    if lc is None:
        lc = levi_civita(L)
    return apply(lc, X, J(Y)) - J(apply(lc, X, Y))


def canonical(L: LieAlgebra) -> Connection:
    """nabla^c_X Y = nabla^L_X Y - (1/2) (nabla_X J) J Y."""
    lc = levi_civita(L)
    gamma = {}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            ei, ej = BASIS[i - 1], BASIS[j - 1]
            corr = nabla_J(L, ei, J(ej), lc=lc)
            gamma[(i, j)] = lc.gamma[(i, j)] - corr.scale(Fraction(1, 2))
    return Connection(kind="canonical", gamma=gamma, algebra=L)


def kobayashi_nomizu(L: LieAlgebra) -> Connection:
    """nabla^k_X Y = nabla^c_X Y - (1/4)[(nabla_Y J) J X - (nabla_{JY} J) X]."""
    can = canonical(L)
    lc = levi_civita(L)
    gamma = {}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            ei, ej = BASIS[i - 1], BASIS[j - 1]
            corr = nabla_J(L, ej, J(ei), lc=lc) - nabla_J(L, J(ej), ei, lc=lc)
            gamma[(i, j)] = can.gamma[(i, j)] - corr.scale(Fraction(1, 4))
    return Connection(kind="kobayashi_nomizu", gamma=gamma, algebra=L)


def make_connection(L: LieAlgebra, kind: str) -> Connection:
    kind = KIND_ALIASES.get(kind.lower())
    if kind is None:
        raise ValueError(f"unknown connection kind; expected one of {sorted(set(KIND_ALIASES))}")
    builder = {
        "levi_civita": levi_civita,
        "bott": bott,
        "canonical": canonical,
        "kobayashi_nomizu": kobayashi_nomizu,
    }[kind]
    return builder(L)


@dataclass(frozen=True)
class DerivedConstants:
    """Shorthand constants used by the printed G3/G4 tables."""
    m1: Optional[Polynomial] = None
    m2: Optional[Polynomial] = None
    m3: Optional[Polynomial] = None
    n1: Optional[Polynomial] = None
    n2: Optional[Polynomial] = None
    n3: Optional[Polynomial] = None

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def derived_constants(L: LieAlgebra) -> DerivedConstants:
    from .poly import parse

    if L.family == "G3":
        return DerivedConstants(
            m1=parse("(a-b-g)/2"), m2=parse("(a-b+g)/2"), m3=parse("(a+b-g)/2"))
    if L.family == "G4":
        h = L.eta
        return DerivedConstants(
            n1=parse(f"a/2+({h})-b"), n2=parse(f"a/2-({h})"), n3=parse(f"a/2+({h})"))
    return DerivedConstants()
