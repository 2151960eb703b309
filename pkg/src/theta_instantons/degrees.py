"""Torus multidegrees and the phases they induce.

Degrees are stored doubled so the half-integer degrees of the sphere
coordinates stay exact integers. For degrees ``r, s`` made of 2-blocks the
pairing is ``<r, s> = sum over blocks (r_1 s_2 - r_2 s_1)``; the deformed
product of homogeneous elements picks up ``mu^<r, s>`` and their
commutation phase is ``mu^(2 <r, s>)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

import sympy

from .algebra import NCPolynomial, Presentation
from .errors import DegreeError
from .phase import PhaseCoefficient

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


@dataclass(frozen=True)
class DegreeVector:
    """A torus degree; ``doubled`` holds twice each component."""

    doubled: tuple[int, ...]

    @classmethod
    def of(cls, *values: Number) -> DegreeVector:
        doubled = []
        for v in values:
            twice = Fraction(v) * 2
            if twice.denominator != 1:
                raise DegreeError(f"degree component {v} is not a half-integer")
            doubled.append(int(twice))
        return cls(tuple(doubled))

    @property
    def arity(self) -> int:
        return len(self.doubled)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, 2) for v in self.doubled)

    def __add__(self, other: DegreeVector) -> DegreeVector:
        _same_arity(self, other)
        return DegreeVector(tuple(a + b for a, b in zip(self.doubled, other.doubled)))

    def __neg__(self) -> DegreeVector:
        return DegreeVector(tuple(-a for a in self.doubled))

    def __sub__(self, other: DegreeVector) -> DegreeVector:
        return self + (-other)

    def direct_sum(self, other: DegreeVector) -> DegreeVector:
        return DegreeVector(self.doubled + other.doubled)

    def swapped(self) -> DegreeVector:
        """Exchange the two components of every 2-block."""
        out = []
        for k in range(0, self.arity, 2):
            out.extend((self.doubled[k + 1], self.doubled[k]))
        return DegreeVector(tuple(out))

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


def _same_arity(r: DegreeVector, s: DegreeVector) -> None:
    if r.arity != s.arity:
        raise DegreeError(f"degree arity mismatch: {r.arity} vs {s.arity}")
    if r.arity % 2:
        raise DegreeError(f"degree arity {r.arity} is not a sum of 2-blocks")


def pairing_quadrupled(r: DegreeVector, s: DegreeVector) -> int:
    """``4 <r, s>`` computed on the doubled components."""
    _same_arity(r, s)
    total = 0
    for k in range(0, r.arity, 2):
        total += r.doubled[k] * s.doubled[k + 1] - r.doubled[k + 1] * s.doubled[k]
    return total


def star_product_phase(r: DegreeVector, s: DegreeVector) -> PhaseCoefficient:
    """``mu^<r, s>``; fails when the pairing is not an integer."""
    quad = pairing_quadrupled(r, s)
    if quad % 4:
        raise DegreeError(f"pairing of {r} and {s} is {Fraction(quad, 4)}, not an integer")
    return PhaseCoefficient.monomial(quad // 4)


def commutation_phase(r: DegreeVector, s: DegreeVector) -> PhaseCoefficient:
    """The unit ``c`` with ``f g = c g f`` for homogeneous ``f, g`` of degrees ``r, s``."""
    quad = pairing_quadrupled(r, s)
    if quad % 2:
        raise DegreeError(f"commutation phase of {r} and {s} is not an integral power of mu")
    return PhaseCoefficient.monomial(quad // 2)


def letter_degree(p: Presentation, name: str) -> DegreeVector:
    degree = p.letters[p.index(name)].degree
    if degree is None:
        raise DegreeError(f"letter {name} of {p.name} has no degree")
    return DegreeVector(degree)


def polynomial_degree(f: NCPolynomial) -> DegreeVector:
    """Degree of a homogeneous polynomial; mixed degrees are an error."""
    p = f.presentation
    found = {p.monomial_degree(m) for m, _ in f.monomials()}
    if len(found) != 1 or None in found:
        raise DegreeError(f"{f.to_text()} is not homogeneous")
    return DegreeVector(found.pop())


# ============================================================================
# Solving for letter degrees
# ============================================================================


def _rational(value: Number) -> sympy.Rational:
    q = Fraction(value)
    return sympy.Rational(q.numerator, q.denominator)


def _representatives(p: Presentation) -> list[int]:
    reps: list[int] = []
    for i in range(p.size):
        s = p.star_index(i)
        if s >= i:
            reps.append(i)
    return reps


def solve_letter_degrees(
    p: Presentation,
    anchors: Mapping[str, Sequence[Number]],
    generators: Mapping[str, NCPolynomial],
) -> dict[str, DegreeVector]:
    """Solve for 2-component letter degrees.

    Every monomial of each anchored generator must carry the anchored
    degree, star letters carry the negated degree, and every letter pair
    must commute with the phase its degrees predict. The solution must be
    unique.
    """
    reps = _representatives(p)
    unknowns: dict[int, tuple[sympy.Symbol, sympy.Symbol]] = {
        i: (sympy.Symbol(f"x_{i}"), sympy.Symbol(f"y_{i}")) for i in reps
    }
    flat = [s for pair in unknowns.values() for s in pair]

    def degree_expr(i: int) -> tuple[sympy.Expr, sympy.Expr]:
        if i in unknowns:
            return unknowns[i]
        x, y = unknowns[p.star_index(i)]
        return -x, -y

    linear: list[sympy.Expr] = []
    for name, target in anchors.items():
        f = generators[name]
        for m, _ in f.monomials():
            dx = sum((e * degree_expr(i)[0] for i, e in enumerate(m) if e), sympy.Integer(0))
            dy = sum((e * degree_expr(i)[1] for i, e in enumerate(m) if e), sympy.Integer(0))
            linear.append(dx - _rational(target[0]))
            linear.append(dy - _rational(target[1]))

    solutions = sympy.linsolve(linear, flat)
    if solutions == sympy.S.EmptySet:
        raise DegreeError(f"anchor degrees for {p.name} are inconsistent")
    (general,) = list(solutions)
    substitution = dict(zip(flat, general))

    constraints: list[sympy.Expr] = []
    for i in range(p.size):
        for j in range(i + 1, p.size):
            xi, yi = degree_expr(i)
            xj, yj = degree_expr(j)
            omega2 = 2 * (xi * yj - yi * xj)
            constraints.append(sympy.expand((omega2 - p.phase_exponent(i, j)).subs(substitution)))

    free = sorted(set().union(*(sympy.sympify(e).free_symbols for e in general)), key=str)
    if free:
        solved = sympy.solve([c for c in constraints if c != 0], free, dict=True)
        if len(solved) != 1 or set(solved[0]) != set(free):
            raise DegreeError(f"letter degrees of {p.name} are not uniquely determined")
        general = tuple(sympy.nsimplify(sympy.sympify(e).subs(solved[0])) for e in general)
        substitution = dict(zip(flat, general))

    for i in range(p.size):
        for j in range(i + 1, p.size):
            xi, yi = degree_expr(i)
            xj, yj = degree_expr(j)
            pairing = (2 * (xi * yj - yi * xj)).subs(substitution)
            residual = sympy.simplify(pairing - p.phase_exponent(i, j))
            if residual != 0:
                raise DegreeError(
                    f"no degrees reproduce the phase of ({p.letters[i].name}, {p.letters[j].name})"
                )

    out: dict[str, DegreeVector] = {}
    for i in range(p.size):
        x, y = (sympy.Rational(sympy.sympify(e).subs(substitution)) for e in degree_expr(i))
        out[p.letters[i].name] = DegreeVector.of(
            Fraction(int(x.p), int(x.q)), Fraction(int(y.p), int(y.q))
        )
    logger.debug("solved degrees for %s: %s", p.name, {k: str(v) for k, v in out.items()})
    return out
