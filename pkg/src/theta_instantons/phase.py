"""Exact coefficients in Q[mu, mu^-1].

Every coefficient the engine manipulates is a Laurent polynomial in one
formal unit phase ``mu`` (so ``lambda = mu^2`` and ``mubar = mu^-1``) with
arbitrary-precision rational coefficients. Equality decisions are always
made on this exact form; :meth:`PhaseCoefficient.eval_numeric` exists only
for human-readable reports.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

Scalar = Union[int, Fraction, "PhaseCoefficient"]


class PhaseCoefficient:
    """Immutable element of Q[mu, mu^-1].

    Terms are stored as a tuple of ``(exponent, rational)`` pairs sorted by
    exponent, merged, with no zero rationals.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, Fraction], Iterable[tuple[int, Fraction]]] = ()):
        merged: dict[int, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, q in items:
            q = Fraction(q)
            if q:
                merged[exp] = merged.get(exp, Fraction(0)) + q
        self.terms: tuple[tuple[int, Fraction], ...] = tuple(
            sorted((e, q) for e, q in merged.items() if q)
        )
        self._hash: Optional[int] = None

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def monomial(cls, exponent: int, rational: Union[int, Fraction] = 1) -> PhaseCoefficient:
        return cls(((exponent, Fraction(rational)),))

    @classmethod
    def coerce(cls, value: Scalar) -> PhaseCoefficient:
        coerced = _coerce_or_none(value)
        if coerced is not None:
            return coerced
        raise TypeError(f"cannot use {type(value).__name__} as a phase coefficient")

    @classmethod
    def parse(cls, text: str) -> PhaseCoefficient:
        """Parse ``q``, ``q*mu^k``, ``mubar``, ``lambda`` and sums of those."""
        from .parser import parse_scalar

        return parse_scalar(text)

    # ------------------------------------------------------------------
    # Ring structure
    # ------------------------------------------------------------------

    def __add__(self, other: Scalar) -> PhaseCoefficient:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        return PhaseCoefficient(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> PhaseCoefficient:
        return PhaseCoefficient(tuple((e, -q) for e, q in self.terms))

    def __sub__(self, other: Scalar) -> PhaseCoefficient:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> PhaseCoefficient:
        return (-self) + other

    def __mul__(self, other: Scalar) -> PhaseCoefficient:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for e1, q1 in self.terms:
            for e2, q2 in other.terms:
                acc[e1 + e2] = acc.get(e1 + e2, Fraction(0)) + q1 * q2
        return PhaseCoefficient(acc)

    __rmul__ = __mul__

    def shift(self, exponent: int) -> PhaseCoefficient:
        """Multiply by ``mu^exponent``."""
        if exponent == 0:
            return self
        return PhaseCoefficient(tuple((e + exponent, q) for e, q in self.terms))

    def conj(self) -> PhaseCoefficient:
        """The involution ``mu -> mu^-1``; rationals are self-conjugate."""
        return PhaseCoefficient(tuple((-e, q) for e, q in self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_unit(self) -> bool:
        """Units of Q[mu, mu^-1] are exactly the single terms ``q*mu^k``."""
        return len(self.terms) == 1

    def inverse(self) -> PhaseCoefficient:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.to_text()} is not a unit in Q[mu, mu^-1]")
        (exp, q), = self.terms
        return PhaseCoefficient(((-exp, 1 / q),))

    def exact_quotient(self, other: PhaseCoefficient) -> Optional[PhaseCoefficient]:
        """Return ``self / other`` when ``other`` is a unit, else None."""
        if not other.is_unit():
            return None
        return self * other.inverse()

    def as_phase(self) -> Optional[tuple[int, Fraction]]:
        """``(k, q)`` when the coefficient is ``q*mu^k``."""
        if len(self.terms) == 1:
            return self.terms[0]
        return None

    def classical(self) -> Fraction:
        """Value at ``mu = 1``."""
        return sum((q for _, q in self.terms), Fraction(0))

    def eval_numeric(self, theta: float) -> complex:
        """Substitute ``mu = exp(i*pi*theta)``; for reports only."""
        mu = cmath.exp(1j * cmath.pi * theta)
        return sum((float(q) * mu**e for e, q in self.terms), 0j)

    # ------------------------------------------------------------------
    # Comparison and hashing
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __reduce__(self):
        return (PhaseCoefficient, (self.terms,))

    # ------------------------------------------------------------------
    # Sympy bridge
    # ------------------------------------------------------------------

    def to_sympy(self, mu):
        import sympy

        return sympy.Add(
            *[sympy.Rational(q.numerator, q.denominator) * mu**e for e, q in self.terms]
        )

    @classmethod
    def from_sympy(cls, expr, mu) -> PhaseCoefficient:
        """Convert a sympy expression that is a Laurent polynomial in ``mu``."""
        import sympy

        expr = sympy.expand(sympy.nsimplify(expr))
        if expr == 0:
            return cls()
        terms: dict[int, Fraction] = {}
        for term in sympy.Add.make_args(expr):
            coeff, rest = term.as_coeff_Mul()
            if rest == 1:
                exp = 0
            else:
                base, exp = rest.as_base_exp()
                if base != mu or not exp.is_integer:
                    raise ValueError(f"{expr} is not a Laurent polynomial in {mu}")
                exp = int(exp)
            if not coeff.is_Rational:
                raise ValueError(f"{expr} has a non-rational coefficient")
            terms[exp] = terms.get(exp, Fraction(0)) + Fraction(int(coeff.p), int(coeff.q))
        return cls(terms)

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exp, q in sorted(self.terms, key=lambda t: -t[0]):
            text = term_text(exp, abs(q))
            if not parts:
                parts.append(f"-{text}" if q < 0 else text)
            else:
                parts.append(f"- {text}" if q < 0 else f"+ {text}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"PhaseCoefficient({self.to_text()!r})"


def _coerce_or_none(value: object) -> Optional[PhaseCoefficient]:
    if isinstance(value, PhaseCoefficient):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return PhaseCoefficient(((0, Fraction(value)),))
    return None


def phase_power_text(exp: int) -> str:
    if exp == 0:
        return ""
    if exp == 1:
        return "mu"
    if exp == -1:
        return "mubar"
    if exp > 0:
        return f"mu^{exp}"
    return f"mubar^{-exp}"


def term_text(exp: int, q: Fraction) -> str:
    """Canonical text of ``q*mu^exp`` for a positive rational ``q``."""
    power = phase_power_text(exp)
    if not power:
        return str(q)
    if q == 1:
        return power
    return f"{q}*{power}"


ZERO = PhaseCoefficient()
ONE = PhaseCoefficient.monomial(0)
MU = PhaseCoefficient.monomial(1)
MUBAR = PhaseCoefficient.monomial(-1)
LAMBDA = PhaseCoefficient.monomial(2)
HALF = PhaseCoefficient.monomial(0, Fraction(1, 2))


def mu_power(exponent: int, rational: Union[int, Fraction] = 1) -> PhaseCoefficient:
    return PhaseCoefficient.monomial(exponent, rational)
