"""Twisted-commutative presentations and exact polynomial arithmetic.

A :class:`Presentation` is a finite alphabet of generators ("letters") where
every pair of letters q-commutes::

    x_i x_j = mu^Lambda(i, j) * (-1)^(p_i p_j) * x_j x_i

Because of that, every product of letters rewrites uniquely to a normal
ordered monomial (letters in alphabet order) times a unit phase, so
monomials are stored as exponent vectors and multiplication is a pure
function of two exponent vectors. :class:`FreePresentation` keeps words
instead and performs no reduction at all.

Polynomials over one or more presentations (tensor "legs") are
:class:`TensorPolynomial` instances; the single-leg case is
:class:`NCPolynomial`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .errors import HomomorphismError, PresentationError
from .phase import ONE, PhaseCoefficient, Scalar, term_text

Monomial = tuple[int, ...]
TermKey = tuple[Monomial, ...]
Product = Optional[tuple[int, int, Monomial]]


@dataclass(frozen=True)
class Letter:
    """A generator: its name, parity, *-partner and doubled-integer degree."""

    name: str
    parity: int = 0
    star: Optional[str] = None
    degree: Optional[tuple[int, ...]] = None

    @property
    def symbol(self) -> str:
        """Expression spelling; ``z1*`` is written ``z1'``."""
        if self.name.endswith("*"):
            return self.name[:-1] + "'"
        return self.name


# ============================================================================
# Presentations
# ============================================================================


class Presentation:
    """Letters, their commutation exponents, parities and involution."""

    free = False

    def __init__(
        self,
        name: str,
        letters: Sequence[Letter],
        phases: Optional[Mapping[tuple[str, str], int]] = None,
        d_map: Optional[Mapping[str, str]] = None,
    ):
        self.name = name
        self.letters: tuple[Letter, ...] = tuple(letters)
        self._index: dict[str, int] = {}
        for i, letter in enumerate(self.letters):
            if letter.name in self._index:
                raise PresentationError(f"{name}: duplicate letter {letter.name}")
            self._index[letter.name] = i

        n = len(self.letters)
        self._lambda = [[0] * n for _ in range(n)]
        given: dict[tuple[int, int], int] = {}
        for (a, b), k in (phases or {}).items():
            i, j = self.index(a), self.index(b)
            if i == j:
                if k:
                    raise PresentationError(f"{name}: letter {a} cannot twist against itself")
                continue
            for key, value in (((i, j), k), ((j, i), -k)):
                if given.get(key, value) != value:
                    raise PresentationError(
                        f"{name}: conflicting commutation exponents for {a}, {b}",
                        ["Lambda must be antisymmetric"],
                    )
                given[key] = value
                self._lambda[key[0]][key[1]] = value

        self.parities: tuple[int, ...] = tuple(letter.parity % 2 for letter in self.letters)
        self._star: tuple[int, ...] = tuple(
            self.index(letter.star) if letter.star else i for i, letter in enumerate(self.letters)
        )
        self.d_map: dict[int, int] = {
            self.index(a): self.index(b) for a, b in (d_map or {}).items()
        }
        self._validate()
        self._mult_cache: dict[tuple[Monomial, Monomial], Product] = {}
        self._star_cache: dict[Monomial, Product] = {}
        self._d_cache: dict[Monomial, tuple[tuple[Monomial, PhaseCoefficient], ...]] = {}

    def _validate(self) -> None:
        n = len(self.letters)
        for i in range(n):
            s = self._star[i]
            if self._star[s] != i:
                raise PresentationError(
                    f"{self.name}: star is not an involution at {self.letters[i].name}"
                )
            if self.parities[s] != self.parities[i]:
                raise PresentationError(
                    f"{self.name}: star changes the parity of {self.letters[i].name}"
                )
        for i in range(n):
            for j in range(n):
                if self._lambda[self._star[i]][self._star[j]] != self._lambda[i][j]:
                    raise PresentationError(
                        f"{self.name}: commutation exponents are not star-compatible at "
                        f"({self.letters[i].name}, {self.letters[j].name})",
                        ["Lambda(a*, b*) must equal Lambda(a, b)"],
                    )
        for a, b in self.d_map.items():
            if self.parities[b] != (self.parities[a] + 1) % 2:
                raise PresentationError(f"{self.name}: d must flip parity ({self.letters[a].name})")

    # ------------------------------------------------------------------
    # Letters
    # ------------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.letters)

    def index(self, name: Union[str, int]) -> int:
        if isinstance(name, int):
            if not 0 <= name < len(self.letters):
                raise PresentationError(f"{self.name}: letter index {name} out of range")
            return name
        key = name[:-1] + "*" if name.endswith("'") else name
        try:
            return self._index[key]
        except KeyError:
            raise PresentationError(
                f"unknown letter {name!r} in presentation {self.name}",
                [f"known letters: {', '.join(self.letter_names())}"],
            ) from None

    def has_letter(self, name: str) -> bool:
        key = name[:-1] + "*" if name.endswith("'") else name
        return key in self._index

    def letter_names(self) -> list[str]:
        return [letter.name for letter in self.letters]

    def star_index(self, i: int) -> int:
        return self._star[i]

    def phase_exponent(self, i: int, j: int) -> int:
        return self._lambda[i][j]

    def relation(self, i: Union[int, str], j: Union[int, str]) -> PhaseCoefficient:
        """The unit ``c`` with ``x_i x_j = c * x_j x_i``."""
        i, j = self.index(i), self.index(j)
        sign = -1 if self.parities[i] and self.parities[j] else 1
        return PhaseCoefficient.monomial(self._lambda[i][j], sign)

    def odd_letters(self) -> list[int]:
        return [i for i, p in enumerate(self.parities) if p]

    # ------------------------------------------------------------------
    # Monomials
    # ------------------------------------------------------------------

    def one(self) -> Monomial:
        return (0,) * len(self.letters)

    def letter_monomial(self, i: int) -> Monomial:
        m = [0] * len(self.letters)
        m[i] = 1
        return tuple(m)

    def is_valid(self, m: Monomial) -> bool:
        return all(e <= 1 for e, p in zip(m, self.parities) if p)

    def multiply(self, m1: Monomial, m2: Monomial) -> Product:
        """Normal-order ``m1 * m2``: ``(exponent, sign, monomial)`` or None when zero."""
        key = (m1, m2)
        cached = self._mult_cache.get(key, False)
        if cached is not False:
            return cached
        n = len(m1)
        exp = 0
        odd_swaps = 0
        lam = self._lambda
        par = self.parities
        result: Product
        for j in range(n):
            e2 = m2[j]
            if not e2:
                continue
            for i in range(j + 1, n):
                e1 = m1[i]
                if e1:
                    exp += e1 * e2 * lam[i][j]
                    if par[i] and par[j]:
                        odd_swaps += e1 * e2
        product = tuple(a + b for a, b in zip(m1, m2))
        if any(e > 1 for e, p in zip(product, par) if p):
            result = None
        else:
            result = (exp, -1 if odd_swaps % 2 else 1, product)
        self._mult_cache[key] = result
        return result

    def word(self, m: Monomial) -> tuple[int, ...]:
        out: list[int] = []
        for i, e in enumerate(m):
            out.extend([i] * e)
        return tuple(out)

    def from_word(self, word: Sequence[int]) -> Product:
        """Normal-order a word by counting inversions pairwise."""
        exp = 0
        odd_swaps = 0
        counts = [0] * len(self.letters)
        lam = self._lambda
        par = self.parities
        for q, y in enumerate(word):
            for p in range(q):
                x = word[p]
                if x > y:
                    exp += lam[x][y]
                    if par[x] and par[y]:
                        odd_swaps += 1
            counts[y] += 1
        if any(e > 1 for e, p in zip(counts, par) if p):
            return None
        return exp, -1 if odd_swaps % 2 else 1, tuple(counts)

    def star_monomial(self, m: Monomial) -> Product:
        """``(x_1 ... x_k)* = x_k* ... x_1*`` normal-ordered."""
        cached = self._star_cache.get(m, False)
        if cached is not False:
            return cached
        word = tuple(self._star[i] for i in reversed(self.word(m)))
        result = self.from_word(word)
        self._star_cache[m] = result
        return result

    def d_monomial(self, m: Monomial) -> tuple[tuple[Monomial, PhaseCoefficient], ...]:
        """Graded Leibniz rule on a monomial; ``d`` kills letters outside its domain."""
        cached = self._d_cache.get(m)
        if cached is not None:
            return cached
        word = self.word(m)
        acc: dict[Monomial, dict[int, Fraction]] = {}
        for k, x in enumerate(word):
            dx = self.d_map.get(x)
            if dx is None:
                continue
            before = sum(self.parities[y] for y in word[:k]) % 2
            product = self.from_word(word[:k] + (dx,) + word[k + 1 :])
            if product is None:
                continue
            exp, sign, m2 = product
            bucket = acc.setdefault(m2, {})
            bucket[exp] = bucket.get(exp, Fraction(0)) + (-sign if before else sign)
        result = tuple(
            (m2, PhaseCoefficient(bucket)) for m2, bucket in acc.items() if PhaseCoefficient(bucket)
        )
        self._d_cache[m] = result
        return result

    def order_key(self, m: Monomial) -> tuple:
        """Graded reverse-lexicographic key: later letters dominate within a degree."""
        return (sum(m), tuple(reversed(m)))

    def divides(self, small: Monomial, big: Monomial) -> Optional[Monomial]:
        if all(a <= b for a, b in zip(small, big)):
            return tuple(b - a for a, b in zip(small, big))
        return None

    def lcm(self, m1: Monomial, m2: Monomial) -> Monomial:
        return tuple(max(a, b) for a, b in zip(m1, m2))

    def shares_letters(self, m1: Monomial, m2: Monomial) -> bool:
        return any(a and b for a, b in zip(m1, m2))

    def monomial_parity(self, m: Monomial) -> int:
        return sum(e for e, p in zip(m, self.parities) if p) % 2

    def monomial_degree(self, m: Monomial) -> Optional[tuple[int, ...]]:
        total: Optional[list[int]] = None
        for i, e in enumerate(m):
            if not e:
                continue
            deg = self.letters[i].degree
            if deg is None:
                return None
            if total is None:
                total = [0] * len(deg)
            for k, v in enumerate(deg):
                total[k] += e * v
        if total is None:
            degs = [letter.degree for letter in self.letters if letter.degree is not None]
            return tuple(0 for _ in degs[0]) if degs else None
        return tuple(total)

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for i, e in enumerate(m):
            if e == 1:
                parts.append(self.letters[i].symbol)
            elif e > 1:
                parts.append(f"{self.letters[i].symbol}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r}, {len(self.letters)} letters)"


class FreePresentation(Presentation):
    """The free algebra on the same letters: words, concatenation, no reduction."""

    free = True

    def one(self) -> Monomial:
        return ()

    def letter_monomial(self, i: int) -> Monomial:
        return (i,)

    def is_valid(self, m: Monomial) -> bool:
        return True

    def multiply(self, m1: Monomial, m2: Monomial) -> Product:
        return 0, 1, m1 + m2

    def word(self, m: Monomial) -> tuple[int, ...]:
        return m

    def from_word(self, word: Sequence[int]) -> Product:
        return 0, 1, tuple(word)

    def star_monomial(self, m: Monomial) -> Product:
        return 0, 1, tuple(self.star_index(i) for i in reversed(m))

    def order_key(self, m: Monomial) -> tuple:
        return (len(m), m)

    def divides(self, small: Monomial, big: Monomial) -> Optional[Monomial]:
        raise PresentationError(f"{self.name}: rewriting is not available on free words")

    def monomial_parity(self, m: Monomial) -> int:
        return sum(self.parities[i] for i in m) % 2

    def monomial_degree(self, m: Monomial) -> Optional[tuple[int, ...]]:
        counts = [0] * len(self.letters)
        for i in m:
            counts[i] += 1
        return Presentation.monomial_degree(self, tuple(counts))

    def format_monomial(self, m: Monomial) -> str:
        return "*".join(self.letters[i].symbol for i in m) if m else "1"


def free_copy(p: Presentation, name: Optional[str] = None) -> FreePresentation:
    phases = {
        (a.name, b.name): p.phase_exponent(i, j)
        for i, a in enumerate(p.letters)
        for j, b in enumerate(p.letters)
        if i < j and p.phase_exponent(i, j)
    }
    d_map = {p.letters[a].name: p.letters[b].name for a, b in p.d_map.items()}
    return FreePresentation(name or f"{p.name}-free", p.letters, phases, d_map)


# ============================================================================
# Polynomials
# ============================================================================


def _collect(acc: Mapping[tuple[TermKey, int], Fraction]) -> dict[TermKey, PhaseCoefficient]:
    grouped: dict[TermKey, dict[int, Fraction]] = {}
    for (key, exp), q in acc.items():
        if q:
            grouped.setdefault(key, {})[exp] = q
    return {key: PhaseCoefficient(bucket) for key, bucket in grouped.items()}


class TensorPolynomial:
    """Finite sum of ``coefficient * m_1 @ ... @ m_k`` over fixed legs."""

    __slots__ = ("legs", "terms")

    def __init__(
        self,
        legs: Sequence[Presentation],
        terms: Optional[dict[TermKey, PhaseCoefficient]] = None,
    ):
        self.legs: tuple[Presentation, ...] = tuple(legs)
        self.terms: dict[TermKey, PhaseCoefficient] = terms if terms is not None else {}

    @staticmethod
    def _new(
        legs: Sequence[Presentation], terms: dict[TermKey, PhaseCoefficient]
    ) -> TensorPolynomial:
        if len(legs) == 1:
            return NCPolynomial(legs, terms)
        return TensorPolynomial(legs, terms)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, legs: Sequence[Presentation]) -> TensorPolynomial:
        return cls._new(tuple(legs), {})

    @classmethod
    def constant(cls, legs: Sequence[Presentation], value: Scalar = 1) -> TensorPolynomial:
        c = PhaseCoefficient.coerce(value)
        key = tuple(p.one() for p in legs)
        return cls._new(tuple(legs), {key: c} if c else {})

    @classmethod
    def letter(
        cls, legs: Sequence[Presentation], leg: int, name: Union[str, int]
    ) -> TensorPolynomial:
        legs = tuple(legs)
        key = tuple(
            p.letter_monomial(p.index(name)) if k == leg else p.one() for k, p in enumerate(legs)
        )
        return cls._new(legs, {key: ONE})

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def arity(self) -> int:
        return len(self.legs)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> Iterator[tuple[TermKey, PhaseCoefficient]]:
        return iter(self.terms.items())

    def coefficient(self, key: TermKey) -> PhaseCoefficient:
        return self.terms.get(key, PhaseCoefficient())

    def sorted_keys(self) -> list[TermKey]:
        return sorted(
            self.terms,
            key=lambda k: tuple(p.order_key(m) for p, m in zip(self.legs, k)),
            reverse=True,
        )

    def constant_term(self) -> PhaseCoefficient:
        return self.terms.get(tuple(p.one() for p in self.legs), PhaseCoefficient())

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _check_legs(self, other: TensorPolynomial) -> None:
        if self.legs != other.legs:
            raise PresentationError(
                "polynomials live over different presentations: "
                f"{[p.name for p in self.legs]} vs {[p.name for p in other.legs]}"
            )

    def _lift(self, other: object) -> Optional[TensorPolynomial]:
        if isinstance(other, TensorPolynomial):
            self._check_legs(other)
            return other
        if isinstance(other, (int, Fraction, PhaseCoefficient)) and not isinstance(other, bool):
            return TensorPolynomial.constant(self.legs, other)
        return None

    def __add__(self, other: object) -> TensorPolynomial:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key)
            if s is None:
                terms[key] = c
            else:
                s = s + c
                if s:
                    terms[key] = s
                else:
                    del terms[key]
        return self._new(self.legs, terms)

    __radd__ = __add__

    def __neg__(self) -> TensorPolynomial:
        return self._new(self.legs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: object) -> TensorPolynomial:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> TensorPolynomial:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, value: Scalar) -> TensorPolynomial:
        c = PhaseCoefficient.coerce(value)
        if not c:
            return self._new(self.legs, {})
        if c == ONE:
            return self
        terms = {}
        for key, coeff in self.terms.items():
            product = coeff * c
            if product:
                terms[key] = product
        return self._new(self.legs, terms)

    def __mul__(self, other: object) -> TensorPolynomial:
        if isinstance(other, (int, Fraction, PhaseCoefficient)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, TensorPolynomial):
            return NotImplemented
        self._check_legs(other)
        legs = self.legs
        acc: dict[tuple[TermKey, int], Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                exp = 0
                sign = 1
                key = []
                for p, m1, m2 in zip(legs, k1, k2):
                    product = p.multiply(m1, m2)
                    if product is None:
                        break
                    e, s, m = product
                    exp += e
                    sign *= s
                    key.append(m)
                else:
                    tkey = tuple(key)
                    for e1, q1 in c1.terms:
                        for e2, q2 in c2.terms:
                            slot = (tkey, exp + e1 + e2)
                            acc[slot] = acc.get(slot, Fraction(0)) + sign * q1 * q2
        return self._new(legs, _collect(acc))

    def __rmul__(self, other: object) -> TensorPolynomial:
        if isinstance(other, (int, Fraction, PhaseCoefficient)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> TensorPolynomial:
        result = TensorPolynomial.constant(self.legs, 1)
        for _ in range(n):
            result = result * self
        return result

    def __matmul__(self, other: object) -> TensorPolynomial:
        """Tensor product; legs are concatenated."""
        if not isinstance(other, TensorPolynomial):
            return NotImplemented
        acc: dict[tuple[TermKey, int], Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = k1 + k2
                for e1, q1 in c1.terms:
                    for e2, q2 in c2.terms:
                        slot = (key, e1 + e2)
                        acc[slot] = acc.get(slot, Fraction(0)) + q1 * q2
        return self._new(self.legs + other.legs, _collect(acc))

    def star(self) -> TensorPolynomial:
        """Antilinear anti-involution applied on every leg."""
        terms: dict[TermKey, PhaseCoefficient] = {}
        for key, c in self.terms.items():
            exp = 0
            sign = 1
            new_key = []
            for p, m in zip(self.legs, key):
                e, s, m2 = p.star_monomial(m)
                exp += e
                sign *= s
                new_key.append(m2)
            tkey = tuple(new_key)
            value = c.conj().shift(exp) * sign
            previous = terms.get(tkey)
            value = value if previous is None else previous + value
            if value:
                terms[tkey] = value
            else:
                terms.pop(tkey, None)
        return self._new(self.legs, terms)

    def map_coefficients(self, fn) -> TensorPolynomial:
        terms = {}
        for key, c in self.terms.items():
            value = fn(c)
            if value:
                terms[key] = value
        return self._new(self.legs, terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, PhaseCoefficient)) and not isinstance(other, bool):
            other = TensorPolynomial.constant(self.legs, other)
        if not isinstance(other, TensorPolynomial):
            return NotImplemented
        return self.legs == other.legs and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------

    def _term_body(self, key: TermKey) -> str:
        return " @ ".join(p.format_monomial(m) for p, m in zip(self.legs, key))

    def to_text(self, theta: Optional[float] = None) -> str:
        """Canonical text; with ``theta`` the coefficients are shown numerically."""
        if not self.terms:
            return "0"
        wrap = self.arity > 1 and len(self.terms) > 1
        pieces: list[tuple[bool, str]] = []
        for key in self.sorted_keys():
            body = self._term_body(key)
            is_one = all(m == p.one() for p, m in zip(self.legs, key))
            c = self.terms[key]
            negative, text = _term_with_coefficient(c, body, is_one and self.arity == 1, theta)
            if wrap:
                text = f"({text})"
            pieces.append((negative, text))
        out = []
        for n, (negative, text) in enumerate(pieces):
            if n == 0:
                out.append(f"-{text}" if negative else text)
            else:
                out.append(f"- {text}" if negative else f"+ {text}")
        return " ".join(out)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        names = ",".join(p.name for p in self.legs)
        return f"{type(self).__name__}[{names}]({self.to_text()!r})"


def _term_with_coefficient(
    c: PhaseCoefficient, body: str, bare: bool, theta: Optional[float]
) -> tuple[bool, str]:
    if theta is not None:
        value = c.eval_numeric(theta)
        text = f"({value.real:.12g}{value.imag:+.12g}j)"
        return False, text if bare else f"{text} * {body}"
    phase = c.as_phase()
    if phase is None:
        text = f"({c.to_text()})"
        return False, text if bare else f"{text} * {body}"
    exp, q = phase
    negative = q < 0
    q = abs(q)
    if bare:
        return negative, term_text(exp, q)
    if exp == 0 and q == 1:
        return negative, body
    return negative, f"{term_text(exp, q)} * {body}"


class NCPolynomial(TensorPolynomial):
    """Polynomial over a single presentation."""

    __slots__ = ()

    @property
    def presentation(self) -> Presentation:
        return self.legs[0]

    @classmethod
    def of(cls, p: Presentation, value: Scalar = 1) -> NCPolynomial:
        return TensorPolynomial.constant((p,), value)  # type: ignore[return-value]

    @classmethod
    def gen(cls, p: Presentation, name: Union[str, int]) -> NCPolynomial:
        return TensorPolynomial.letter((p,), 0, name)  # type: ignore[return-value]

    @classmethod
    def from_monomial(cls, p: Presentation, m: Monomial, value: Scalar = 1) -> NCPolynomial:
        c = PhaseCoefficient.coerce(value)
        return NCPolynomial((p,), {(m,): c} if c else {})

    def monomials(self) -> Iterator[tuple[Monomial, PhaseCoefficient]]:
        for key, c in self.terms.items():
            yield key[0], c

    def leading(self) -> tuple[Monomial, PhaseCoefficient]:
        p = self.presentation
        m = max((key[0] for key in self.terms), key=p.order_key)
        return m, self.terms[(m,)]

    def letters_used(self) -> set[int]:
        p = self.presentation
        used: set[int] = set()
        for key in self.terms:
            used.update(p.word(key[0]))
        return used


Polynomial = TensorPolynomial


# ============================================================================
# Module-level operations
# ============================================================================


def gens(p: Presentation) -> dict[str, NCPolynomial]:
    """All letters of ``p`` as polynomials, keyed by letter name."""
    return {letter.name: NCPolynomial.gen(p, letter.name) for letter in p.letters}


def tensor(*factors: TensorPolynomial) -> TensorPolynomial:
    result = factors[0]
    for f in factors[1:]:
        result = result @ f
    return result


def embed(f: TensorPolynomial, legs: Sequence[Presentation], position: int) -> TensorPolynomial:
    """Place ``f`` at leg ``position`` with units on the other legs."""
    before = [TensorPolynomial.constant((p,), 1) for p in legs[:position]]
    after = [TensorPolynomial.constant((p,), 1) for p in legs[position + len(f.legs) :]]
    return tensor(*before, f, *after)


def commutator(f: TensorPolynomial, g: TensorPolynomial) -> TensorPolynomial:
    return f * g - g * f


def linear_combination(
    legs: Sequence[Presentation], pairs: Iterable[tuple[Scalar, TensorPolynomial]]
) -> TensorPolynomial:
    acc: dict[tuple[TermKey, int], Fraction] = {}
    for scalar, f in pairs:
        c = PhaseCoefficient.coerce(scalar)
        for key, coeff in f.terms.items():
            for e1, q1 in coeff.terms:
                for e2, q2 in c.terms:
                    slot = (key, e1 + e2)
                    acc[slot] = acc.get(slot, Fraction(0)) + q1 * q2
    return TensorPolynomial._new(tuple(legs), _collect(acc))


def normal_order(
    p: Presentation, word: Sequence[Union[int, str]], coefficient: Scalar = 1
) -> NCPolynomial:
    """Rewrite a word to its unique normal ordered form."""
    indices = tuple(p.index(x) for x in word)
    product = p.from_word(indices)
    if product is None:
        return NCPolynomial((p,), {})
    exp, sign, m = product
    c = PhaseCoefficient.coerce(coefficient).shift(exp) * sign
    return NCPolynomial.from_monomial(p, m, c)


def normal_order_naive(
    p: Presentation, word: Sequence[Union[int, str]], coefficient: Scalar = 1
) -> NCPolynomial:
    """Reference implementation by adjacent transpositions."""
    letters = [p.index(x) for x in word]
    c = PhaseCoefficient.coerce(coefficient)
    changed = True
    while changed:
        changed = False
        for k in range(len(letters) - 1):
            x, y = letters[k], letters[k + 1]
            if x == y and p.parities[x]:
                return NCPolynomial((p,), {})
            if x > y:
                c = c * p.relation(x, y)
                letters[k], letters[k + 1] = y, x
                changed = True
    counts = [0] * p.size
    for x in letters:
        counts[x] += 1
    return NCPolynomial.from_monomial(p, tuple(counts), c)


def differential(f: TensorPolynomial, leg: int = 0) -> TensorPolynomial:
    """Graded derivation on one leg, with Koszul sign from the legs before it."""
    p = f.legs[leg]
    if not p.d_map:
        raise PresentationError(f"presentation {p.name} carries no differential")
    acc: dict[tuple[TermKey, int], Fraction] = {}
    for key, c in f.terms.items():
        koszul = sum(q.monomial_parity(m) for q, m in zip(f.legs[:leg], key[:leg])) % 2
        for m2, dc in p.d_monomial(key[leg]):
            new_key = key[:leg] + (m2,) + key[leg + 1 :]
            for e1, q1 in c.terms:
                for e2, q2 in dc.terms:
                    slot = (new_key, e1 + e2)
                    value = q1 * q2
                    acc[slot] = acc.get(slot, Fraction(0)) + (-value if koszul else value)
    return TensorPolynomial._new(f.legs, _collect(acc))


def leg_collect(
    t: TensorPolynomial, leg: int
) -> dict[Monomial, Union[TensorPolynomial, PhaseCoefficient]]:
    """Group ``t`` by its monomial on ``leg``; values live on the remaining legs."""
    rest = t.legs[:leg] + t.legs[leg + 1 :]
    grouped: dict[Monomial, dict[TermKey, PhaseCoefficient]] = {}
    for key, c in t.terms.items():
        grouped.setdefault(key[leg], {})[key[:leg] + key[leg + 1 :]] = c
    out: dict[Monomial, Union[TensorPolynomial, PhaseCoefficient]] = {}
    for m, terms in grouped.items():
        if rest:
            out[m] = TensorPolynomial._new(rest, terms)
        else:
            out[m] = terms[()]
    return out


# ============================================================================
# Homomorphisms
# ============================================================================

Image = Union[TensorPolynomial, PhaseCoefficient, int, Fraction]


@dataclass
class RelationViolation:
    """One defining relation a map fails to preserve."""

    left: str
    right: str
    coefficient: PhaseCoefficient
    residual: Union[TensorPolynomial, PhaseCoefficient]

    @property
    def relation(self) -> str:
        c = self.coefficient.to_text()
        return f"{self.left}*{self.right} = ({c}) * {self.right}*{self.left}"


def _normalize_images(
    p: Presentation, images: Mapping[Union[str, int], Image]
) -> tuple[dict[int, Image], tuple[Presentation, ...]]:
    normalized = {p.index(k): v for k, v in images.items()}
    target: Optional[tuple[Presentation, ...]] = None
    for v in normalized.values():
        if isinstance(v, TensorPolynomial):
            if target is not None and v.legs != target:
                raise HomomorphismError("images live over different presentations")
            target = v.legs
    if target is None:
        target = ()
    if target:
        normalized = {
            k: v if isinstance(v, TensorPolynomial) else TensorPolynomial.constant(target, v)
            for k, v in normalized.items()
        }
    else:
        normalized = {
            k: PhaseCoefficient.coerce(v)  # type: ignore[arg-type]
            for k, v in normalized.items()
        }
    return normalized, target


def hom_violations(
    p: Presentation,
    images: Mapping[Union[str, int], Image],
    *,
    antilinear: bool = False,
    anti: bool = False,
) -> list[RelationViolation]:
    """Every defining relation among the mapped letters that the map breaks."""
    normalized, _ = _normalize_images(p, images)
    domain = sorted(normalized)
    found: list[RelationViolation] = []
    for a, i in enumerate(domain):
        for j in domain[a + 1 :]:
            c = p.relation(i, j)
            if antilinear:
                c = c.conj()
            fi, fj = normalized[i], normalized[j]
            if anti:
                residual = fj * fi - (fi * fj) * c
            else:
                residual = fi * fj - (fj * fi) * c
            if residual:
                found.append(RelationViolation(p.letters[i].name, p.letters[j].name, c, residual))
        if p.parities[i]:
            square = normalized[i] * normalized[i]
            if square:
                found.append(
                    RelationViolation(
                        p.letters[i].name, p.letters[i].name, PhaseCoefficient(), square
                    )
                )
    return found


def validate_hom(
    p: Presentation,
    images: Mapping[Union[str, int], Image],
    *,
    antilinear: bool = False,
    anti: bool = False,
) -> None:
    violations = hom_violations(p, images, antilinear=antilinear, anti=anti)
    if violations:
        first = violations[0]
        residual = first.residual
        if isinstance(residual, (TensorPolynomial, PhaseCoefficient)):
            text = residual.to_text()
        else:
            text = str(residual)
        raise HomomorphismError(
            f"map does not preserve {first.relation} ({len(violations)} relations violated)",
            relation=first.relation,
            residual=text,
        )


def apply_hom(
    f: TensorPolynomial,
    images: Mapping[Union[str, int], Image],
    leg: int = 0,
    *,
    antilinear: bool = False,
    anti: bool = False,
    validate: bool = False,
) -> Union[TensorPolynomial, PhaseCoefficient]:
    """Apply a letter-wise defined map to one leg of ``f``.

    The leg is replaced by the legs of the images (none when every image is
    a scalar, as for a counit). ``anti`` reverses products, ``antilinear``
    conjugates coefficients.
    """
    p = f.legs[leg]
    if validate:
        validate_hom(p, images, antilinear=antilinear, anti=anti)
    normalized, target = _normalize_images(p, images)
    new_legs = f.legs[:leg] + target + f.legs[leg + 1 :]

    cache: dict[Monomial, Union[TensorPolynomial, PhaseCoefficient]] = {}

    def image_of(m: Monomial):
        hit = cache.get(m)
        if hit is not None:
            return hit
        word = p.word(m)
        if anti:
            word = tuple(reversed(word))
        result: Union[TensorPolynomial, PhaseCoefficient] = (
            TensorPolynomial.constant(target, 1) if target else ONE
        )
        for x in word:
            try:
                result = result * normalized[x]
            except KeyError:
                raise HomomorphismError(
                    f"no image given for letter {p.letters[x].name} of {p.name}"
                ) from None
        cache[m] = result
        return result

    acc: dict[tuple[TermKey, int], Fraction] = {}
    for key, c in f.terms.items():
        if antilinear:
            c = c.conj()
        img = image_of(key[leg])
        before, after = key[:leg], key[leg + 1 :]
        img_terms = img.terms.items() if target else (((), img),)  # type: ignore[union-attr]
        for tkey, tc in img_terms:
            new_key = before + tkey + after
            for e1, q1 in c.terms:
                for e2, q2 in tc.terms:
                    slot = (new_key, e1 + e2)
                    acc[slot] = acc.get(slot, Fraction(0)) + q1 * q2
    if not new_legs:
        total = PhaseCoefficient()
        for (key, exp), q in acc.items():
            total = total + PhaseCoefficient.monomial(exp, q)
        return total
    return TensorPolynomial._new(new_legs, _collect(acc))


def phase_between(f: TensorPolynomial, g: TensorPolynomial) -> Optional[PhaseCoefficient]:
    """The unit ``c`` with ``f g = c g f`` when one exists.

    A unit ``q*mu^k`` shifts every coefficient without changing its shape, so
    the lowest terms of one matching pair of coefficients fix ``k`` and ``q``.
    """
    fg = f * g
    gf = g * f
    if not gf:
        return ONE if not fg else None
    key = gf.sorted_keys()[0]
    above, below = fg.coefficient(key).terms, gf.coefficient(key).terms
    if not above:
        return None
    c = PhaseCoefficient.monomial(above[0][0] - below[0][0], above[0][1] / below[0][1])
    return c if fg == gf * c else None
