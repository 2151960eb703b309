"""Matrices with polynomial entries."""

from __future__ import annotations

from typing import Callable, Iterator, Sequence

from .algebra import TensorPolynomial, linear_combination
from .errors import PresentationError
from .phase import Scalar


class AlgebraMatrix:
    """Rectangular matrix of polynomials sharing the same legs.

    ``m[i, j]`` is zero-based; :meth:`at` is one-based to match index
    formulas.
    """

    def __init__(self, rows: Sequence[Sequence[TensorPolynomial]]):
        self.rows: tuple[tuple[TensorPolynomial, ...], ...] = tuple(tuple(r) for r in rows)
        if not self.rows or not self.rows[0]:
            raise PresentationError("matrix must have at least one entry")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise PresentationError("ragged matrix rows")
        self.legs = self.rows[0][0].legs

    @classmethod
    def build(
        cls, n_rows: int, n_cols: int, fn: Callable[[int, int], TensorPolynomial]
    ) -> AlgebraMatrix:
        """Build from a one-based entry function."""
        return cls([[fn(i, j) for j in range(1, n_cols + 1)] for i in range(1, n_rows + 1)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, index: tuple[int, int]) -> TensorPolynomial:
        i, j = index
        return self.rows[i][j]

    def at(self, i: int, j: int) -> TensorPolynomial:
        return self.rows[i - 1][j - 1]

    def entries(self) -> Iterator[tuple[int, int, TensorPolynomial]]:
        """One-based ``(i, j, entry)`` triples in row-major order."""
        for i, row in enumerate(self.rows, start=1):
            for j, entry in enumerate(row, start=1):
                yield i, j, entry

    def map(self, fn: Callable[[TensorPolynomial], TensorPolynomial]) -> AlgebraMatrix:
        return AlgebraMatrix([[fn(e) for e in row] for row in self.rows])

    def transpose(self) -> AlgebraMatrix:
        n, m = self.shape
        return AlgebraMatrix([[self.rows[i][j] for i in range(n)] for j in range(m)])

    def star(self) -> AlgebraMatrix:
        """Conjugate transpose: ``(M*)_ij = (M_ji)*``."""
        n, m = self.shape
        return AlgebraMatrix([[self.rows[i][j].star() for i in range(n)] for j in range(m)])

    def __matmul__(self, other: AlgebraMatrix) -> AlgebraMatrix:
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise PresentationError(f"cannot multiply {self.shape} by {other.shape}")
        return AlgebraMatrix(
            [
                [
                    linear_combination(
                        self.legs, ((1, self.rows[i][t] * other.rows[t][j]) for t in range(k))
                    )
                    for j in range(m)
                ]
                for i in range(n)
            ]
        )

    def tensor_dot(self, other: AlgebraMatrix) -> AlgebraMatrix:
        """``(A (x). B)_ij = sum_k A_ik @ B_kj``."""
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise PresentationError(f"cannot contract {self.shape} with {other.shape}")
        legs = self.legs + other.legs
        return AlgebraMatrix(
            [
                [
                    linear_combination(
                        legs, ((1, self.rows[i][t] @ other.rows[t][j]) for t in range(k))
                    )
                    for j in range(m)
                ]
                for i in range(n)
            ]
        )

    def _same_shape(self, other: AlgebraMatrix, op: str) -> None:
        if self.shape != other.shape:
            raise PresentationError(f"cannot {op} {self.shape} and {other.shape}")

    def __add__(self, other: AlgebraMatrix) -> AlgebraMatrix:
        self._same_shape(other, "add")
        pairs = zip(self.rows, other.rows)
        return AlgebraMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in pairs])

    def __sub__(self, other: AlgebraMatrix) -> AlgebraMatrix:
        self._same_shape(other, "subtract")
        pairs = zip(self.rows, other.rows)
        return AlgebraMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in pairs])

    def scale(self, value: Scalar) -> AlgebraMatrix:
        return self.map(lambda e: e.scale(value))

    def trace(self) -> TensorPolynomial:
        n, m = self.shape
        return linear_combination(self.legs, ((1, self.rows[i][i]) for i in range(min(n, m))))

    def is_zero(self) -> bool:
        return all(not e for row in self.rows for e in row)

    def nonzero_entries(self) -> list[tuple[int, int, TensorPolynomial]]:
        return [(i, j, e) for i, j, e in self.entries() if e]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraMatrix):
            return NotImplemented
        return self.rows == other.rows

    __hash__ = None  # type: ignore[assignment]

    def to_text(self) -> str:
        return "\n".join(" | ".join(e.to_text() for e in row) for row in self.rows)
