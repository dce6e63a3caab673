"""Square matrices over the Laurent polynomial ring Q[x, x^-1].

These are the transition-matrix data for vector bundles on the sphere
and the B/C factors of their diagonal factorizations.  Determinants are
computed exactly (subset dynamic programming over columns), and a matrix
is invertible over the ring exactly when its determinant is a monomial
c*x^t; the inverse is then adjugate / determinant, also exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatch, NotInvertibleOverLaurentRing
from .laurent import LaurentPoly, Scalar

Entry = Union[LaurentPoly, int, Fraction]


def _coerce_entry(value: Entry) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentPoly.constant(value)
    raise TypeError(f"Laurent entry expected, got {type(value).__name__}")


class LaurentMatrix:
    """Immutable square matrix of LaurentPoly entries."""

    __slots__ = ("n", "entries")

    def __init__(self, rows: Sequence[Sequence[Entry]]):
        entries = tuple(tuple(_coerce_entry(v) for v in row) for row in rows)
        n = len(entries)
        if n < 1:
            raise DimensionMismatch("matrix dimension must be at least 1")
        if any(len(row) != n for row in entries):
            raise DimensionMismatch("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentMatrix is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def identity(n: int) -> "LaurentMatrix":
        return LaurentMatrix(
            [[LaurentPoly.one() if i == j else LaurentPoly.zero() for j in range(n)]
             for i in range(n)]
        )

    @staticmethod
    def diagonal(values: Sequence[Entry]) -> "LaurentMatrix":
        n = len(values)
        return LaurentMatrix(
            [[_coerce_entry(values[i]) if i == j else LaurentPoly.zero()
              for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def diagonal_powers(exponents: Sequence[int]) -> "LaurentMatrix":
        """diag(x^e1, ..., x^en)."""
        return LaurentMatrix.diagonal([LaurentPoly.x_power(e) for e in exponents])

    # -- structure -----------------------------------------------------

    def __getitem__(self, ij: Tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[LaurentPoly, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[LaurentPoly, ...]:
        return tuple(self.entries[i][j] for i in range(self.n))

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(tuple(zip(*self.entries)))

    def map_entries(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> "LaurentMatrix":
        return LaurentMatrix([[fn(v) for v in row] for row in self.entries])

    def shift(self, k: int) -> "LaurentMatrix":
        """Multiply every entry by x^k."""
        return self.map_entries(lambda p: p.shift(k))

    def is_zero(self) -> bool:
        return all(v.is_zero for row in self.entries for v in row)

    def is_identity(self) -> bool:
        one, zero = LaurentPoly.one(), LaurentPoly.zero()
        return all(
            self.entries[i][j] == (one if i == j else zero)
            for i in range(self.n) for j in range(self.n)
        )

    def is_polynomial(self) -> bool:
        """All entries in Q[x] (no negative exponents)."""
        return all(v.is_polynomial() for row in self.entries for v in row)

    def is_antipolynomial(self) -> bool:
        """All entries in Q[x^-1] (no positive exponents)."""
        return all(v.is_antipolynomial() for row in self.entries for v in row)

    def exponent_range(self) -> Tuple[int, int]:
        """(min, max) exponent over all nonzero entries."""
        lo = hi = None
        for row in self.entries:
            for v in row:
                if v.is_zero:
                    continue
                o, d = v.ord(), v.deg()
                lo = o if lo is None else min(lo, o)
                hi = d if hi is None else max(hi, d)
        if lo is None:
            raise ValueError("zero matrix has no exponent range")
        return lo, hi

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._check_shape(other)
        return LaurentMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._check_shape(other)
        return LaurentMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "LaurentMatrix":
        return self.map_entries(lambda p: -p)

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._check_shape(other)
        n = self.n
        cols = tuple(zip(*other.entries))
        return LaurentMatrix(
            [[_dot(self.entries[i], cols[j]) for j in range(n)] for i in range(n)]
        )

    def apply(self, vector: Sequence[Entry]) -> Tuple[LaurentPoly, ...]:
        if len(vector) != self.n:
            raise DimensionMismatch("vector length mismatch")
        vec = tuple(_coerce_entry(v) for v in vector)
        return tuple(_dot(row, vec) for row in self.entries)

    def scale(self, c: Scalar) -> "LaurentMatrix":
        return self.map_entries(lambda p: p.scale(c))

    def _check_shape(self, other: "LaurentMatrix") -> None:
        if not isinstance(other, LaurentMatrix) or other.n != self.n:
            raise DimensionMismatch("matrix dimension mismatch")

    # -- determinant, units, inverse ------------------------------------

    def det(self) -> LaurentPoly:
        """Exact determinant (column-subset dynamic programming)."""
        return _det_rows(self.entries)

    def unit_det(self) -> Optional[Tuple[Fraction, int]]:
        """(c, t) with det = c*x^t when the determinant is a unit, else None."""
        return self.det().as_monomial()

    def inverse(self) -> "LaurentMatrix":
        """Inverse over the Laurent ring: adjugate divided by the unit det.

        Raises NotInvertibleOverLaurentRing when det is not a monomial.
        """
        unit = self.unit_det()
        if unit is None:
            raise NotInvertibleOverLaurentRing(
                "determinant is not a unit c*x^t of Q[x, x^-1]"
            )
        c, t = unit
        n = self.n
        inv_rows: List[List[LaurentPoly]] = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = _det_rows(_submatrix(self.entries, j, i))
                sign = -1 if (i + j) % 2 else 1
                row.append(minor.scale(Fraction(sign, 1) / c).shift(-t))
            inv_rows.append(row)
        return LaurentMatrix(inv_rows)

    # -- comparison and display ---------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __str__(self) -> str:
        return "\n".join(
            "[" + ", ".join(str(v) for v in row) + "]" for row in self.entries
        )

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.n}x{self.n})"


def _dot(row: Sequence[LaurentPoly], col: Sequence[LaurentPoly]) -> LaurentPoly:
    total = LaurentPoly.zero()
    for a, b in zip(row, col):
        if not (a.is_zero or b.is_zero):
            total = total + a * b
    return total


def _submatrix(entries, drop_row: int, drop_col: int):
    return [
        [v for j, v in enumerate(row) if j != drop_col]
        for i, row in enumerate(entries) if i != drop_row
    ]


def _det_rows(entries) -> LaurentPoly:
    n = len(entries)
    if n == 0:
        return LaurentPoly.one()
    # state[mask] = determinant of the first popcount(mask) rows on columns mask
    state = {0: LaurentPoly.one()}
    for i in range(n):
        new_state: dict = {}
        for mask, sub in state.items():
            if sub.is_zero:
                continue
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                entry = entries[i][j]
                if entry.is_zero:
                    continue
                above = bin(mask >> (j + 1)).count("1")
                term = sub * entry
                if above % 2:
                    term = -term
                key = mask | bit
                acc = new_state.get(key)
                new_state[key] = term if acc is None else acc + term
        state = new_state
    return state.get((1 << n) - 1, LaurentPoly.zero())
