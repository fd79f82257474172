"""Exact rational scalars, dense matrices, and Gauss-Jordan inversion.

Every scalar is a ``fractions.Fraction``, so all results are exact: no
float enters this module. ``Fraction`` already guarantees the storage
invariants we rely on (positive denominator, lowest terms, structural
equality), which is why it is used directly instead of a bespoke type.
Matrices are small and dense; entries are immutable after construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DimensionError, SingularMatrixError

Rational = Fraction

Scalar = Union[int, Fraction]


def rational(num: int, den: int = 1) -> Rational:
    """Build a reduced fraction; the sign lives on the numerator."""
    if den == 0:
        raise ValueError("zero denominator")
    return Fraction(num, den)


def _coerce(value: Scalar) -> Rational:
    # floats are rejected on purpose: they would silently break exactness
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


@dataclass(frozen=True)
class RVector:
    """Fixed-length ordered list of exact rationals."""

    entries: tuple[Rational, ...]

    @classmethod
    def of(cls, values: Iterable[Scalar]) -> "RVector":
        return cls(tuple(_coerce(v) for v in values))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Rational:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def total(self) -> Rational:
        return sum(self.entries, Fraction(0))


@dataclass(frozen=True)
class RMatrix:
    """Dense row-major matrix of exact rationals with immutable dimensions."""

    rows: int
    cols: int
    entries: tuple[tuple[Rational, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative dimensions")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError("entry grid does not match the declared dimensions")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Scalar]], cols: int | None = None) -> "RMatrix":
        grid = tuple(tuple(_coerce(v) for v in row) for row in rows)
        if grid:
            width = len(grid[0])
        elif cols is not None:
            width = cols
        else:
            width = 0
        return cls(len(grid), width, grid)

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RMatrix":
        return cls(rows, cols, tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows)))

    def row(self, i: int) -> tuple[Rational, ...]:
        return self.entries[i]

    def __getitem__(self, key: tuple[int, int]) -> Rational:
        r, c = key
        return self.entries[r][c]


def mat_add(a: RMatrix, b: RMatrix) -> RMatrix:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionError(f"cannot add {a.rows}x{a.cols} and {b.rows}x{b.cols}")
    grid = tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.entries, b.entries)
    )
    return RMatrix(a.rows, a.cols, grid)


def mat_sub(a: RMatrix, b: RMatrix) -> RMatrix:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionError(f"cannot subtract {b.rows}x{b.cols} from {a.rows}x{a.cols}")
    grid = tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a.entries, b.entries)
    )
    return RMatrix(a.rows, a.cols, grid)


def mat_mul(a: RMatrix, b: RMatrix) -> RMatrix:
    """Exact matrix product; no rounding anywhere."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bt = tuple(zip(*b.entries)) if b.entries else tuple(() for _ in range(b.cols))
    grid = tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt)
        for row in a.entries
    )
    return RMatrix(a.rows, b.cols, grid)


def mat_pow(a: RMatrix, n: int) -> RMatrix:
    """Exact matrix power by repeated squaring."""
    if a.rows != a.cols:
        raise DimensionError("matrix power requires a square matrix")
    if n < 0:
        raise ValueError("negative exponent")
    result = RMatrix.identity(a.rows)
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def vec_mat_mul(x: RVector, a: RMatrix) -> RVector:
    """Row-vector times matrix, exactly."""
    if len(x) != a.rows:
        raise DimensionError(f"vector of length {len(x)} times {a.rows}x{a.cols} matrix")
    cols = tuple(zip(*a.entries)) if a.entries else tuple(() for _ in range(a.cols))
    return RVector(tuple(sum((xi * ci for xi, ci in zip(x.entries, col)), Fraction(0)) for col in cols))


def mat_vec_mul(a: RMatrix, x: RVector) -> RVector:
    """Matrix times column vector, exactly."""
    if a.cols != len(x):
        raise DimensionError(f"{a.rows}x{a.cols} matrix times vector of length {len(x)}")
    return RVector(tuple(sum((v * xi for v, xi in zip(row, x.entries)), Fraction(0)) for row in a.entries))


def mat_inverse(a: RMatrix) -> RMatrix:
    """Exact inverse via Gauss-Jordan elimination on fractions.

    The pivot for each column is the first row with a nonzero entry; exact
    arithmetic needs no magnitude-based pivoting, and a fixed rule keeps the
    elimination deterministic. Raises ``SingularMatrixError`` naming the
    column with no pivot.
    """
    if a.rows != a.cols:
        raise DimensionError(f"cannot invert a {a.rows}x{a.cols} matrix")
    n = a.rows
    work = [list(row) for row in a.entries]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(f"singular matrix: no pivot in column {col}")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = work[col][col]
        if scale != 1:
            work[col] = [v / scale for v in work[col]]
            inv[col] = [v / scale for v in inv[col]]
        for r in range(n):
            if r == col:
                continue
            factor = work[r][col]
            if factor == 0:
                continue
            work[r] = [v - factor * w for v, w in zip(work[r], work[col])]
            inv[r] = [v - factor * w for v, w in zip(inv[r], inv[col])]
    return RMatrix(n, n, tuple(tuple(row) for row in inv))


def decimal_string(value: Rational, digits: int) -> str:
    """Fixed-point decimal rendering of an exact fraction, round-half-even.

    The stored value is never rounded; this is display only.
    """
    if digits < 0:
        raise ValueError("digits must be nonnegative")
    sign = "-" if value < 0 else ""
    magnitude = -value if value < 0 else value
    scaled = magnitude * Fraction(10) ** digits
    whole, rem = divmod(scaled.numerator, scaled.denominator)
    doubled = 2 * rem
    if doubled > scaled.denominator or (doubled == scaled.denominator and whole % 2 == 1):
        whole += 1
    text = str(whole)
    if digits == 0:
        return sign + text
    text = text.rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"
