"""Exact arithmetic on truncated integer power series and rainbow matrices.

A rainbow matrix is a unipotent upper-triangular Toeplitz matrix

    Id_k + beta_1 N_k + beta_2 N_k^2 + ... + beta_{k-1} N_k^{k-1},

where N_k is the regular nilpotent matrix (ones on the first superdiagonal).
The integers beta_i are its *colors*.  Rainbow matrices correspond to unit
truncated power series under the substitution t -> N_k, which makes their
products and inverses cheap series operations.

Everything in this module is exact: coefficients are Python ints (arbitrary
precision), never floats or fixed-width integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class SeriesError(ValueError):
    """Invalid operand for a truncated-series operation."""


class MatrixError(ValueError):
    """Shape mismatch or non-unimodular inverse request."""


def _as_int_tuple(values: Iterable[object]) -> tuple[int, ...]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise SeriesError(f"integer coefficient expected, got {v!r}")
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class TruncatedSeries:
    """Integer power series mod t^order; coeffs[i] is the t^i coefficient."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _as_int_tuple(self.coeffs))
        if len(self.coeffs) < 1:
            raise SeriesError("truncation order must be positive")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        if order < 1:
            raise SeriesError("truncation order must be positive")
        return cls((1,) + (0,) * (order - 1))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], order: int) -> TruncatedSeries:
        """Pad with zeros or truncate to the requested order."""
        if order < 1:
            raise SeriesError("truncation order must be positive")
        c = _as_int_tuple(coeffs)[:order]
        return cls(c + (0,) * (order - len(c)))

    def truncate(self, order: int) -> TruncatedSeries:
        return TruncatedSeries.from_coeffs(self.coeffs, order)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    if a.order != b.order:
        raise SeriesError(f"order mismatch: {a.order} != {b.order}")
    n = a.order
    out = [0] * n
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j in range(n - i):
            bj = b.coeffs[j]
            if bj:
                out[i + j] += ai * bj
    return TruncatedSeries(tuple(out))


def series_inv(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse mod t^order; requires unit constant term (+-1)."""
    c0 = a.coeffs[0]
    if c0 not in (1, -1):
        raise SeriesError(f"constant term must be +-1 to invert, got {c0}")
    n = a.order
    out = [0] * n
    out[0] = c0
    for k in range(1, n):
        acc = 0
        for j in range(1, k + 1):
            aj = a.coeffs[j]
            if aj:
                acc += aj * out[k - j]
        out[k] = -c0 * acc
    return TruncatedSeries(tuple(out))


def series_int_pow(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """Integer power (negative exponents go through series_inv)."""
    if e < 0:
        return series_int_pow(series_inv(a), -e)
    result = TruncatedSeries.one(a.order)
    base = a
    while e:
        if e & 1:
            result = series_mul(result, base)
        base = series_mul(base, base)
        e >>= 1
    return result


def one_minus_t_power(r: int, order: int) -> TruncatedSeries:
    """The series 1 - t^r at the given truncation order."""
    coeffs = [0] * order
    coeffs[0] = 1
    if r < order:
        coeffs[r] -= 1
    return TruncatedSeries(tuple(coeffs))


@dataclass(frozen=True)
class RainbowMatrix:
    """Unipotent upper-triangular Toeplitz matrix given by its colors."""

    size: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.size < 1:
            raise MatrixError("rainbow matrix size must be positive")
        object.__setattr__(self, "colors", _as_int_tuple(self.colors))
        if len(self.colors) != self.size - 1:
            raise MatrixError(
                f"size-{self.size} rainbow matrix needs {self.size - 1} colors, "
                f"got {len(self.colors)}"
            )

    @classmethod
    def identity(cls, size: int) -> RainbowMatrix:
        return cls(size, (0,) * (size - 1))

    def color_series(self, order: int | None = None) -> TruncatedSeries:
        """The series 1 + beta_1 t + ... truncated at `order` (default: size)."""
        return TruncatedSeries.from_coeffs((1,) + self.colors, order or self.size)

    def entry(self, i: int, j: int) -> int:
        if i == j:
            return 1
        if i < j:
            return self.colors[j - i - 1]
        return 0

    def dense(self) -> IntMatrix:
        k = self.size
        return IntMatrix(tuple(tuple(self.entry(i, j) for j in range(k)) for i in range(k)))

    def __matmul__(self, other: RainbowMatrix) -> RainbowMatrix:
        if self.size != other.size:
            raise MatrixError("rainbow product needs equal sizes")
        prod = series_mul(self.color_series(), other.color_series())
        return RainbowMatrix(self.size, prod.coeffs[1:])


def substitute_nilpotent(s: TruncatedSeries, k: int) -> RainbowMatrix:
    """Apply the ring map t -> N_k to a unit series (constant term must be 1)."""
    if k < 1:
        raise MatrixError("matrix size must be positive")
    if s.order < k:
        raise SeriesError(f"series order {s.order} too small for size {k}")
    if s.coeffs[0] != 1:
        raise SeriesError("substitution needs constant coefficient 1")
    return RainbowMatrix(k, tuple(s.coeffs[1:k]))


def rainbow_invert(a: RainbowMatrix) -> RainbowMatrix:
    """Inverse of a rainbow matrix; again rainbow, colors from series inversion."""
    inv = series_inv(a.color_series())
    return RainbowMatrix(a.size, inv.coeffs[1:])


def rainbow_extend(a: RainbowMatrix, l: int) -> RainbowMatrix:
    """Pad the colors with zeros up to size l >= size."""
    if l < a.size:
        raise MatrixError(f"cannot extend size {a.size} down to {l}")
    return RainbowMatrix(l, a.colors + (0,) * (l - a.size))


@dataclass(frozen=True)
class IntMatrix:
    """Dense exact integer matrix (rows of Python ints)."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(_as_int_tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise MatrixError("matrix must have positive dimensions")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise MatrixError("ragged rows")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        return cls(tuple(tuple(r) for r in rows))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise MatrixError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        cols = list(zip(*other.rows))
        return IntMatrix(
            tuple(
                tuple(sum(x * y for x, y in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix(tuple(tuple(-x for x in row) for row in self.rows))

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(tuple(tuple(k * x for x in row) for row in self.rows))

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.rows)))

    def anti_transpose(self) -> IntMatrix:
        """Reflection across the anti-diagonal: out[i][j] = in[n-1-j][n-1-i]."""
        n, m = self.nrows, self.ncols
        return IntMatrix(
            tuple(tuple(self.rows[n - 1 - j][m - 1 - i] for j in range(n)) for i in range(m))
        )

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(
            x == (1 if i == j else 0)
            for i, row in enumerate(self.rows)
            for j, x in enumerate(row)
        )


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return a @ b


def mat_transpose(a: IntMatrix) -> IntMatrix:
    return a.transpose()


def mat_pow(a: IntMatrix, e: int) -> IntMatrix:
    """Non-negative power by repeated squaring; e < 0 inverts first."""
    if a.nrows != a.ncols:
        raise MatrixError("power of a non-square matrix")
    if e < 0:
        return mat_pow(mat_inverse_unimodular(a), -e)
    result = IntMatrix.identity(a.nrows)
    base = a
    while e:
        if e & 1:
            result = result @ base
        base = base @ base
        e >>= 1
    return result


def unitriangular_inverse(a: IntMatrix) -> IntMatrix:
    """Exact inverse of an upper-unitriangular matrix by back-substitution.

    Pure integer arithmetic: row i of the inverse is e_i minus the
    a_{ij}-weighted rows below, computed bottom-up.
    """
    n = a.nrows
    if n != a.ncols:
        raise MatrixError("inverse of a non-square matrix")
    rows = a.rows
    inv: list[list[int]] = [[0] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        if rows[i][i] != 1 or any(rows[i][j] for j in range(i)):
            raise MatrixError("matrix is not upper unitriangular")
        out = [0] * n
        out[i] = 1
        for j in range(i + 1, n):
            f = rows[i][j]
            if f:
                inv_j = inv[j]
                for k in range(j, n):
                    if inv_j[k]:
                        out[k] -= f * inv_j[k]
        inv[i] = out
    return IntMatrix(tuple(tuple(r) for r in inv))


def mat_inverse_unimodular(a: IntMatrix) -> IntMatrix:
    """Exact inverse; raises MatrixError unless the inverse is integral (det = +-1)."""
    n = a.nrows
    if n != a.ncols:
        raise MatrixError("inverse of a non-square matrix")
    work = [[Fraction(x) for x in row] for row in a.rows]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise MatrixError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    if any(x.denominator != 1 for row in inv for x in row):
        raise MatrixError("matrix is not unimodular: inverse is not integral")
    return IntMatrix(tuple(tuple(int(x) for x in row) for row in inv))
