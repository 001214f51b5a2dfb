"""Dense exact integer and rational matrices.

Everything here works on Python ints and :class:`fractions.Fraction`; there
is no floating point anywhere. The Smith normal form is the workhorse: it
gives elementary divisors, saturated integer kernels and integral solving.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix

__all__ = [
    "IntMatrix",
    "RatMatrix",
    "SnfResult",
    "smith_normal_form",
    "elementary_divisors",
    "integer_kernel_basis",
    "rat_inverse",
    "solve_integral",
    "complete_to_unimodular",
    "same_lattice",
    "row_lattice_basis",
]


class _Matrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(self._coerce(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @staticmethod
    def _coerce(x):
        raise NotImplementedError

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]):
        data = [list(r) for r in data]
        if not data:
            raise ValueError("from_rows needs at least one row; use zeros(0, n)")
        cols = len(data[0])
        if any(len(r) != cols for r in data):
            raise DimensionMismatch("ragged rows")
        return cls(len(data), cols, [x for r in data for x in r])

    @classmethod
    def from_columns(cls, data: Sequence[Sequence]):
        return cls.from_rows(data).T

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, diag: Sequence, rows: int | None = None, cols: int | None = None):
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [0] * (rows * cols)
        for i, d in enumerate(diag):
            out[i * cols + i] = d
        return cls(rows, cols, out)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self):
        return type(self)(self.cols, self.rows, [x for j in range(self.cols) for x in self.col(j)])

    def diag(self) -> tuple:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def trace(self):
        return sum(self.diag())

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return type(self)(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("hstack needs equal row counts")
        cls = _result_type(self, other)
        return cls(self.rows, self.cols + other.cols,
                   [x for i in range(self.rows) for x in self.row(i) + other.row(i)])

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch("vstack needs equal column counts")
        cls = _result_type(self, other)
        return cls(self.rows + other.rows, self.cols, self.entries + other.entries)

    def __eq__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"{type(self).__name__}.from_rows({self.tolist()!r})"

    def __str__(self):
        cells = [[str(x) for x in self.row(i)] for i in range(self.rows)]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    def __neg__(self):
        return type(self)(self.rows, self.cols, [-x for x in self.entries])

    def __add__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        cls = _result_type(self, other)
        return cls(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, _Matrix):
            return NotImplemented
        cls = RatMatrix if isinstance(scalar, Fraction) and scalar.denominator != 1 else type(self)
        return cls(self.rows, self.cols, [x * scalar for x in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cls = _result_type(self, other)
        ocols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in ocols)
        return cls(self.rows, other.cols, out)


def _result_type(a, b):
    return RatMatrix if isinstance(a, RatMatrix) or isinstance(b, RatMatrix) else IntMatrix


class IntMatrix(_Matrix):
    """Immutable dense matrix of arbitrary-precision integers, row-major."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        if hasattr(x, "__index__"):
            return x.__index__()
        raise TypeError(f"non-integer entry {x!r}")

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def rank(self) -> int:
        return len(elementary_divisors(self))

    def to_rational(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, self.entries)

    def is_unimodular(self) -> bool:
        return self.is_square() and abs(self.det()) == 1


class RatMatrix(_Matrix):
    """Immutable dense matrix of exact rationals (always in lowest terms)."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, float):
            raise TypeError("floats are not accepted in exact matrices")
        return Fraction(x)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def to_integer(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return IntMatrix(self.rows, self.cols, [x.numerator for x in self.entries])

    def common_denominator(self) -> int:
        d = 1
        for x in self.entries:
            d = d * x.denominator // gcd(d, x.denominator)
        return d

    def det(self) -> Fraction:
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        m = self.tolist()
        n = self.rows
        det = Fraction(1)
        for k in range(n):
            p = next((i for i in range(k, n) if m[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            if p != k:
                m[k], m[p] = m[p], m[k]
                det = -det
            det *= m[k][k]
            inv = 1 / m[k][k]
            for i in range(k + 1, n):
                f = m[i][k] * inv
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], m[k])]
        return det


def as_rational(a) -> RatMatrix:
    return a if isinstance(a, RatMatrix) else RatMatrix(a.rows, a.cols, a.entries)


@dataclass(frozen=True)
class SnfResult:
    """``u @ a @ v == d`` with ``u``, ``v`` unimodular and ``d`` in Smith form."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return self.d.diag()

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def smith_normal_form(a: IntMatrix) -> SnfResult:
    """Smith normal form with unimodular transforms.

    Pivots on the entry of least absolute value in the remaining block, which
    keeps intermediate coefficients small on the matrices we care about.
    """
    m, n = a.rows, a.cols
    d = a.tolist()
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        d[i], d[k] = d[k], d[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for r in d:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    def add_row(src, dst, q):  # row dst += q * row src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        for r in d:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = d[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = d[t][t]
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    if d[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    if d[t][j]:
                        clean = False
            if not clean:
                continue
            # divisibility: fold an offending row into row t and go again
            bad = next((i for i in range(t + 1, m)
                        if any(x % p for x in d[i][t + 1:])), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if t < m and t < n and d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return SnfResult(IntMatrix.from_rows(u) if m else IntMatrix.zeros(0, 0),
                     IntMatrix(m, n, [x for r in d for x in r]),
                     IntMatrix.from_rows(v) if n else IntMatrix.zeros(0, 0))


def elementary_divisors(a: IntMatrix) -> list[int]:
    """Nonzero Smith invariants of ``a`` in divisibility order."""
    return [x for x in smith_normal_form(a).diagonal if x]


def integer_kernel_basis(a: IntMatrix) -> IntMatrix:
    """Rows spanning ``{x in Z^n : a x = 0}`` as a saturated lattice.

    The kernel is read off the column transform of the Smith form, so no
    denominators are ever cleared. A full-column-rank input gives a 0-row
    matrix.
    """
    snf = smith_normal_form(a)
    r = snf.rank
    n = a.cols
    rows = [list(snf.v.col(j)) for j in range(r, n)]
    return IntMatrix(len(rows), n, [x for row in rows for x in row])


def solve_integral(a: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """An integer ``x`` with ``a @ x == b``, or ``None`` if there is none."""
    if a.rows != b.rows:
        raise DimensionMismatch("solve_integral: row counts differ")
    snf = smith_normal_form(a)
    ub = snf.u @ b
    diag = snf.diagonal
    y = [[0] * b.cols for _ in range(a.cols)]
    for i in range(a.rows):
        dii = diag[i] if i < len(diag) else 0
        for j in range(b.cols):
            rhs = ub[i, j]
            if dii == 0:
                if rhs:
                    return None
            elif rhs % dii:
                return None
            else:
                y[i][j] = rhs // dii
    if a.cols == 0:
        return IntMatrix.zeros(0, b.cols)
    return snf.v @ IntMatrix(a.cols, b.cols, [x for r in y for x in r])


def complete_to_unimodular(x: Sequence[int]) -> IntMatrix:
    """Unimodular matrix whose first column is the primitive vector ``x``."""
    col = IntMatrix(len(x), 1, x)
    snf = smith_normal_form(col)
    if snf.d[0, 0] != 1:
        raise ValueError(f"{list(x)} is not primitive")
    w = rat_inverse(snf.u.to_rational()).to_integer()
    # u x v = e1, v = (+-1)  =>  x = w e1 v
    s = snf.v[0, 0]
    return IntMatrix.from_columns([[s * c for c in w.col(0)]] +
                                  [list(w.col(j)) for j in range(1, w.cols)])


def same_lattice(a: IntMatrix, b: IntMatrix) -> bool:
    """True iff the columns of ``a`` and ``b`` span the same Z-lattice."""
    if a.rows != b.rows:
        return False
    return solve_integral(a, b) is not None and solve_integral(b, a) is not None


def row_lattice_basis(gens: IntMatrix) -> IntMatrix:
    """A basis (as rows) of the Z-lattice generated by the rows of ``gens``."""
    snf = smith_normal_form(gens)
    vinv = rat_inverse(snf.v.to_rational()).to_integer()
    rows = [[d * x for x in vinv.row(i)] for i, d in enumerate(snf.diagonal) if d]
    return IntMatrix(len(rows), gens.cols, [x for r in rows for x in r])


def rat_inverse(a) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination over Q."""
    if not a.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    n = a.rows
    m = [list(as_rational(a).row(i)) + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        m[k], m[p] = m[p], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return RatMatrix(n, n, [x for r in m for x in r[n:]])
