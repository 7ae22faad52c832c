"""Exact integer linear algebra on arbitrary-precision ints.

Everything in this module is fraction-free: no floats, no rationals.
Division only happens where an identity guarantees exactness, and each
such site asserts the remainder is zero rather than rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DimensionMismatchError, NonSquareError, ZeroVectorError

Vector = tuple[int, ...]


def _check_int(x: object) -> int:
    # bool is an int subclass; reject it so True never sneaks in as 1.
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"matrix entries must be int, got {type(x).__name__}")
    return x


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular integer matrix.

    Rows are stored as tuples; construction validates that the grid is
    nonempty and rectangular and that every entry is a plain int.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        grid = tuple(tuple(_check_int(x) for x in row) for row in self.entries)
        if not grid or not grid[0]:
            raise DimensionMismatchError("matrix needs at least one row and one column")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise DimensionMismatchError("matrix rows have unequal lengths")
        object.__setattr__(self, "entries", grid)

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols = other.transpose().entries
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.entries
            )
        )


@dataclass(frozen=True)
class SnfResult:
    """Diagonalization u @ m @ v == d with unimodular u, v.

    d is diagonal with nonnegative entries forming a divisibility chain;
    invariant_factors lists the nonzero diagonal entries in order.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    invariant_factors: tuple[int, ...]


def _least_nonzero(a: list[list[int]], t: int) -> tuple[int, int] | None:
    """Position of the smallest-magnitude nonzero entry of a[t:][t:].

    Ties break to the lexicographically first (row, col), which keeps the
    whole reduction deterministic.
    """
    best: tuple[int, int] | None = None
    best_abs = 0
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            x = a[i][j]
            if x != 0 and (best is None or abs(x) < best_abs):
                best = (i, j)
                best_abs = abs(x)
    return best


def _nondivisible_row(a: list[list[int]], t: int) -> int | None:
    """Row index i > t holding an entry of a[t+1:][t+1:] not divisible by a[t][t]."""
    p = a[t][t]
    for i in range(t + 1, len(a)):
        for j in range(t + 1, len(a[0])):
            if a[i][j] % p != 0:
                return i
    return None


def snf(m: IntMatrix) -> SnfResult:
    """Smith normal form with both transform matrices.

    The pivot at each stage is the smallest-magnitude nonzero entry of the
    remaining block (lex-first on ties), reduced by floored division, so
    the pivot magnitude strictly decreases until the column and row are
    clear.  When a remaining entry is not divisible by the pivot, its row
    is added to the pivot row and reduction resumes.  The procedure is
    fully deterministic: identical input yields identical u, d, v.
    """
    a = [list(row) for row in m.entries]
    nr, nc = m.rows, m.cols
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, q: int) -> None:
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, q: int) -> None:
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    limit = min(nr, nc)
    while t < limit:
        pos = _least_nonzero(a, t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        p = a[t][t]
        for i in range(t + 1, nr):
            if a[i][t] != 0:
                add_row(t, i, -(a[i][t] // p))
        for j in range(t + 1, nc):
            if a[t][j] != 0:
                add_col(t, j, -(a[t][j] // p))
        # Floored division leaves remainders in [0, p); any survivor is a
        # strictly smaller pivot candidate, so loop back for it.
        if any(a[i][t] for i in range(t + 1, nr)) or any(
            a[t][j] for j in range(t + 1, nc)
        ):
            continue
        bad = _nondivisible_row(a, t)
        if bad is not None:
            add_row(bad, t, 1)
            continue
        t += 1

    d = IntMatrix.from_rows(a)
    factors = tuple(a[i][i] for i in range(limit) if a[i][i] != 0)
    return SnfResult(
        u=IntMatrix.from_rows(u),
        d=d,
        v=IntMatrix.from_rows(v),
        invariant_factors=factors,
    )


def det(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise NonSquareError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            for i in range(t + 1, n):
                if a[i][t] != 0:
                    a[t], a[i] = a[i], a[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                num = a[i][j] * a[t][t] - a[i][t] * a[t][j]
                q, r = divmod(num, prev)
                if r:
                    raise AssertionError("fraction-free step lost exactness")
                a[i][j] = q
            a[i][t] = 0
        prev = a[t][t]
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix) -> int:
    """Rank over the rationals, computed without leaving the integers."""
    a = [list(row) for row in m.entries]
    nr, nc = m.rows, m.cols
    prev = 1
    r = 0
    for col in range(nc):
        if r == nr:
            break
        pivot_row = next((i for i in range(r, nr) if a[i][col] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        for i in range(r + 1, nr):
            for j in range(col + 1, nc):
                num = a[i][j] * a[r][col] - a[i][col] * a[r][j]
                q, rem = divmod(num, prev)
                if rem:
                    raise AssertionError("fraction-free step lost exactness")
                a[i][j] = q
            a[i][col] = 0
        prev = a[r][col]
        r += 1
    return r


def kernel_basis(m: IntMatrix) -> tuple[Vector, ...]:
    """Basis of the integer kernel {x : m @ x == 0}, possibly empty.

    The returned vectors are the trailing columns of the Smith normal form
    right transform, so they generate the full kernel lattice, not just a
    finite-index sublattice.
    """
    res = snf(m)
    r = len(res.invariant_factors)
    return tuple(res.v.column(j) for j in range(r, m.cols))


def adjugate(m: IntMatrix) -> IntMatrix:
    """Adjugate matrix: m @ adjugate(m) == det(m) * identity."""
    if m.rows != m.cols:
        raise NonSquareError(f"adjugate needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    if n == 1:
        return IntMatrix.from_rows([[1]])
    grid = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = IntMatrix.from_rows(
                [
                    [m.entries[r][c] for c in range(n) if c != i]
                    for r in range(n)
                    if r != j
                ]
            )
            row.append((-1) ** (i + j) * det(minor))
        grid.append(row)
    return IntMatrix.from_rows(grid)


def primitivize(v) -> Vector:
    """Divide a nonzero integer vector by the gcd of its entries."""
    vec = tuple(_check_int(x) for x in v)
    g = math.gcd(*vec) if vec else 0
    if g == 0:
        raise ZeroVectorError("zero vector has no primitive representative")
    return tuple(x // g for x in vec)


def extends_to_z_basis(vectors, ambient_rank: int) -> bool:
    """Whether the given integer vectors extend to a basis of the full lattice.

    True exactly when the vectors are independent and the lattice they span
    is saturated, i.e. every Smith invariant factor equals 1.
    """
    vecs = tuple(tuple(row) for row in vectors)
    for vec in vecs:
        if len(vec) != ambient_rank:
            raise DimensionMismatchError(
                f"expected vectors of length {ambient_rank}, got {len(vec)}"
            )
    if not vecs:
        return True
    if len(vecs) > ambient_rank:
        return False
    res = snf(IntMatrix.from_rows(vecs))
    return len(res.invariant_factors) == len(vecs) and all(
        f == 1 for f in res.invariant_factors
    )
