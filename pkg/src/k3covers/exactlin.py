"""Exact linear algebra over the integers and the rationals.

Everything here works on Python ints and :class:`fractions.Fraction`;
there is no floating point anywhere.  Matrices are small (at most 17x17
in practice) so plain nested tuples are used as storage.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionError, ShapeError

Rational = Fraction


class IntMatrix:
    """Immutable integer matrix stored row-major."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ShapeError("ragged rows")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], ncols=n)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def block_diagonal(cls, *blocks: "IntMatrix") -> "IntMatrix":
        n = sum(b.nrows for b in blocks)
        out = [[0] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    out[off + i][off + j] = b[i, j]
            off += b.nrows
        return cls(out, ncols=n)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for row in self._rows for x in row)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        r = self._rows
        return all(r[i][j] == r[j][i] for i in range(self.nrows) for j in range(i))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self._rows), ncols=self.nrows) if self.nrows else IntMatrix.zeros(self.ncols, 0)

    T = property(transpose)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows],
            ncols=other.ncols,
        )

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * x for x in row] for row in self._rows], ncols=self.ncols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def to_json(self) -> dict:
        return {"rows": self.nrows, "cols": self.ncols, "entries": self.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "IntMatrix":
        m = cls(obj["entries"], ncols=obj.get("cols"))
        if m.nrows != obj.get("rows", m.nrows) or m.ncols != obj.get("cols", m.ncols):
            raise ShapeError("declared shape does not match entries")
        return m


def as_matrix(a) -> IntMatrix:
    return a if isinstance(a, IntMatrix) else IntMatrix(a)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with U, V unimodular and D in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))


def determinant(A) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    A = as_matrix(A)
    if not A.is_square():
        raise DimensionError(f"determinant of non-square matrix {A.shape}")
    n = A.nrows
    if n == 0:
        return 1
    M = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M, src, dst, q):
    # row_dst += q * row_src
    if q:
        rs, rd = M[src], M[dst]
        for c in range(len(rd)):
            rd[c] += q * rs[c]


def _add_col(M, src, dst, q):
    if q:
        for row in M:
            row[dst] += q * row[src]


def smith_normal_form(A) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivots are always chosen of minimal absolute value in the active
    block, which keeps entry growth modest at the sizes used here.
    """
    A = as_matrix(A)
    m, n = A.shape
    M = A.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = M[i][j]
                    if x and (best is None or abs(x) < abs(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            if i != t:
                _swap_rows(M, i, t)
                _swap_rows(U, i, t)
            if j != t:
                _swap_cols(M, j, t)
                _swap_cols(V, j, t)
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = M[i][t] // p
                _add_row(M, t, i, -q)
                _add_row(U, t, i, -q)
                dirty |= M[i][t] != 0
            for j in range(t + 1, n):
                q = M[t][j] // p
                _add_col(M, t, j, -q)
                _add_col(V, t, j, -q)
                dirty |= M[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            _add_row(M, bad, t, 1)
            _add_row(U, bad, t, 1)
        if t < m and t < n and M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(IntMatrix(U, ncols=m), IntMatrix(M, ncols=n), IntMatrix(V, ncols=n))


def elementary_divisors(A) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith form (including 1s)."""
    return tuple(d for d in smith_normal_form(A).diagonal if d)


def rank(A) -> int:
    return len(elementary_divisors(A))


def inertia(A) -> tuple[int, int, int]:
    """Counts ``(n_plus, n_minus, n_zero)`` of a symmetric integer matrix.

    Uses exact symmetric congruence: a nonzero diagonal pivot contributes
    its sign; if the remaining diagonal vanishes, an off-diagonal 2x2
    hyperbolic block is split off and counted as one of each sign.
    """
    A = as_matrix(A)
    if not A.is_symmetric():
        raise ShapeError("inertia needs a symmetric matrix")
    M = [[Fraction(x) for x in row] for row in A.rows]
    pos = neg = 0
    while M:
        k = len(M)
        piv = next((i for i in range(k) if M[i][i] != 0), None)
        if piv is not None:
            p = M[piv][piv]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(k) if i != piv]
            M = [[M[i][j] - M[i][piv] * M[piv][j] / p for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(k) for j in range(i + 1, k) if M[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        b = M[i][j]
        pos += 1
        neg += 1
        rest = [r for r in range(k) if r not in pair]
        # Schur complement of [[0, b], [b, 0]]; its inverse is [[0, 1/b], [1/b, 0]]
        M = [
            [M[r][s] - (M[r][i] * M[j][s] + M[r][j] * M[i][s]) / b for s in rest]
            for r in rest
        ]
    n = A.nrows
    return (pos, neg, n - pos - neg)


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; returns the nonzero rows only."""
    A = [list(r) for r in rows]
    if not A:
        return []
    m, n = len(A), len(A[0])
    pr = 0
    for col in range(n):
        if pr == m:
            break
        while True:
            nz = [i for i in range(pr, m) if A[i][col]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][col]))
            A[pr], A[i0] = A[i0], A[pr]
            clean = True
            for i in range(pr + 1, m):
                if A[i][col]:
                    _add_row(A, pr, i, -(A[i][col] // A[pr][col]))
                    clean &= A[i][col] == 0
            if clean:
                break
        if not A[pr][col]:
            continue
        if A[pr][col] < 0:
            A[pr] = [-x for x in A[pr]]
        for i in range(pr):
            _add_row(A, pr, i, -(A[i][col] // A[pr][col]))
        pr += 1
    return A[:pr]


def common_denominator(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out


def rational_inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over Q."""
    n = len(rows)
    M = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise DimensionError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [row[n:] for row in M]


def vec_mat(v: Sequence, rows: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    if not rows:
        return []
    return [sum(v[i] * rows[i][j] for i in range(len(rows))) for j in range(len(rows[0]))]


def bilinear(u: Sequence, gram, v: Sequence):
    """``u^T G v`` for rational or integer vectors."""
    G = gram.rows if isinstance(gram, IntMatrix) else gram
    return sum(u[i] * G[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j])


def content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
