"""Dense exact-rational matrices.

Every entry is a ``fractions.Fraction`` (canonical reduced form, positive
denominator) and every operation is exact: nothing is rounded at any step.
Matrices are immutable; all operations return new objects, so values are
safe to share read-only.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError


def _coerce(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"matrix entries must be exact rationals, got {type(x).__name__}")


class RationalMatrix:
    """Immutable dense matrix over the rationals.

    Accepts ints, Fractions and "p/q" strings as entries. Supports ``+``,
    ``-``, ``@`` and scalar ``*``; ``m[i]`` is row ``i`` as a tuple, so
    ``m[i][j]`` reads an entry.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(_coerce(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("rows have unequal lengths")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "RationalMatrix":
        ncols = nrows if ncols is None else ncols
        zero = Fraction(0)
        return cls([[zero] * ncols for _ in range(nrows)])

    @classmethod
    def ones(cls, nrows: int, ncols: int | None = None) -> "RationalMatrix":
        ncols = nrows if ncols is None else ncols
        one = Fraction(1)
        return cls([[one] * ncols for _ in range(nrows)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "RationalMatrix":
        vals = [_coerce(x) for x in values]
        zero = Fraction(0)
        return cls([[vals[i] if i == j else zero for j in range(len(vals))]
                    for i in range(len(vals))])

    # -- basic queries -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    __hash__ = None

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"RationalMatrix({self.nrows}x{self.ncols}: {body})"

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        return all(self.rows[i][j] == self.rows[j][i]
                   for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def max_abs(self) -> Fraction:
        return max(abs(x) for row in self.rows for x in row)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.rows))

    # -- arithmetic --------------------------------------------------------

    def _check_same_shape(self, other: "RationalMatrix"):
        if self.shape != other.shape:
            raise InputError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same_shape(other)
        return RationalMatrix([[a + b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same_shape(other)
        return RationalMatrix([[a - b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([[-x for x in row] for row in self.rows])

    def __mul__(self, scalar) -> "RationalMatrix":
        c = _coerce(scalar)
        return RationalMatrix([[c * x for x in row] for row in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        cols = tuple(zip(*other.rows))
        return RationalMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols]
             for row in self.rows]
        )


def inner_product(m: RationalMatrix, n: RationalMatrix) -> Fraction:
    """Frobenius inner product: tr(m^T n), equal to the entrywise-product sum."""
    if m.shape != n.shape:
        raise InputError(f"inner product needs equal shapes, got {m.shape} and {n.shape}")
    return sum((a * b for r1, r2 in zip(m.rows, n.rows) for a, b in zip(r1, r2)),
               Fraction(0))


def rref(m: RationalMatrix) -> tuple[RationalMatrix, int, tuple[int, ...]]:
    """Exact reduced row-echelon form: (reduced matrix, rank, pivot columns)."""
    work = [list(row) for row in m.rows]
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return RationalMatrix(work), r, tuple(pivots)


def rank(m: RationalMatrix) -> int:
    return rref(m)[1]


def nullspace(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of {z : m z = 0}, one tuple per basis vector (may be empty)."""
    reduced, rk, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * m.ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(tuple(vec))
    return basis


def inverse(m: RationalMatrix) -> RationalMatrix:
    """Exact inverse; raises InputError if the matrix is singular."""
    if not m.is_square:
        raise InputError("only square matrices can be inverted")
    n = m.nrows
    aug = RationalMatrix([list(row) + [Fraction(int(i == j)) for j in range(n)]
                          for i, row in enumerate(m.rows)])
    reduced, rk, _ = rref(aug)
    if rk < n or any(reduced[i][i] != 1 for i in range(n)):
        raise InputError("matrix is singular")
    return RationalMatrix([row[n:] for row in reduced.rows])


def column_space_projector(h: RationalMatrix) -> RationalMatrix:
    """Orthogonal projector onto the column space of ``h``: H (H^T H)^-1 H^T.

    Requires full column rank. The result F satisfies F^2 = F, F^T = F and
    F H = H exactly.
    """
    ht = h.transpose()
    gram = ht @ h
    try:
        gram_inv = inverse(gram)
    except InputError:
        raise InputError("projector needs a matrix of full column rank") from None
    return h @ gram_inv @ ht
