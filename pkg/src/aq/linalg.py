"""Exact rational linear algebra: rank, null space, image membership.

Plain dense Gaussian elimination over `fractions.Fraction`.  Pivots are
always the first nonzero entry in column order, so echelon forms, kernels
and solutions are deterministic and reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        assert len(self.entries) == self.rows
        assert all(len(r) == self.cols for r in self.entries)

    @staticmethod
    def from_rows(rows: Sequence[Sequence[object]]) -> "RationalMatrix":
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        ncols = len(data[0]) if data else 0
        return RationalMatrix(len(data), ncols, data)

    @staticmethod
    def from_columns(cols: Sequence[Sequence[object]], nrows: int) -> "RationalMatrix":
        data = tuple(
            tuple(Fraction(col[i]) for col in cols) for i in range(nrows)
        )
        return RationalMatrix(nrows, len(cols), data)

    @staticmethod
    def zero(rows: int, cols: int) -> "RationalMatrix":
        return RationalMatrix(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    def mul_vec(self, v: Sequence[Fraction]) -> list[Fraction]:
        assert len(v) == self.cols
        return [sum((r[j] * v[j] for j in range(self.cols)), Fraction(0)) for r in self.entries]

    def column(self, j: int) -> list[Fraction]:
        return [self.entries[i][j] for i in range(self.rows)]


def rref(M: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = [list(row) for row in M.entries]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        pivot_row = next((i for i in range(r, M.rows) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(M.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(M: RationalMatrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: RationalMatrix) -> list[list[Fraction]]:
    """A basis of the null space; one vector per non-pivot column."""
    a, pivots = rref(M)
    pivot_set = set(pivots)
    free = [c for c in range(M.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -a[r][f]
        basis.append(v)
    return basis


def in_image(M: RationalMatrix, b: Sequence[object]) -> Optional[list[Fraction]]:
    """Solve M*x = b exactly; None when b is not in the column space."""
    bvec = [Fraction(x) for x in b]
    assert len(bvec) == M.rows
    aug = RationalMatrix(
        M.rows,
        M.cols + 1,
        tuple(tuple(list(M.entries[i]) + [bvec[i]]) for i in range(M.rows)),
    )
    a, pivots = rref(aug)
    if M.cols in pivots:
        return None
    x = [Fraction(0)] * M.cols
    for r, p in enumerate(pivots):
        x[p] = a[r][M.cols]
    return x


def reduce_mod_rowspace(
    rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]
) -> list[Fraction]:
    """Canonical coset representative of v modulo the row space of `rows`.

    `rows` must already be in reduced row echelon form; the result has a
    zero in every pivot position, which makes representatives unique.
    """
    out = list(v)
    for row in rows:
        p = next((j for j, x in enumerate(row) if x != 0), None)
        if p is None:
            continue
        f = out[p] / row[p]
        if f:
            out = [x - f * y for x, y in zip(out, row)]
    return out
