"""Integer Seifert matrices presenting knots.

A Seifert matrix here is any square integer matrix V of even size 2g with
det(V - V^T) = +/-1; that condition singles out matrices presenting a knot
rather than a multi-component link.  The empty 0x0 matrix presents the
unknot.  Mirroring replaces V by -V^T and connected sum is block sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class SeifertMatrixError(ValueError):
    pass


def _det_int(rows: list[list[int]]) -> int:
    """Determinant of an integer matrix, exactly (fraction-free enough)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    assert det.denominator == 1
    return int(det)


@dataclass(frozen=True)
class SeifertMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise SeifertMatrixError("Seifert matrix must be square")
            for x in row:
                if not isinstance(x, int):
                    raise SeifertMatrixError("Seifert matrix entries must be integers")
        if n % 2 != 0:
            raise SeifertMatrixError(f"Seifert matrix must have even size, got {n}")
        if n > 0:
            skew = [
                [self.rows[i][j] - self.rows[j][i] for j in range(n)] for i in range(n)
            ]
            d = _det_int(skew)
            if d not in (1, -1):
                raise SeifertMatrixError(
                    f"det(V - V^T) = {d}, expected +/-1 (matrix does not present a knot)"
                )

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "SeifertMatrix":
        def as_int(x):
            if isinstance(x, bool) or not isinstance(x, int):
                raise SeifertMatrixError(f"Seifert matrix entries must be integers, got {x!r}")
            return x

        return SeifertMatrix(tuple(tuple(as_int(x) for x in row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def genus(self) -> int:
        return self.size // 2

    def transpose(self) -> "SeifertMatrix":
        n = self.size
        return SeifertMatrix(tuple(tuple(self.rows[j][i] for j in range(n)) for i in range(n)))

    def mirror(self) -> "SeifertMatrix":
        """Seifert matrix -V^T of the mirror knot."""
        n = self.size
        return SeifertMatrix(tuple(tuple(-self.rows[j][i] for j in range(n)) for i in range(n)))

    def block_sum(self, other: "SeifertMatrix") -> "SeifertMatrix":
        """Block sum, presenting the connected sum of the two knots."""
        n, m = self.size, other.size
        rows = []
        for i in range(n):
            rows.append(tuple(self.rows[i]) + (0,) * m)
        for i in range(m):
            rows.append((0,) * n + tuple(other.rows[i]))
        return SeifertMatrix(tuple(rows))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


UNKNOT_MATRIX = SeifertMatrix(())


def two_strand_torus_matrix(k: int) -> SeifertMatrix:
    """Standard genus-(k-1)/2 Seifert matrix of the positive torus knot T(2,k).

    Band presentation: -1 on the diagonal, +1 on the superdiagonal.  For
    k = 3 this is [[-1, 1], [0, -1]], the positive trefoil with signature -2.
    """
    if k < 3 or k % 2 == 0:
        raise SeifertMatrixError(f"T(2,{k}) is not a knot with genus >= 1")
    n = k - 1
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = -1
        if i + 1 < n:
            row[i + 1] = 1
        rows.append(tuple(row))
    return SeifertMatrix(tuple(rows))
