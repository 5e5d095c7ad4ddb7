"""Exact rational scalars, plane points, and dense exact linear algebra.

Every decision made by this package runs on `Frac` (an alias of
`fractions.Fraction`): arithmetic is exact, values are kept in canonical
reduced form, and equality/ordering/hashing agree with the represented
rational.  Floating point never enters any decision path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Frac = Fraction

ZERO = Frac(0)
ONE = Frac(1)


def frac_reduce(n: int, d: int) -> Frac:
    """Canonical reduced rational n/d.  Raises ZeroDivisionError when d = 0."""
    return Frac(n, d)


@dataclass(frozen=True)
class QPoint:
    """A point of the rational plane with exact componentwise arithmetic."""

    x: Frac
    y: Frac

    def __add__(self, other: "QPoint") -> "QPoint":
        return QPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "QPoint") -> "QPoint":
        return QPoint(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "QPoint":
        return QPoint(-self.x, -self.y)

    def scale(self, c: Frac) -> "QPoint":
        return QPoint(self.x * c, self.y * c)

    def frac(self) -> "QPoint":
        """Componentwise reduction mod 1; the result lies in [0,1)^2."""
        return QPoint(self.x - self.x.__floor__(), self.y - self.y.__floor__())

    def __iter__(self):
        return iter((self.x, self.y))

    def __repr__(self) -> str:
        return f"({self.x}, {self.y})"


def qpoint(x, y) -> QPoint:
    """QPoint from anything Fraction accepts ('1/2', 2, Fraction(1,3), ...)."""
    return QPoint(Frac(x), Frac(y))


@dataclass(frozen=True)
class QMatrix:
    """A dense rectangular matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple

    @staticmethod
    def from_rows(rows: Iterable[Sequence]) -> "QMatrix":
        data = tuple(tuple(Frac(e) for e in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return QMatrix(nrows, ncols, data)

    def mulvec(self, v: Sequence[Frac]) -> list:
        return [sum(r[j] * v[j] for j in range(self.cols)) for r in self.entries]


def _rref(rows: list[list[Frac]], ncols: int, col_order: Sequence[int]) -> tuple[list[list[Frac]], list[int]]:
    """Reduced row echelon form over Q, pivoting along `col_order` with the
    first nonzero entry in each column.  Returns (reduced rows, pivot columns).

    Deterministic by construction: same input always yields the same echelon
    basis, so kernel bases (and the certificates built from them) are
    reproducible across runs.
    """
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    piv_rows: list[list[Frac]] = []
    for c in col_order:
        src = None
        for i, r in enumerate(rows):
            if r[c] != 0:
                src = i
                break
        if src is None:
            continue
        piv = rows.pop(src)
        inv = piv[c]
        piv = [e / inv for e in piv]
        for r in rows:
            f = r[c]
            if f:
                for j in range(ncols):
                    if piv[j]:
                        r[j] -= f * piv[j]
        for r in piv_rows:
            f = r[c]
            if f:
                for j in range(ncols):
                    if piv[j]:
                        r[j] -= f * piv[j]
        rows = [r for r in rows if any(e != 0 for e in r)]
        piv_rows.append(piv)
        pivots.append(c)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [piv_rows[i] for i in order], sorted(pivots)


def kernel_basis(m: QMatrix | Sequence[Sequence]) -> list[list[Frac]]:
    """Basis of the null space of m, by exact elimination.

    Empty list iff m has full column rank.  Each basis vector sets one free
    variable to 1 and the remaining free variables to 0, in increasing column
    order.
    """
    if not isinstance(m, QMatrix):
        m = QMatrix.from_rows(m)
    piv_rows, pivots = _rref([list(r) for r in m.entries], m.cols, range(m.cols))
    piv_set = set(pivots)
    free = [c for c in range(m.cols) if c not in piv_set]
    basis = []
    for fcol in free:
        v = [ZERO] * m.cols
        v[fcol] = ONE
        for prow, pcol in zip(piv_rows, pivots):
            v[pcol] = -prow[fcol]
        basis.append(v)
    return basis


def rank(m: QMatrix | Sequence[Sequence]) -> int:
    """Rank via the same elimination that backs kernel_basis."""
    if not isinstance(m, QMatrix):
        m = QMatrix.from_rows(m)
    _, pivots = _rref([list(r) for r in m.entries], m.cols, range(m.cols))
    return len(pivots)


def rank_alt(m: QMatrix | Sequence[Sequence]) -> int:
    """Independently ordered exact rank computation, used as an oracle.

    Pivots along columns in reverse and prefers the last candidate row with
    the largest absolute entry, so the elimination path is genuinely
    different from kernel_basis/rank.
    """
    if not isinstance(m, QMatrix):
        m = QMatrix.from_rows(m)
    rows = [list(r) for r in m.entries]
    r = 0
    for c in reversed(range(m.cols)):
        best = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0 and (best is None or abs(rows[i][c]) >= abs(rows[best][c])):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / piv[c]
                rows[i] = [a - f * b for a, b in zip(rows[i], piv)]
        r += 1
        if r == len(rows):
            break
    return r
