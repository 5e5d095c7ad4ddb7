"""Continuous piecewise linear functions over the standard triangulation,
periodic modulo the integer lattice.

A function is stored as its exact rational values on the (1/q)-grid of the
fundamental square; evaluation anywhere is barycentric interpolation on the
triangle found by point classification, after reduction mod 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .errors import FNotVertex
from .rational import Frac, QPoint

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class DeltaValue:
    """A subadditivity slack sample: value = pi(x) + pi(y) - pi(x+y)."""

    x: QPoint
    y: QPoint
    value: Frac


class PwlFunction:
    """Values on the (1/q)Z^2 grid of [0,1)^2, extended periodically and by
    interpolation on the triangulation."""

    __slots__ = ("q", "f", "_vals")

    def __init__(self, q: int, f: QPoint, values):
        if q < 1:
            raise ValueError("q must be positive")
        self.q = q
        self.f = f
        vals = [[Frac(values[a][b]) for b in range(q)] for a in range(q)]
        self._vals = vals

    @staticmethod
    def from_grid(q: int, f_numerators: tuple[int, int], values) -> "PwlFunction":
        f = QPoint(Frac(f_numerators[0], q), Frac(f_numerators[1], q))
        return PwlFunction(q, f, values)

    def grid_value(self, a: int, b: int) -> Frac:
        """Value at the grid point (a/q, b/q); indices taken mod q."""
        return self._vals[a % self.q][b % self.q]

    def grid_items(self):
        for a in range(self.q):
            for b in range(self.q):
                yield (a, b), self._vals[a][b]

    def eval(self, p: QPoint) -> Frac:
        pn = p.frac()
        gx = pn.x * self.q
        gy = pn.y * self.q
        a = gx.__floor__()
        b = gy.__floor__()
        fx = gx - a
        fy = gy - b
        v00 = self.grid_value(a, b)
        v10 = self.grid_value(a + 1, b)
        v01 = self.grid_value(a, b + 1)
        if fx + fy <= 1:
            return v00 + fx * (v10 - v00) + fy * (v01 - v00)
        v11 = self.grid_value(a + 1, b + 1)
        return v11 * (fx + fy - 1) + v10 * (1 - fy) + v01 * (1 - fx)

    def delta(self, x: QPoint, y: QPoint) -> Frac:
        """Subadditivity slack pi(x) + pi(y) - pi(x+y); symmetric and
        invariant under integer translation of either argument."""
        return self.eval(x) + self.eval(y) - self.eval(x + y)

    def delta_sample(self, x: QPoint, y: QPoint) -> DeltaValue:
        return DeltaValue(x, y, self.delta(x, y))

    def delta_grid(self, ax: int, ay: int, bx: int, by: int) -> Frac:
        """delta at grid points (ax/q, ay/q), (bx/q, by/q)."""
        return (self.grid_value(ax, ay) + self.grid_value(bx, by)
                - self.grid_value(ax + bx, ay + by))

    def refine(self, m: int) -> "PwlFunction":
        """The same function re-sampled over the m-fold finer grid."""
        if m < 1:
            raise ValueError("m must be at least 1")
        if m == 1:
            return self
        q2 = m * self.q
        vals = [[None] * q2 for _ in range(q2)]
        for a in range(q2):
            for b in range(q2):
                vals[a][b] = self.eval(QPoint(Frac(a, q2), Frac(b, q2)))
        return PwlFunction(q2, self.f, vals)

    def combine(self, other: "PwlFunction", coef: Frac) -> "PwlFunction":
        """Pointwise self + coef * other (grids must match)."""
        if other.q != self.q:
            raise ValueError("mismatched grids")
        q = self.q
        vals = [[self._vals[a][b] + coef * other._vals[a][b] for b in range(q)]
                for a in range(q)]
        return PwlFunction(q, self.f, vals)

    def is_zero(self) -> bool:
        return all(v == 0 for _, v in self.grid_items())

    def __eq__(self, other):
        return (isinstance(other, PwlFunction) and self.q == other.q
                and self.f == other.f and self._vals == other._vals)

    def __hash__(self):
        return hash((self.q, self.f, tuple(tuple(r) for r in self._vals)))

    def __repr__(self):
        return f"PwlFunction(q={self.q}, f={self.f})"

    def to_json_dict(self) -> dict:
        fq = (self.f.x * self.q, self.f.y * self.q)
        if fq[0].denominator != 1 or fq[1].denominator != 1:
            raise ValueError("f is not representable on the 1/q grid")
        return {
            "schema": SCHEMA_VERSION,
            "q": self.q,
            "f": [int(fq[0]), int(fq[1])],
            "values": [[str(v) for v in row] for row in self._vals],
        }


def require_f_vertex(pi: PwlFunction) -> None:
    """Check f in verts(P_q) and f outside the lattice; raise FNotVertex otherwise."""
    fx = pi.f.x * pi.q
    fy = pi.f.y * pi.q
    if fx.denominator != 1 or fy.denominator != 1:
        raise FNotVertex(f"f = {pi.f} is not on the 1/{pi.q} grid")
    if pi.f.frac() == QPoint(Frac(0), Frac(0)):
        raise FNotVertex("f is an integer vector; it must lie outside the lattice")


_ORIGIN_TRIANGLES = (
    # other two vertices of each triangle incident to the origin, grid units
    ((1, 0), (0, 1)),
    ((-1, 0), (-1, 1)),
    ((0, -1), (1, -1)),
    ((0, -1), (-1, 0)),
    ((-1, 1), (0, 1)),
    ((1, -1), (1, 0)),
)


def is_genuinely_2d(pi: PwlFunction):
    """Decide whether the function can factor through a line.

    Returns (True, None), or (False, r) with a primitive integer direction r
    along which the function vanishes on a segment out of the origin.  The
    test inspects the six triangles incident to the origin: the function is
    degenerate exactly when one of them carries a gradient whose kernel meets
    the triangle's tangent cone at the origin (subadditivity and periodicity
    then propagate the vanishing direction globally).
    """
    if pi.grid_value(0, 0) != 0:
        raise ValueError("predicate requires pi(0) = 0")
    for w1, w2 in _ORIGIN_TRIANGLES:
        p1 = pi.grid_value(w1[0], w1[1])
        p2 = pi.grid_value(w2[0], w2[1])
        det = w1[0] * w2[1] - w1[1] * w2[0]
        # gradient c solves c . wi / q = pi(wi/q)
        cx = Frac(pi.q) * (p1 * w2[1] - p2 * w1[1]) / det
        cy = Frac(pi.q) * (p2 * w1[0] - p1 * w2[0]) / det
        if cx == 0 and cy == 0:
            r = (w1[0] + w2[0], w1[1] + w2[1])
            return False, _primitive(r)
        # kernel direction of c, tested against the cone spanned by w1, w2
        for r0 in ((-cy, cx), (cy, -cx)):
            alpha = (r0[0] * w2[1] - r0[1] * w2[0]) / det
            beta = (w1[0] * r0[1] - w1[1] * r0[0]) / det
            if alpha >= 0 and beta >= 0 and (alpha != 0 or beta != 0):
                return False, _primitive_frac(r0)
    return True, None


def _primitive(r: tuple[int, int]) -> tuple[int, int]:
    g = gcd(abs(r[0]), abs(r[1]))
    return (r[0] // g, r[1] // g)


def _primitive_frac(r) -> tuple[int, int]:
    d = (r[0].denominator * r[1].denominator) // gcd(r[0].denominator, r[1].denominator)
    return _primitive((int(r[0] * d), int(r[1] * d)))


def load_function(path) -> PwlFunction:
    """Read a function from its JSON file format."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return function_from_dict(doc)


def function_from_dict(doc: dict) -> PwlFunction:
    if doc.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema: {doc.get('schema')!r}")
    q = doc["q"]
    if not isinstance(q, int) or q < 1:
        raise ValueError("q must be a positive integer")
    f = doc["f"]
    if (not isinstance(f, list) or len(f) != 2
            or not all(isinstance(c, int) for c in f)):
        raise ValueError("f must be a pair of integer numerators over q")
    values = doc["values"]
    if len(values) != q or any(len(row) != q for row in values):
        raise ValueError(f"values must be a full {q}x{q} grid")
    grid = [[Frac(v) for v in row] for row in values]
    return PwlFunction.from_grid(q, (f[0], f[1]), grid)


def dump_function(pi: PwlFunction, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(pi.to_json_dict(), fh, indent=1, sort_keys=True)
        fh.write("\n")
