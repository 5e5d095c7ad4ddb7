"""The standard triangulation of the plane by lattice squares cut along the
slope -1 diagonal, periodic modulo the integer lattice.

Faces are encoded by a kind plus an integer anchor measured in grid units of
1/q, so all geometric predicates here run on plain integers.  The six-row
inequality description A x <= b (rows x1, -x1, x2, -x2, x1+x2, -x1-x2) is
totally unimodular for this triangulation, which makes Minkowski sums and
negations of faces again unions of faces; both are computed through tight
b-vectors and exact enumeration.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .rational import Frac, QPoint


class FaceKind(enum.Enum):
    VERTEX = "vertex"
    EDGE_H = "edge_h"
    EDGE_V = "edge_v"
    EDGE_D = "edge_d"
    TRI_LOWER = "tri_lower"
    TRI_UPPER = "tri_upper"

    def __lt__(self, other):
        if isinstance(other, FaceKind):
            return self.value < other.value
        return NotImplemented


_VERT_OFFSETS = {
    FaceKind.VERTEX: ((0, 0),),
    FaceKind.EDGE_H: ((0, 0), (1, 0)),
    FaceKind.EDGE_V: ((0, 0), (0, 1)),
    FaceKind.EDGE_D: ((1, 0), (0, 1)),
    FaceKind.TRI_LOWER: ((0, 0), (1, 0), (0, 1)),
    FaceKind.TRI_UPPER: ((1, 0), (0, 1), (1, 1)),
}

_DIM = {
    FaceKind.VERTEX: 0,
    FaceKind.EDGE_H: 1,
    FaceKind.EDGE_V: 1,
    FaceKind.EDGE_D: 1,
    FaceKind.TRI_LOWER: 2,
    FaceKind.TRI_UPPER: 2,
}

EDGE_KINDS = frozenset({FaceKind.EDGE_H, FaceKind.EDGE_V, FaceKind.EDGE_D})
TRI_KINDS = frozenset({FaceKind.TRI_LOWER, FaceKind.TRI_UPPER})
POINT_DIAG_KINDS = frozenset({FaceKind.VERTEX, FaceKind.EDGE_D})


@dataclass(frozen=True, order=True)
class FaceId:
    """A face of the triangulation: kind plus anchor (a, b) for the point
    (a/q, b/q).  Anchors may sit anywhere in the plane; `normalized` gives the
    canonical translate with anchor in {0,...,q-1}^2."""

    kind: FaceKind
    anchor: tuple[int, int]
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")

    @property
    def dim(self) -> int:
        return _DIM[self.kind]

    def vertices(self) -> tuple[tuple[int, int], ...]:
        """Vertex set in grid units of 1/q."""
        a, b = self.anchor
        return tuple((a + da, b + db) for da, db in _VERT_OFFSETS[self.kind])

    def normalized(self) -> "FaceId":
        a, b = self.anchor
        return FaceId(self.kind, (a % self.q, b % self.q), self.q)

    def translated(self, da: int, db: int) -> "FaceId":
        a, b = self.anchor
        return FaceId(self.kind, (a + da, b + db), self.q)

    def barycenter(self) -> QPoint:
        """A relative-interior point (the vertex average), in real coordinates."""
        vs = self.vertices()
        n = len(vs)
        sx = sum(v[0] for v in vs)
        sy = sum(v[1] for v in vs)
        return QPoint(Frac(sx, n * self.q), Frac(sy, n * self.q))

    def __repr__(self) -> str:
        return f"{self.kind.value}{self.anchor}"


class FaceSet:
    """An ordered, deduplicated collection of faces (a union of faces)."""

    def __init__(self, faces=()):
        seen = set()
        items = []
        for f in faces:
            if f not in seen:
                seen.add(f)
                items.append(f)
        self.faces = sorted(items, key=lambda f: (-f.dim, f.kind.value, f.anchor))

    def __iter__(self):
        return iter(self.faces)

    def __len__(self):
        return len(self.faces)

    def __contains__(self, face):
        return face in set(self.faces)

    def maximal(self) -> list[FaceId]:
        """Inclusion-maximal members."""
        out = []
        for f in self.faces:
            fv = set(f.vertices())
            if not any(g.dim > f.dim and fv <= set(g.vertices()) for g in self.faces):
                out.append(f)
        return out

    def normalized(self) -> "FaceSet":
        return FaceSet(f.normalized() for f in self.faces)

    def __repr__(self):
        return f"FaceSet({self.faces})"


# b-vector rows: x1 <= b0, -x1 <= b1, x2 <= b2, -x2 <= b3, x1+x2 <= b4, -x1-x2 <= b5,
# all in grid units (so real right-hand sides are these divided by q).

def bvec(face: FaceId) -> tuple[int, ...]:
    """Tight integer b-vector of a face, in grid units."""
    vs = face.vertices()
    xs = [v[0] for v in vs]
    ys = [v[1] for v in vs]
    ss = [v[0] + v[1] for v in vs]
    return (max(xs), -min(xs), max(ys), -min(ys), max(ss), -min(ss))


def bvec_add(b1: tuple[int, ...], b2: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(u + v for u, v in zip(b1, b2))


def bvec_min(b1: tuple[int, ...], b2: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(min(u, v) for u, v in zip(b1, b2))


def bvec_negate(b: tuple[int, ...]) -> tuple[int, ...]:
    """b-vector of the pointwise negation of the region."""
    return (b[1], b[0], b[3], b[2], b[5], b[4])


def point_in_bvec(x: int, y: int, b: tuple[int, ...]) -> bool:
    return (x <= b[0] and -x <= b[1] and y <= b[2] and -y <= b[3]
            and x + y <= b[4] and -x - y <= b[5])


def face_in_bvec(face: FaceId, b: tuple[int, ...]) -> bool:
    return all(point_in_bvec(x, y, b) for x, y in face.vertices())


def face_as_b_vector(face: FaceId) -> tuple[Frac, ...]:
    """Tight rational b-vector with face = {x : A x <= b}; components in (1/q)Z."""
    return tuple(Frac(c, face.q) for c in bvec(face))


def faces_in_region(b: tuple[int, ...], q: int) -> list[FaceId]:
    """All faces contained in the (bounded) region {x : A x <= b}.

    Regions passed here come from tight b-vectors of bounded faces, so the
    candidate anchor box is finite and enumeration is exhaustive.
    """
    if b[0] + b[1] < 0 or b[2] + b[3] < 0 or b[4] + b[5] < 0:
        return []
    out = []
    for a in range(-b[1] - 1, b[0] + 1):
        for c in range(-b[3] - 1, b[2] + 1):
            for kind in FaceKind:
                f = FaceId(kind, (a, c), q)
                if face_in_bvec(f, b):
                    out.append(f)
    return out


def region_single_face(b: tuple[int, ...], q: int) -> FaceId | None:
    """The unique face equal to the region {x : A x <= b}, or None when empty.

    Only valid for regions that are known to be single faces (projections of
    faces of the product complex are; see `delta_complex.project`).
    """
    faces = faces_in_region(b, q)
    if not faces:
        return None
    best = max(faces, key=lambda f: len(f.vertices()))
    return best


@lru_cache(maxsize=None)
def _minkowski_cells(kind_i: FaceKind, kind_j: FaceKind, q: int) -> tuple[FaceId, ...]:
    i0 = FaceId(kind_i, (0, 0), q)
    j0 = FaceId(kind_j, (0, 0), q)
    return tuple(faces_in_region(bvec_add(bvec(i0), bvec(j0)), q))


def minkowski_sum(i: FaceId, j: FaceId) -> FaceSet:
    """The faces whose union is the Minkowski sum I+J, in true position."""
    if i.q != j.q:
        raise ValueError("mismatched q")
    da = i.anchor[0] + j.anchor[0]
    db = i.anchor[1] + j.anchor[1]
    return FaceSet(f.translated(da, db) for f in _minkowski_cells(i.kind, j.kind, i.q))


_NEG_KIND = {
    FaceKind.VERTEX: (FaceKind.VERTEX, 0, 0),
    FaceKind.EDGE_H: (FaceKind.EDGE_H, -1, 0),
    FaceKind.EDGE_V: (FaceKind.EDGE_V, 0, -1),
    FaceKind.EDGE_D: (FaceKind.EDGE_D, -1, -1),
    FaceKind.TRI_LOWER: (FaceKind.TRI_UPPER, -1, -1),
    FaceKind.TRI_UPPER: (FaceKind.TRI_LOWER, -1, -1),
}


def negate_face_raw(face: FaceId) -> FaceId:
    """-I in true position (negation maps faces of the complex to faces)."""
    kind, oa, ob = _NEG_KIND[face.kind]
    a, b = face.anchor
    return FaceId(kind, (-a + oa, -b + ob), face.q)


def negate_face(face: FaceId) -> FaceSet:
    """Faces covering -I, in true position (normalize members as needed)."""
    f = negate_face_raw(face)
    return FaceSet(faces_in_region(bvec(f), face.q))


def classify_point(p: QPoint, q: int) -> FaceId:
    """The unique face of the complex whose relative interior contains p
    (after reduction mod 1); returned in canonical position."""
    pn = p.frac()
    gx = pn.x * q
    gy = pn.y * q
    a = gx.__floor__()
    b = gy.__floor__()
    fx = gx - a
    fy = gy - b
    if fx == 0 and fy == 0:
        kind = FaceKind.VERTEX
    elif fy == 0:
        kind = FaceKind.EDGE_H
    elif fx == 0:
        kind = FaceKind.EDGE_V
    elif fx + fy == 1:
        kind = FaceKind.EDGE_D
    elif fx + fy < 1:
        kind = FaceKind.TRI_LOWER
    else:
        kind = FaceKind.TRI_UPPER
    return FaceId(kind, (a % q, b % q), q)


def canonical_faces(q: int, kinds=tuple(FaceKind)) -> list[FaceId]:
    """All canonical-position faces of the given kinds (anchors in {0..q-1}^2)."""
    return [FaceId(kind, (a, b), q)
            for kind in kinds for a in range(q) for b in range(q)]
