"""Faces of the product complex F(I,J,K) = {(x,y) : x in I, y in J, x+y in K},
their projections, and the additivity domain of a function.

A face is stored by its three canonical projections (re-projecting is
idempotent), so membership, containment and enumeration all reduce to integer
arithmetic on the projections' vertex sets: every vertex of such a face is a
grid pair, and a face carries zero slack exactly when the slack vanishes on
all of its grid pairs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .complex_pq import (
    FaceId,
    FaceKind,
    POINT_DIAG_KINDS,
    TRI_KINDS,
    bvec,
    bvec_add,
    bvec_min,
    bvec_negate,
    canonical_faces,
    minkowski_sum,
    point_in_bvec,
    region_single_face,
)
from .errors import NotDiagonallyConstrainedFace, NotSubadditive
from .pwl import DeltaValue, PwlFunction
from .rational import Frac, QPoint


class FaceType(enum.Enum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3
    TYPE4 = 4


@dataclass(frozen=True, order=True)
class DeltaFace:
    """A nonempty face of the product complex, stored by its projections."""

    p1: FaceId
    p2: FaceId
    p3: FaceId

    @property
    def q(self) -> int:
        return self.p1.q

    def grid_pairs(self) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
        """All grid pairs (x, y) of the face, in grid units.

        The vertices of the face are among these, so an affine function on the
        face vanishes identically iff it vanishes on all of them.
        """
        b3 = bvec(self.p3)
        out = []
        for x in self.p1.vertices():
            for y in self.p2.vertices():
                if point_in_bvec(x[0] + y[0], x[1] + y[1], b3):
                    out.append((x, y))
        return tuple(out)

    def canonical(self) -> "DeltaFace":
        """Translate so p1 and p2 are in the fundamental domain."""
        q = self.q
        a1 = self.p1.anchor
        a2 = self.p2.anchor
        u = ((a1[0] % q) - a1[0], (a1[1] % q) - a1[1])
        v = ((a2[0] % q) - a2[0], (a2[1] % q) - a2[1])
        return DeltaFace(
            self.p1.translated(*u),
            self.p2.translated(*v),
            self.p3.translated(u[0] + v[0], u[1] + v[1]),
        )

    def swapped(self) -> "DeltaFace":
        return DeltaFace(self.p2, self.p1, self.p3)

    def translated(self, u: tuple[int, int], v: tuple[int, int]) -> "DeltaFace":
        return DeltaFace(
            self.p1.translated(*u),
            self.p2.translated(*v),
            self.p3.translated(u[0] + v[0], u[1] + v[1]),
        )

    def __repr__(self):
        return f"F({self.p1}, {self.p2}, {self.p3})"


def project(i: FaceId, j: FaceId, k: FaceId) -> DeltaFace | None:
    """The face F(I,J,K) as a DeltaFace given by its exact projections, or
    None when F(I,J,K) is empty.

    p1 = (K + (-J)) cap I, p2 = (K + (-I)) cap J, p3 = (I + J) cap K; each is
    computed on tight b-vectors and identified as the single face it is.
    """
    if not (i.q == j.q == k.q):
        raise ValueError("mismatched q")
    bi, bj, bk = bvec(i), bvec(j), bvec(k)
    p1 = region_single_face(bvec_min(bvec_add(bk, bvec_negate(bj)), bi), i.q)
    if p1 is None:
        return None
    p2 = region_single_face(bvec_min(bvec_add(bk, bvec_negate(bi)), bj), i.q)
    if p2 is None:
        return None
    p3 = region_single_face(bvec_min(bvec_add(bi, bj), bk), i.q)
    if p3 is None:
        return None
    return DeltaFace(p1, p2, p3)


class _AdditiveTable:
    """Grid-level subadditivity slack of a function, as a fast lookup."""

    def __init__(self, pi: PwlFunction):
        q = pi.q
        self.q = q
        vals = [[pi.grid_value(a, b) for b in range(q)] for a in range(q)]
        table = bytearray(q * q * q * q)
        for ax in range(q):
            for ay in range(q):
                va = vals[ax][ay]
                base_a = (ax * q + ay) * q * q
                for bx in range(q):
                    for by in range(q):
                        d = va + vals[bx][by] - vals[(ax + bx) % q][(ay + by) % q]
                        if d < 0:
                            raise NotSubadditive(DeltaValue(
                                QPoint(Frac(ax, q), Frac(ay, q)),
                                QPoint(Frac(bx, q), Frac(by, q)), d), d)
                        if d == 0:
                            table[base_a + bx * q + by] = 1
        self.table = table

    def additive(self, x: tuple[int, int], y: tuple[int, int]) -> bool:
        q = self.q
        return bool(self.table[(((x[0] % q) * q + x[1] % q) * q + y[0] % q) * q + y[1] % q])


def _pairs_additive(table: _AdditiveTable, pairs) -> bool:
    q = table.q
    t = table.table
    for (x, y) in pairs:
        if not t[(((x[0] % q) * q + x[1] % q) * q + y[0] % q) * q + y[1] % q]:
            return False
    return True


# a face of the complex contained in a simplex is one of its subfaces, so it
# is determined by the subset of vertices it keeps (offsets relative to the
# anchor, in the order of _VERT_OFFSETS)
_SUBFACE = {
    FaceKind.VERTEX: {(0,): (FaceKind.VERTEX, (0, 0))},
    FaceKind.EDGE_H: {(0, 1): (FaceKind.EDGE_H, (0, 0)),
                      (0,): (FaceKind.VERTEX, (0, 0)),
                      (1,): (FaceKind.VERTEX, (1, 0))},
    FaceKind.EDGE_V: {(0, 1): (FaceKind.EDGE_V, (0, 0)),
                      (0,): (FaceKind.VERTEX, (0, 0)),
                      (1,): (FaceKind.VERTEX, (0, 1))},
    FaceKind.EDGE_D: {(0, 1): (FaceKind.EDGE_D, (0, 0)),
                      (0,): (FaceKind.VERTEX, (1, 0)),
                      (1,): (FaceKind.VERTEX, (0, 1))},
    FaceKind.TRI_LOWER: {(0, 1, 2): (FaceKind.TRI_LOWER, (0, 0)),
                         (0, 1): (FaceKind.EDGE_H, (0, 0)),
                         (0, 2): (FaceKind.EDGE_V, (0, 0)),
                         (1, 2): (FaceKind.EDGE_D, (0, 0)),
                         (0,): (FaceKind.VERTEX, (0, 0)),
                         (1,): (FaceKind.VERTEX, (1, 0)),
                         (2,): (FaceKind.VERTEX, (0, 1))},
    FaceKind.TRI_UPPER: {(0, 1, 2): (FaceKind.TRI_UPPER, (0, 0)),
                         (0, 1): (FaceKind.EDGE_D, (0, 0)),
                         (0, 2): (FaceKind.EDGE_V, (1, 0)),
                         (1, 2): (FaceKind.EDGE_H, (0, 1)),
                         (0,): (FaceKind.VERTEX, (1, 0)),
                         (1,): (FaceKind.VERTEX, (0, 1)),
                         (2,): (FaceKind.VERTEX, (1, 1))},
}


def _subface(face: FaceId, kept: tuple[int, ...]) -> FaceId:
    kind, off = _SUBFACE[face.kind][kept]
    return FaceId(kind, (face.anchor[0] + off[0], face.anchor[1] + off[1]), face.q)


def additive_faces(pi: PwlFunction) -> list[DeltaFace]:
    """The additivity complex of the function: every face of the product
    complex on which the slack vanishes identically, one canonical
    representative per translation orbit (swapped variants are kept).

    Raises NotSubadditive when a negative grid slack exists.
    """
    q = pi.q
    table = _AdditiveTable(pi)
    tbl = table.table
    faces = canonical_faces(q)
    verts = {f: f.vertices() for f in faces}
    neg_b = {f: bvec_negate(bvec(f)) for f in faces}
    seen = set()
    out = []
    for pos_i, i in enumerate(faces):
        vi = verts[i]
        for j in faces[pos_i:]:
            vj = verts[j]
            add_flags = {}
            any_additive = False
            for x in vi:
                xa = ((x[0] % q) * q + x[1] % q) * q
                for y in vj:
                    flag = tbl[(xa + y[0] % q) * q + y[1] % q]
                    add_flags[(x, y)] = flag
                    any_additive = any_additive or flag
            if not any_additive:
                continue
            bnj = neg_b[j]
            bni = neg_b[i]
            for k in minkowski_sum(i, j):
                bk = bvec(k)
                additive = True
                pairs = []
                for ix, x in enumerate(vi):
                    for jy, y in enumerate(vj):
                        if point_in_bvec(x[0] + y[0], x[1] + y[1], bk):
                            if not add_flags[(x, y)]:
                                additive = False
                                break
                            pairs.append((ix, jy))
                    if not additive:
                        break
                if not additive or not pairs:
                    continue
                # projections are subfaces of i and j: a vertex of i survives
                # into p1 iff it lies in (K + (-J)); likewise for j
                b1 = bvec_add(bk, bnj)
                b2 = bvec_add(bk, bni)
                p1 = _subface(i, tuple(ix for ix, x in enumerate(vi)
                                       if point_in_bvec(x[0], x[1], b1)))
                p2 = _subface(j, tuple(jy for jy, y in enumerate(vj)
                                       if point_in_bvec(y[0], y[1], b2)))
                face = DeltaFace(p1, p2, k).canonical()
                if face not in seen:
                    seen.add(face)
                    out.append(face)
                if i != j:
                    sw = DeltaFace(p2, p1, k).canonical()
                    if sw not in seen:
                        seen.add(sw)
                        out.append(sw)
    out.sort()
    return out


def _containment_shifts(q: int):
    shifts = [(da, db) for da in (-q, 0, q) for db in (-q, 0, q)]
    return [(u, v) for u in shifts for v in shifts]


def maximal_additive_faces(pi: PwlFunction, faces: list[DeltaFace] | None = None) -> list[DeltaFace]:
    """Inclusion-maximal members of the additivity complex, deduplicated under
    the (x,y) swap by keeping the lexicographically smaller encoding."""
    if faces is None:
        faces = additive_faces(pi)
    q = pi.q
    pair_sets = [frozenset(f.grid_pairs()) for f in faces]
    index: dict = {}
    for idx, ps in enumerate(pair_sets):
        for p in ps:
            index.setdefault(p, []).append(idx)
    shifts = _containment_shifts(q)
    maximal = []
    for idx, f in enumerate(faces):
        ps = pair_sets[idx]
        n = len(ps)
        p0 = min(ps)
        contained = False
        for (u, v) in shifts:
            key = ((p0[0][0] + u[0], p0[0][1] + u[1]),
                   (p0[1][0] + v[0], p0[1][1] + v[1]))
            for jdx in index.get(key, ()):
                if len(pair_sets[jdx]) <= n:
                    continue
                big = pair_sets[jdx]
                if all(((x[0] + u[0], x[1] + u[1]), (y[0] + v[0], y[1] + v[1])) in big
                       for (x, y) in ps):
                    contained = True
                    break
            if contained:
                break
        if not contained:
            maximal.append(f)
    out = []
    for f in maximal:
        s = f.swapped().canonical()
        if _enc(f) <= _enc(s):
            out.append(f)
    out.sort()
    return out


def _enc(f: DeltaFace):
    return (f.p1.kind.value, f.p1.anchor, f.p2.kind.value, f.p2.anchor,
            f.p3.kind.value, f.p3.anchor)


def face_type(f: DeltaFace) -> FaceType:
    """Classify a maximal additive face of a diagonally constrained function."""
    kinds = (f.p1.kind, f.p2.kind, f.p3.kind)
    if any(k in (FaceKind.EDGE_H, FaceKind.EDGE_V) for k in kinds):
        raise NotDiagonallyConstrainedFace(f"{f} has a horizontal or vertical edge projection")
    if all(k in POINT_DIAG_KINDS for k in kinds):
        return FaceType.TYPE1
    if all(k in TRI_KINDS for k in kinds):
        return FaceType.TYPE2
    tri = sum(1 for k in kinds if k in TRI_KINDS)
    if tri == 2 and any(k is FaceKind.VERTEX for k in kinds):
        return FaceType.TYPE3
    if tri == 2 and any(k is FaceKind.EDGE_D for k in kinds):
        return FaceType.TYPE4
    raise ValueError(f"{f} does not match any maximal face pattern")


def is_symmetry_face(f: DeltaFace, pi: PwlFunction) -> bool:
    """True when the face expresses the symmetry condition: its third
    projection is the single point f (modulo the lattice)."""
    if f.p3.kind is not FaceKind.VERTEX:
        return False
    fx = pi.f.x * pi.q
    fy = pi.f.y * pi.q
    if fx.denominator != 1 or fy.denominator != 1:
        return False
    a, b = f.p3.anchor
    return (a - int(fx)) % pi.q == 0 and (b - int(fy)) % pi.q == 0


def is_forced_face(f: DeltaFace, pi: PwlFunction) -> bool:
    """True for faces every minimal function carries: symmetry faces, and
    faces whose first or second projection is a lattice point (the function
    vanishes on the lattice, so those additivities are automatic)."""
    if is_symmetry_face(f, pi):
        return True
    q = pi.q
    for p in (f.p1, f.p2):
        if p.kind is FaceKind.VERTEX and p.anchor[0] % q == 0 and p.anchor[1] % q == 0:
            return True
    return False


def is_diagonally_constrained(pi: PwlFunction, emax: list[DeltaFace] | None = None):
    """Check that every maximal additive face projects only to points,
    diagonal edges, and triangles.  Returns (True, None) or (False, face)."""
    if emax is None:
        emax = maximal_additive_faces(pi)
    for f in emax:
        for p in (f.p1, f.p2, f.p3):
            if p.kind in (FaceKind.EDGE_H, FaceKind.EDGE_V):
                return False, f
    return True, None
