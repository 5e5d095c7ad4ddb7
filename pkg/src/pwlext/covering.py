"""Finite graphs on triangle classes and the covered-set computation.

Triangles are taken modulo integer translations (2*q*q classes).  Two classes
are linked when some additive face projects onto the two triangles with its
third projection a single point (point edges) or a diagonal edge (diagonal
edges).  Components reached from all-triangle faces are affine imposing;
components reached only from triangle-triangle-diagonal faces are affine
imposing along the diagonal direction.  A second pass adds links across
vertical/horizontal edges between covered classes.  When the strongly covered
set exhausts all classes, midpoint decompositions of the function are forced
piecewise linear on the original complex; otherwise an equivariant
perturbation exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex_pq import FaceId, FaceKind, TRI_KINDS
from .delta_complex import DeltaFace
from .pwl import PwlFunction

TriClass = FaceId  # canonical-position triangle (anchor in {0..q-1}^2)


def tri_class(face: FaceId) -> TriClass:
    if face.kind not in TRI_KINDS:
        raise ValueError(f"{face} is not a triangle")
    return face.normalized()


def all_tri_classes(q: int) -> list[TriClass]:
    return sorted(
        (FaceId(kind, (a, b), q) for kind in TRI_KINDS for a in range(q) for b in range(q)),
        key=_class_key,
    )


def _class_key(c: TriClass):
    return (c.kind.value, c.anchor)


@dataclass
class GraphData:
    q: int
    e_point: set = field(default_factory=set)
    e_diag: set = field(default_factory=set)
    seeds2: set = field(default_factory=set)
    seeds1: set = field(default_factory=set)


def build_graph(faces: list[DeltaFace], q: int) -> GraphData:
    """Edge sets and seed sets read off the additivity complex.

    `faces` must be the full list of additive faces (subfaces included):
    point edges are often realized only by proper subfaces of maximal ones.
    """
    g = GraphData(q=q)
    for f in faces:
        ps = (f.p1, f.p2, f.p3)
        kinds = [p.kind for p in ps]
        tri_pos = [i for i, k in enumerate(kinds) if k in TRI_KINDS]
        if len(tri_pos) == 3:
            g.seeds2.update(tri_class(p) for p in ps)
            continue
        if len(tri_pos) != 2:
            continue
        third = ps[3 - tri_pos[0] - tri_pos[1]]
        ci = tri_class(ps[tri_pos[0]])
        cj = tri_class(ps[tri_pos[1]])
        if third.kind is FaceKind.VERTEX:
            if ci != cj:
                g.e_point.add(frozenset((ci, cj)))
        elif third.kind is FaceKind.EDGE_D:
            g.seeds1.add(ci)
            g.seeds1.add(cj)
            if ci != cj:
                g.e_diag.add(frozenset((ci, cj)))
    return g


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def component(self, x) -> frozenset:
        r = self.find(x)
        return frozenset(y for y in self.parent if self.find(y) == r)


@dataclass
class CoverReport:
    q: int
    graph: GraphData
    s2: frozenset
    s1: frozenset
    bar_s2: frozenset
    bar_s1: frozenset
    fully_covered: bool
    e_vh: set
    _g_uf: _UnionFind
    _gbar_uf: _UnionFind

    @property
    def seeds2(self) -> frozenset:
        return frozenset(self.graph.seeds2)

    @property
    def seeds1(self) -> frozenset:
        return frozenset(self.graph.seeds1)

    def g_component(self, c: TriClass) -> frozenset:
        return self._g_uf.component(c)

    def gbar_component(self, c: TriClass) -> frozenset:
        return self._gbar_uf.component(c)


def _vh_neighbors(c: TriClass) -> list[TriClass]:
    """Triangle classes sharing a vertical or horizontal edge with c."""
    q = c.q
    a, b = c.anchor
    if c.kind is FaceKind.TRI_LOWER:
        # bottom edge meets the upper triangle below, left edge the one to the left
        return [FaceId(FaceKind.TRI_UPPER, (a, (b - 1) % q), q),
                FaceId(FaceKind.TRI_UPPER, ((a - 1) % q, b), q)]
    return [FaceId(FaceKind.TRI_LOWER, (a, (b + 1) % q), q),
            FaceId(FaceKind.TRI_LOWER, ((a + 1) % q, b), q)]


def covered_sets(pi: PwlFunction, faces: list[DeltaFace] | None = None) -> CoverReport:
    """Compute the covered triangle classes of a minimal, diagonally
    constrained function."""
    from .delta_complex import additive_faces

    if faces is None:
        faces = additive_faces(pi)
    q = pi.q
    graph = build_graph(faces, q)
    classes = all_tri_classes(q)

    uf = _UnionFind(classes)
    for e in graph.e_point | graph.e_diag:
        a, b = tuple(e)
        uf.union(a, b)
    s2_roots = {uf.find(c) for c in graph.seeds2}
    s1_roots = {uf.find(c) for c in graph.seeds1}
    s2 = frozenset(c for c in classes if uf.find(c) in s2_roots)
    s1 = frozenset(c for c in classes if uf.find(c) in s1_roots)

    covered = s1 | s2
    e_vh = set()
    for c in classes:
        if c not in covered:
            continue
        for d in _vh_neighbors(c):
            if d != c and d in covered:
                e_vh.add(frozenset((c, d)))

    uf_bar = _UnionFind(classes)
    for e in graph.e_point | graph.e_diag | e_vh:
        a, b = tuple(e)
        uf_bar.union(a, b)
    bar2_roots = {uf_bar.find(c) for c in s2}
    bar_s2 = frozenset(c for c in classes if uf_bar.find(c) in bar2_roots)
    bar_s1 = s1 - bar_s2
    fully = bar_s2 == frozenset(classes)
    return CoverReport(q=q, graph=graph, s2=s2, s1=s1, bar_s2=bar_s2,
                       bar_s1=bar_s1, fully_covered=fully, e_vh=e_vh,
                       _g_uf=uf, _gbar_uf=uf_bar)


def graph_to_dot(report: CoverReport) -> str:
    """Render the covering graph in DOT format for inspection."""
    def name(c: TriClass) -> str:
        tag = "L" if c.kind is FaceKind.TRI_LOWER else "U"
        return f"{tag}_{c.anchor[0]}_{c.anchor[1]}"

    lines = ["graph covering {"]
    for c in all_tri_classes(report.q):
        marks = []
        if c in report.bar_s2:
            marks.append("style=filled fillcolor=lightgreen")
        elif c in report.bar_s1:
            marks.append("style=filled fillcolor=lightblue")
        lines.append(f'  {name(c)} [{" ".join(marks)}];')
    for e in sorted(report.graph.e_point, key=lambda e: sorted(map(_class_key, e))):
        a, b = sorted(e, key=_class_key)
        lines.append(f"  {name(a)} -- {name(b)};")
    for e in sorted(report.graph.e_diag, key=lambda e: sorted(map(_class_key, e))):
        a, b = sorted(e, key=_class_key)
        lines.append(f"  {name(a)} -- {name(b)} [style=dashed];")
    for e in sorted(report.e_vh, key=lambda e: sorted(map(_class_key, e))):
        a, b = sorted(e, key=_class_key)
        lines.append(f"  {name(a)} -- {name(b)} [style=dotted];")
    lines.append("}")
    return "\n".join(lines) + "\n"
