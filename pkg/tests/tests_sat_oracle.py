"""Separating-axis intersection oracle for the projection tests.

Kept free of any package geometry code: convex polygons with rational
vertices intersect iff no axis from the edge-normal family separates their
vertex projections.  All faces here have edges normal to (1,0), (0,1) or
(1,1), so this axis set is exact.
"""

AXES = [(1, 0), (0, 1), (1, 1), (1, -1)]


def sat_intersects(pts_a, pts_b):
    for ax, ay in AXES:
        pa = [ax * x + ay * y for x, y in pts_a]
        pb = [ax * x + ay * y for x, y in pts_b]
        if max(pa) < min(pb) or max(pb) < min(pa):
            return False
    return True


def oracle_projection_vertices(target, other, k):
    """Vertices v of `target` lying in K + (-other): those where K meets
    the translate v + other."""
    out = set()
    kv = list(k.vertices())
    for v in target.vertices():
        shifted = [(v[0] + x, v[1] + y) for x, y in other.vertices()]
        if sat_intersects(kv, shifted):
            out.add(v)
    return out
