"""Equivariant perturbation functions and non-extremality certificates.

Two template perturbations live on the m-fold refined complex: one vanishes on
every edge of the coarse complex and alternates sign across the two fundamental
triangles (point flavor), the other vanishes on all lines of slope -1 through
coarse vertices and alternates sign between them (diagonal flavor).  Restricted
to a union of triangle classes picked from the covering graph, scaled copies
can be added to and subtracted from a minimal function without losing
minimality, which splits it as a midpoint of two distinct minimal functions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .covering import CoverReport, TriClass, all_tri_classes, _class_key
from .errors import (
    Covered,
    DegeneratePerturbation,
    MTooSmall,
    SplitNotMinimal,
)
from .minimality import check_minimal
from .pwl import PwlFunction
from .rational import Frac, QPoint


class Flavor(enum.Enum):
    POINT = "point"
    DIAG = "diag"
    KERNEL = "kernel"


@dataclass(frozen=True)
class Perturbation:
    """A nonzero periodic perturbation on the refined grid with value zero at
    the origin and at f, whose additivities include all of the base
    function's."""

    base: PwlFunction
    m: int
    region: frozenset
    flavor: Flavor


def psi_point(q: int, m: int) -> PwlFunction:
    """Value 0 on refined vertices on the boundary of the lower fundamental
    triangle, 1 at its interior refined vertices, odd under the reflection
    through (1/q,1/q)/2 onto the upper triangle, periodic mod (1/q)Z^2."""
    if m < 3:
        raise MTooSmall(f"m = {m} < 3 leaves no interior vertex")
    n = m * q
    vals = [[_psi_point_value(a, b, m) for b in range(n)] for a in range(n)]
    return PwlFunction(n, QPoint(Frac(0), Frac(0)), vals)


def _psi_point_value(a: int, b: int, m: int) -> int:
    i = a % m
    j = b % m
    if i == 0 or j == 0:
        return 0
    if i + j < m:
        return 1
    if i + j > m:
        return -1
    return 0


def psi_diag(q: int, m: int) -> PwlFunction:
    """Value at a refined vertex depends only on the residue i of the
    coordinate sum modulo the coarse diagonal spacing: +1 below the midpoint
    (1 <= i < m/2), -1 above (m/2 < i <= m-1), 0 on coarse diagonals and at
    the midpoint."""
    if m < 3:
        raise MTooSmall(f"m = {m} < 3 leaves no nonzero vertex")
    n = m * q
    vals = [[_psi_diag_value(a, b, m) for b in range(n)] for a in range(n)]
    return PwlFunction(n, QPoint(Frac(0), Frac(0)), vals)


def _psi_diag_value(a: int, b: int, m: int) -> int:
    i = (a + b) % m
    if i == 0 or 2 * i == m:
        return 0
    return 1 if 2 * i < m else -1


def _incident_triangles(a: int, b: int, m: int, q: int) -> list[TriClass]:
    """Coarse triangle classes whose closure contains the refined vertex
    (a/(mq), b/(mq)), excluding cases where the vertex lies on a coarse
    vertex or diagonal edge (callers only need interior and v/h-edge cases)."""
    from .complex_pq import FaceId, FaceKind

    ca, r = divmod(a, m)
    cb, s = divmod(b, m)
    ca %= q
    cb %= q
    if r > 0 and s > 0:
        if r + s < m:
            return [FaceId(FaceKind.TRI_LOWER, (ca, cb), q)]
        if r + s > m:
            return [FaceId(FaceKind.TRI_UPPER, (ca, cb), q)]
        return []
    if s == 0 and r > 0:
        return [FaceId(FaceKind.TRI_LOWER, (ca, cb), q),
                FaceId(FaceKind.TRI_UPPER, (ca, (cb - 1) % q), q)]
    if r == 0 and s > 0:
        return [FaceId(FaceKind.TRI_LOWER, (ca, cb), q),
                FaceId(FaceKind.TRI_UPPER, ((ca - 1) % q, cb), q)]
    return []


def restrict_to_region(psi: PwlFunction, region: frozenset, q: int, m: int,
                       f: QPoint) -> PwlFunction:
    """The product of psi with the indicator of the region (a union of coarse
    triangle classes), sampled on the refined grid."""
    n = m * q
    vals = [[Frac(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            v = psi.grid_value(a, b)
            if v == 0:
                continue
            tris = _incident_triangles(a, b, m, q)
            inside = [t in region for t in tris]
            if any(inside):
                # continuity across the region boundary: a nonzero value may
                # not sit between a member and a non-member triangle
                assert all(inside), f"region boundary crosses nonzero value at {(a, b)}"
                vals[a][b] = v
    return PwlFunction(n, f, vals)


def verify_additivity_inclusion(pi_fine: PwlFunction, bar: PwlFunction) -> bool:
    """Check on all grid pairs that zero slack of pi forces zero slack of the
    perturbation; both functions must live on the same grid.  Equivalent to
    containment of the full additivity domains, since both slack functions
    are piecewise linear over the refined product complex."""
    n = pi_fine.q
    points = [(a, b) for a in range(n) for b in range(n)]
    for i, (ax, ay) in enumerate(points):
        for (bx, by) in points[i:]:
            if pi_fine.delta_grid(ax, ay, bx, by) == 0:
                if bar.delta_grid(ax, ay, bx, by) != 0:
                    return False
    return True


def build_perturbation(pi: PwlFunction, cover: CoverReport, m: int) -> Perturbation:
    """Construct an equivariant perturbation certified against the function.

    If some triangle class is untouched by the covering graph, the point
    flavor restricted to that class's component applies; otherwise a class
    that is only diagonally covered admits the diagonal flavor on its
    component in the extended graph.  Raises Covered when every class is
    strongly covered (no perturbation of these flavors exists).
    """
    if m < 3:
        raise MTooSmall(f"m = {m} < 3")
    q = pi.q
    classes = all_tri_classes(q)
    covered = cover.s1 | cover.s2
    uncovered = [c for c in classes if c not in covered]
    if uncovered:
        star = min(uncovered, key=_class_key)
        region = cover.g_component(star)
        psi = psi_point(q, m)
        flavor = Flavor.POINT
    elif cover.bar_s1:
        star = min(cover.bar_s1, key=_class_key)
        region = cover.gbar_component(star)
        psi = psi_diag(q, m)
        flavor = Flavor.DIAG
    else:
        raise Covered("every triangle class is strongly covered")

    base = restrict_to_region(psi, region, q, m, pi.f)
    if base.is_zero():
        raise DegeneratePerturbation("restricted perturbation vanishes identically")
    ffx = pi.f.x * base.q
    ffy = pi.f.y * base.q
    assert base.grid_value(int(ffx), int(ffy)) == 0
    pi_fine = pi.refine(m)
    if not verify_additivity_inclusion(pi_fine, base):
        raise DegeneratePerturbation("additivity inclusion failed for the construction")
    return Perturbation(base=base, m=m, region=frozenset(region), flavor=flavor)


def epsilon_for(pi: PwlFunction, pert: Perturbation) -> Frac:
    """Half the ratio of the smallest positive slack of pi to the largest
    absolute slack of the perturbation, over all grid pairs of the refined
    fundamental domain."""
    n = pert.base.q
    if n % pi.q != 0:
        raise ValueError("perturbation grid does not refine the function grid")
    pi_fine = pi.refine(n // pi.q)
    min_pos = None
    max_abs = Frac(0)
    points = [(a, b) for a in range(n) for b in range(n)]
    for i, (ax, ay) in enumerate(points):
        for (bx, by) in points[i:]:
            d = pi_fine.delta_grid(ax, ay, bx, by)
            if d > 0 and (min_pos is None or d < min_pos):
                min_pos = d
            e = pert.base.delta_grid(ax, ay, bx, by)
            if e < 0:
                e = -e
            if e > max_abs:
                max_abs = e
    if max_abs == 0:
        raise DegeneratePerturbation("perturbation slack vanishes on the whole grid")
    if min_pos is None:
        raise DegeneratePerturbation("function has no positive slack on the grid")
    return min_pos / (2 * max_abs)


def split(pi: PwlFunction, pert: Perturbation, eps: Frac) -> tuple[PwlFunction, PwlFunction]:
    """The two minimal functions pi + eps*bar and pi - eps*bar on the refined
    grid; their average reproduces pi exactly."""
    n = pert.base.q
    pi_fine = pi.refine(n // pi.q)
    hi = pi_fine.combine(pert.base, eps)
    lo = pi_fine.combine(pert.base, -eps)
    if hi == lo:
        raise SplitNotMinimal("splits coincide; perturbation must be nonzero")
    for part in (hi, lo):
        rep = check_minimal(part)
        if not rep:
            raise SplitNotMinimal(f"split failed minimality: {rep.violations[:1]}")
    return hi, lo
