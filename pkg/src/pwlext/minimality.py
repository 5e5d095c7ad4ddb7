"""Finite minimality test on the grid, with violation witnesses.

For a continuous piecewise linear periodic function whose marked point f is a
vertex of the complex, minimality is equivalent to three grid-checkable
conditions: value zero at the origin, nonnegative subadditivity slack on all
grid pairs, and the symmetry identity pi(x) + pi(f-x) = 1 on all grid points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .pwl import PwlFunction, require_f_vertex
from .rational import Frac, QPoint


class ViolationKind(enum.Enum):
    NOT_ZERO_AT_ORIGIN = "not_zero_at_origin"
    SUBADDITIVITY_FAIL = "subadditivity_fail"
    SYMMETRY_FAIL = "symmetry_fail"
    F_NOT_VERTEX = "f_not_vertex"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    witness: tuple
    value: Frac


@dataclass
class MinimalityReport:
    verdict: bool
    violations: list[Violation] = field(default_factory=list)
    truncated: bool = False

    def __bool__(self):
        return self.verdict


def check_minimal(pi: PwlFunction, max_violations: int = 10) -> MinimalityReport:
    """Run the grid minimality test at the function's own resolution.

    Raises FNotVertex when f is off the grid or on the lattice; otherwise
    returns a report whose verdict is True iff no violation exists.
    Violations are collected up to `max_violations` (subadditivity pairs are
    scanned once per unordered pair; the slack is symmetric).
    """
    require_f_vertex(pi)
    q = pi.q
    violations: list[Violation] = []
    truncated = False

    def push(v: Violation) -> bool:
        nonlocal truncated
        if len(violations) < max_violations:
            violations.append(v)
            return True
        truncated = True
        return False

    origin = pi.grid_value(0, 0)
    if origin != 0:
        push(Violation(ViolationKind.NOT_ZERO_AT_ORIGIN, (QPoint(Frac(0), Frac(0)),), origin))

    fx = int(pi.f.x * q)
    fy = int(pi.f.y * q)
    done = False
    for ax in range(q):
        for ay in range(q):
            s = pi.grid_value(ax, ay) + pi.grid_value(fx - ax, fy - ay)
            if s != 1:
                if not push(Violation(
                        ViolationKind.SYMMETRY_FAIL,
                        (QPoint(Frac(ax, q), Frac(ay, q)),), s)):
                    done = True
                    break
        if done:
            break

    vals = [[pi.grid_value(a, b) for b in range(q)] for a in range(q)]
    points = [(a, b) for a in range(q) for b in range(q)]
    done = False
    for i, (ax, ay) in enumerate(points):
        va = vals[ax][ay]
        for (bx, by) in points[i:]:
            d = va + vals[bx][by] - vals[(ax + bx) % q][(ay + by) % q]
            if d < 0:
                if not push(Violation(
                        ViolationKind.SUBADDITIVITY_FAIL,
                        (QPoint(Frac(ax, q), Frac(ay, q)),
                         QPoint(Frac(bx, q), Frac(by, q))), d)):
                    done = True
                    break
        if done:
            break

    return MinimalityReport(verdict=not violations and not truncated,
                            violations=violations, truncated=truncated)


def check_minimal_at(pi: PwlFunction, n: int, max_violations: int = 10) -> MinimalityReport:
    """The same test on the finer (1/n)-grid; n must be a multiple of q."""
    if n % pi.q != 0:
        raise ValueError(f"n = {n} is not a multiple of q = {pi.q}")
    return check_minimal(pi.refine(n // pi.q), max_violations=max_violations)
