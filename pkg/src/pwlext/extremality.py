"""The additivity linear system, its exact kernel, and the extremality
decision.

The system has one variable per point of the (1/n)-grid of [0,1)^2, the two
pinning equations phi(0) = 0 and phi(f) = 1, and one equation
phi(u) + phi(v) = phi(u+v) per additive grid pair.  The function is extreme
exactly when the system with n = m*q (m >= 3) is uniquely solvable, i.e. when
the coefficient matrix has a trivial kernel.

Kernel dimension is certified exactly: a single-word modular elimination
screens the rows (rank over a prime field never exceeds the rational rank,
so full modular column rank already proves a trivial kernel), and otherwise a
modularly independent row subset is solved exactly and every remaining row is
checked against the resulting basis with exact arithmetic.  No decision ever
depends on floating point or on an unverified modular image.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .covering import covered_sets
from .delta_complex import additive_faces, is_diagonally_constrained, maximal_additive_faces
from .errors import NotGenuinely2D, NotMinimal, NotDiagonallyConstrained
from .minimality import check_minimal
from .perturbation import (
    Flavor,
    Perturbation,
    build_perturbation,
    epsilon_for,
    split,
)
from .pwl import PwlFunction, is_genuinely_2d, require_f_vertex
from .rational import Frac

_PRIME = 8388593  # fits (p-1)^2 * ncols inside int64 for the grids used here


@dataclass
class AdditivitySystem:
    """Sparse rational linear system for phi on the (1/n)-grid."""

    n: int
    q: int
    origin_idx: int
    f_idx: int
    rows: list  # (variable index tuple, integer coefficient tuple)
    rhs: list   # Frac right-hand sides, aligned with rows

    @property
    def num_vars(self) -> int:
        return self.n * self.n

    def residual(self, phi: list) -> list:
        out = []
        for (idxs, coefs), b in zip(self.rows, self.rhs):
            out.append(sum(c * phi[i] for i, c in zip(idxs, coefs)) - b)
        return out


def assemble_system(pi: PwlFunction, n: int) -> AdditivitySystem:
    """Build the system at resolution n (a multiple of q).

    Rows for additive pairs are deduplicated on the unordered pair, and
    coefficients on a repeated variable are merged.
    """
    if n % pi.q != 0:
        raise ValueError(f"n = {n} must be a multiple of q = {pi.q}")
    fine = pi.refine(n // pi.q)
    fx = fine.f.x * n
    fy = fine.f.y * n
    if fx.denominator != 1 or fy.denominator != 1:
        raise ValueError("f does not lie on the 1/n grid")
    f_idx = (int(fx) % n) * n + (int(fy) % n)
    rows = [((0,), (1,)), ((f_idx,), (1,))]
    rhs = [Frac(0), Frac(1)]
    seen = {tuple(sorted(zip(*rows[0]))), tuple(sorted(zip(*rows[1])))}

    vals = [[fine.grid_value(a, b) for b in range(n)] for a in range(n)]
    points = [(a, b) for a in range(n) for b in range(n)]
    for i, (ax, ay) in enumerate(points):
        va = vals[ax][ay]
        for (bx, by) in points[i:]:
            if va + vals[bx][by] - vals[(ax + bx) % n][(ay + by) % n] != 0:
                continue
            coef: dict[int, int] = {}
            for idx, c in (((ax * n + ay), 1), ((bx * n + by), 1),
                           ((((ax + bx) % n) * n + (ay + by) % n), -1)):
                coef[idx] = coef.get(idx, 0) + c
            items = tuple(sorted((i2, c2) for i2, c2 in coef.items() if c2))
            if not items or items in seen:
                continue
            seen.add(items)
            rows.append((tuple(i2 for i2, _ in items), tuple(c2 for _, c2 in items)))
            rhs.append(Frac(0))
    return AdditivitySystem(n=n, q=pi.q, origin_idx=0, f_idx=f_idx, rows=rows, rhs=rhs)


def _mod_rref(sys: AdditivitySystem, p: int):
    """Incremental RREF of the coefficient matrix over GF(p).

    Returns (basis matrix, pivot columns, indices of inserted source rows).
    Stops early once the column rank is full.
    """
    ncols = sys.num_vars
    basis = np.zeros((ncols, ncols), dtype=np.int64)
    piv_cols: list[int] = []
    src_rows: list[int] = []
    rank = 0
    for ridx, (idxs, coefs) in enumerate(sys.rows):
        row = np.zeros(ncols, dtype=np.int64)
        for i, c in zip(idxs, coefs):
            row[i] = c % p
        if rank:
            pc = np.array(piv_cols, dtype=np.intp)
            row = (row - row[pc] @ basis[:rank]) % p
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            continue
        c0 = int(nz[0])
        inv = pow(int(row[c0]), p - 2, p)
        row = (row * inv) % p
        if rank:
            col = basis[:rank, c0].copy()
            if col.any():
                basis[:rank] = (basis[:rank] - np.outer(col, row)) % p
        basis[rank] = row
        piv_cols.append(c0)
        src_rows.append(ridx)
        rank += 1
        if rank == ncols:
            break
    return basis[:rank], piv_cols, src_rows


def _rational_reconstruct(a: int, p: int) -> Frac | None:
    """Lift a residue to the unique small rational n/d with |n|, d <= sqrt(p/2),
    if one exists."""
    bound = int((p / 2) ** 0.5)
    r0, r1 = p, a % p
    s0, s1 = 0, 1
    while r1 > bound:
        quot = r0 // r1
        r0, r1 = r1, r0 - quot * r1
        s0, s1 = s1, s0 - quot * s1
    if abs(s1) > bound or s1 == 0:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Frac(r1, s1) if s1 > 0 else Frac(-r1, -s1)


def _exact_kernel_of_rows(dense_rows: list[list[int]], ncols: int) -> list[list[Frac]]:
    """Exact kernel basis of an integer matrix by forward echelon elimination
    and back substitution.  Deterministic first-nonzero pivoting."""
    rows = [list(r) for r in dense_rows]
    piv_cols: list[int] = []
    piv_rows: list[list[int]] = []
    level = 0
    for c in range(ncols):
        src = None
        for i in range(level, len(rows)):
            if rows[i][c]:
                src = i
                break
        if src is None:
            continue
        rows[level], rows[src] = rows[src], rows[level]
        piv = rows[level]
        pv = piv[c]
        for i in range(level + 1, len(rows)):
            ri = rows[i]
            f = ri[c]
            if f:
                rows[i] = ri = [a * pv - b * f for a, b in zip(ri, piv)]
                g = 0
                for e in ri:
                    g = gcd(g, abs(e))
                    if g == 1:
                        break
                if g > 1:
                    rows[i] = [e // g for e in ri]
        piv_cols.append(c)
        piv_rows.append(piv)
        level += 1
        if level == len(rows):
            break
    piv_set = set(piv_cols)
    free = [c for c in range(ncols) if c not in piv_set]
    basis = []
    for fc in free:
        v = [Frac(0)] * ncols
        v[fc] = Frac(1)
        for k in range(len(piv_rows) - 1, -1, -1):
            row = piv_rows[k]
            pc = piv_cols[k]
            acc = Frac(0)
            for c in range(pc + 1, ncols):
                if row[c] and v[c]:
                    acc += row[c] * v[c]
            v[pc] = -acc / row[pc]
        basis.append(v)
    return basis


def _verify_kernel(sys: AdditivitySystem, basis: list[list[Frac]]) -> int | None:
    """Index of the first row not annihilated by some basis vector, or None."""
    for ridx, (idxs, coefs) in enumerate(sys.rows):
        for v in basis:
            if sum(c * v[i] for i, c in zip(idxs, coefs)) != 0:
                return ridx
    return None


def _dense_row(sys: AdditivitySystem, ridx: int) -> list[int]:
    row = [0] * sys.num_vars
    idxs, coefs = sys.rows[ridx]
    for i, c in zip(idxs, coefs):
        row[i] = c
    return row


def kernel_data(sys: AdditivitySystem) -> tuple[int, list[list[Frac]]]:
    """Exact kernel dimension and basis of the coefficient matrix.

    Full modular rank proves a trivial kernel outright.  Otherwise the
    modularly independent rows (independent over Q a fortiori) are solved,
    first through rational reconstruction of the modular echelon and, if that
    fails, by exact integer elimination; the candidate basis is then verified
    exactly against every row, pulling in any violated row and repeating.
    """
    p = _PRIME
    basis_p, piv_cols, src_rows = _mod_rref(sys, p)
    ncols = sys.num_vars
    if len(piv_cols) == ncols:
        return 0, []

    subset = list(src_rows)
    recon = _reconstructed_kernel(basis_p, piv_cols, ncols, p)
    if recon is not None and _verify_kernel(sys, recon) is None:
        return len(recon), recon

    while True:
        dense = [_dense_row(sys, r) for r in subset]
        basis = _exact_kernel_of_rows(dense, ncols)
        bad = _verify_kernel(sys, basis)
        if bad is None:
            return len(basis), basis
        subset.append(bad)


def _reconstructed_kernel(basis_p, piv_cols, ncols: int, p: int):
    piv_set = set(piv_cols)
    free = [c for c in range(ncols) if c not in piv_set]
    out = []
    for fc in free:
        v = [Frac(0)] * ncols
        v[fc] = Frac(1)
        for k, pc in enumerate(piv_cols):
            a = int(basis_p[k, fc])
            if a == 0:
                continue
            lifted = _rational_reconstruct((-a) % p, p)
            if lifted is None:
                return None
            v[pc] = lifted
        out.append(v)
    return out


def solution_space_dim(sys: AdditivitySystem) -> int:
    """Dimension of the affine solution set; zero means uniquely solvable."""
    return kernel_data(sys)[0]


def restrict_to_finite_group(pi: PwlFunction, n: int) -> dict:
    """The grid sample of the function at resolution n (a multiple of q);
    extremality of this finite-group restriction is equivalent to the system
    at the same resolution being uniquely solvable."""
    if n % pi.q != 0:
        raise ValueError(f"n = {n} must be a multiple of q = {pi.q}")
    fine = pi.refine(n // pi.q)
    return {(a, b): fine.grid_value(a, b) for a in range(n) for b in range(n)}


@dataclass
class Certificate:
    perturbation: Perturbation
    epsilon: Frac
    split: tuple[PwlFunction, PwlFunction]


@dataclass
class ExtremalityVerdict:
    extreme: bool
    kernel_dim: int
    m: int
    certificate: Certificate | None


def kernel_perturbation(pi: PwlFunction, sys: AdditivitySystem,
                        basis: list[list[Frac]], m: int) -> Perturbation:
    """Interpolate the first kernel basis vector as a perturbation on the
    refined grid.  Kernel vectors vanish at the origin and at f by the
    pinning rows, and satisfy every additivity of the function by the
    remaining rows."""
    n = sys.n
    vec = basis[0]
    vals = [[vec[a * n + b] for b in range(n)] for a in range(n)]
    base = PwlFunction(n, pi.f, vals)
    return Perturbation(base=base, m=m, region=frozenset(), flavor=Flavor.KERNEL)


def decide_extreme(pi: PwlFunction, m: int = 3) -> ExtremalityVerdict:
    """Decide extremality of a minimal function through the system at
    resolution m*q.

    A trivial kernel yields Extreme, provided the function is diagonally
    constrained and genuinely two-dimensional (the preconditions of the
    equivalence); failing either precondition with a trivial kernel raises
    the matching error, since extremality cannot be certified then.  A
    nontrivial kernel is sound evidence of non-extremality regardless of
    those two preconditions, and ships a verified certificate: a structured
    perturbation from the covering graph when one exists, otherwise a kernel
    element.
    """
    if m < 3:
        raise ValueError("m must be at least 3")
    require_f_vertex(pi)
    report = check_minimal(pi)
    if not report:
        raise NotMinimal(report)
    gen2d, witness = is_genuinely_2d(pi)
    faces = additive_faces(pi)
    emax = maximal_additive_faces(pi, faces)
    dc, bad_face = is_diagonally_constrained(pi, emax)

    sys = assemble_system(pi, m * pi.q)
    dim, basis = kernel_data(sys)
    if dim == 0:
        if not dc:
            raise NotDiagonallyConstrained(bad_face, kernel_dim=0)
        if not gen2d:
            raise NotGenuinely2D(witness, kernel_dim=0)
        return ExtremalityVerdict(extreme=True, kernel_dim=0, m=m, certificate=None)

    pert = None
    if dc:
        cover = covered_sets(pi, faces)
        if not cover.fully_covered:
            pert = build_perturbation(pi, cover, m)
    if pert is None:
        pert = kernel_perturbation(pi, sys, basis, m)
    eps = epsilon_for(pi, pert)
    hi, lo = split(pi, pert, eps)
    cert = Certificate(perturbation=pert, epsilon=eps, split=(hi, lo))
    return ExtremalityVerdict(extreme=False, kernel_dim=dim, m=m, certificate=cert)
