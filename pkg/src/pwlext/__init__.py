"""Exact certification of minimality and extremality for continuous piecewise
linear periodic functions on the standard triangulation of the plane."""

from .complex_pq import (
    FaceId,
    FaceKind,
    FaceSet,
    classify_point,
    face_as_b_vector,
    minkowski_sum,
    negate_face,
)
from .delta_complex import (
    DeltaFace,
    FaceType,
    additive_faces,
    face_type,
    is_diagonally_constrained,
    is_forced_face,
    is_symmetry_face,
    maximal_additive_faces,
    project,
)
from .covering import CoverReport, build_graph, covered_sets
from .extremality import (
    AdditivitySystem,
    ExtremalityVerdict,
    assemble_system,
    decide_extreme,
    restrict_to_finite_group,
    solution_space_dim,
)
from .minimality import MinimalityReport, check_minimal, check_minimal_at
from .perturbation import (
    Flavor,
    Perturbation,
    build_perturbation,
    epsilon_for,
    psi_diag,
    psi_point,
    split,
)
from .pwl import (
    DeltaValue,
    PwlFunction,
    dump_function,
    is_genuinely_2d,
    load_function,
    require_f_vertex,
)
from .rational import Frac, QMatrix, QPoint, frac_reduce, kernel_basis, qpoint

__version__ = "0.1.0"
