"""Exception types shared across the package."""


class PwlExtError(Exception):
    """Base class for all package-specific errors."""


class FNotVertex(PwlExtError):
    """The marked point f is not a vertex of the complex (or lies on the lattice)."""


class NotSubadditive(PwlExtError):
    """A negative subadditivity slack was found where nonnegativity was required."""

    def __init__(self, witness, value):
        self.witness = witness  # a DeltaValue sample
        self.value = value
        super().__init__(f"subadditivity violated at {witness}: slack {value}")


class NotDiagonallyConstrainedFace(PwlExtError):
    """A face projection is a horizontal or vertical edge."""


class MTooSmall(PwlExtError):
    """Refinement factor m must be at least 3."""


class Covered(PwlExtError):
    """All triangle classes are covered; no point/diagonal perturbation exists."""


class DegeneratePerturbation(PwlExtError):
    """The perturbation has identically zero subadditivity slack on the test grid."""


class SplitNotMinimal(PwlExtError):
    """A constructed split failed the minimality test (internal consistency bug)."""


class NotMinimal(PwlExtError):
    """The function failed the minimality test."""

    def __init__(self, report):
        self.report = report
        super().__init__("function is not minimal")


class NotDiagonallyConstrained(PwlExtError):
    """The function has a maximal additive face with a horizontal or vertical edge projection."""

    def __init__(self, face, kernel_dim=None):
        self.face = face
        self.kernel_dim = kernel_dim
        super().__init__("function is not diagonally constrained")


class NotGenuinely2D(PwlExtError):
    """The function factors through a lower dimension."""

    def __init__(self, witness, kernel_dim=None):
        self.witness = witness
        self.kernel_dim = kernel_dim
        super().__init__(f"function is constant along direction {witness}")
