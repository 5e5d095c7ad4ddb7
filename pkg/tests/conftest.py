from pathlib import Path

import pytest

from pwlext.pwl import load_function

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def golden():
    """The worked q=5 example: minimal, diagonally constrained."""
    return load_function(DATA / "example_q5.json")


@pytest.fixture(scope="session")
def golden_avg():
    """Average of the worked example and its coordinate transpose: minimal
    and not extreme by construction."""
    return load_function(DATA / "average_q5.json")


@pytest.fixture(scope="session")
def diag_embed():
    """Diagonal embedding of the two-slope function with singularity at 4/5:
    minimal, diagonally constrained, extreme, not genuinely 2-D."""
    return load_function(DATA / "diag_embed_gmic_q5.json")


@pytest.fixture(scope="session")
def product_avg():
    """Coordinatewise average (g(x1)+g(x2))/2 of a two-slope function:
    minimal, genuinely 2-D, not extreme (average of the two axis embeddings)."""
    return load_function(DATA / "product_average_q5.json")


@pytest.fixture(scope="session")
def stripe():
    """Diagonal embedding of the flat one-parameter family member: minimal,
    every triangle covered but a diagonal band only weakly, not extreme."""
    return load_function(DATA / "diagonal_stripe_q5.json")


@pytest.fixture(scope="session")
def extreme_q4():
    """A genuinely two-dimensional, diagonally constrained extreme function
    at q=4, f=(1/4,1/4), found by exhaustive search over symmetric quarter
    grids and certified by the unique-solution test at m = 3, 4 and 5."""
    return load_function(DATA / "extreme_q4.json")
