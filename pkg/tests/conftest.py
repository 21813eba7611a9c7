import pytest

from modalsat.corpus import exhaustive_formulas
from modalsat.formula import POOR_MANS


@pytest.fixture(scope="session")
def poor_corpus():
    """Exhaustive poor man's corpus: 2 variables, modal depth 2, 3 units per level."""
    return exhaustive_formulas(POOR_MANS, 2, 2, 3)


@pytest.fixture(scope="session")
def small_poor_corpus():
    return exhaustive_formulas(POOR_MANS, 1, 2, 3)
