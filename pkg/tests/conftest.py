import pytest

from models.cover import CoverData, CoverMatrix, character_table, from_rows
from models.residue import ResidueVector


@pytest.fixture
def cyclic_cover() -> CoverMatrix:
    """N=4, one row (1,1,1,3,3,3): genus 6, ramified involution."""
    return from_rows(4, [[1, 1, 1, 3, 3, 3]])


@pytest.fixture
def cyclic_data(cyclic_cover) -> CoverData:
    return character_table(cyclic_cover)


@pytest.fixture
def klein_cover() -> CoverMatrix:
    """N=2, rows (1,1,1,1)/(0,1,0,1): an elliptic curve."""
    return from_rows(2, [[1, 1, 1, 1], [0, 1, 0, 1]])


@pytest.fixture
def klein_data(klein_cover) -> CoverData:
    return character_table(klein_cover)


@pytest.fixture
def etale_cover() -> CoverMatrix:
    """N=2, columns a,a,b,b,c,c with a=(1,0,0), b=(0,1,0), c=(1,1,1)."""
    return from_rows(2, [
        [1, 1, 0, 0, 1, 1],
        [0, 0, 1, 1, 1, 1],
        [0, 0, 0, 0, 1, 1],
    ])


@pytest.fixture
def etale_data(etale_cover) -> CoverData:
    return character_table(etale_cover)


def vec(modulus: int, *entries: int) -> ResidueVector:
    return ResidueVector(modulus, tuple(entries))
