import pytest

from compactrepair import field_new


@pytest.fixture(scope="session")
def gf16():
    return field_new(2, 1, 4)


@pytest.fixture(scope="session")
def gf64():
    return field_new(2, 1, 6)


@pytest.fixture(scope="session")
def gf9():
    return field_new(3, 1, 2)


@pytest.fixture(scope="session")
def gf16_q4():
    """GF(16) viewed over the designated subfield F_4 (q = p^s = 4)."""
    return field_new(2, 2, 2)
