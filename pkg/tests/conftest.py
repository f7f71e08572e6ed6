import pytest

from symsums import make_field


@pytest.fixture(scope="session")
def F2():
    return make_field(2)


@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@pytest.fixture(scope="session")
def F4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def F8():
    return make_field(2, 3)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2)
