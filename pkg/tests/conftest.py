import pytest

from geomcode import build_conic_structure, build_hyperbolic_structure, make_field


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f5():
    return make_field(5)


@pytest.fixture(scope="session")
def f7():
    return make_field(7)


@pytest.fixture(scope="session")
def f9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def conic5(f5):
    return build_conic_structure(f5)


@pytest.fixture(scope="session")
def conic7(f7):
    return build_conic_structure(f7)


@pytest.fixture(scope="session")
def conic9(f9):
    return build_conic_structure(f9)


@pytest.fixture(scope="session")
def hyp3(f3):
    return build_hyperbolic_structure(f3)
