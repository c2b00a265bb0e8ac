import numpy as np
import pytest

import holoalg as ha


@pytest.fixture(scope="session")
def dual():
    return ha.dual_numbers()


@pytest.fixture(scope="session")
def split():
    return ha.split_complex()


@pytest.fixture(scope="session")
def cplane():
    return ha.complex_as_plane()


@pytest.fixture(scope="session")
def cline():
    return ha.complex_line()


@pytest.fixture(scope="session")
def t3():
    return ha.truncated_polynomials(3)


@pytest.fixture(scope="session")
def cc(cline):
    return ha.direct_sum(cline, cline)


@pytest.fixture(scope="session")
def dual_plus_c(dual, cline):
    return ha.direct_sum(dual, cline)


@pytest.fixture(scope="session")
def id_dual(dual):
    return ha.identity_morphism(dual)


@pytest.fixture(scope="session")
def id_split(split):
    return ha.identity_morphism(split)


@pytest.fixture(scope="session")
def sigma_dual(dual, cline):
    """The spectral projection z + w eps |-> z as a morphism."""
    return ha.build_morphism(dual, cline, [[1, 0]])


def cubic_example(dual, id_dual):
    """(1+2e)Z^3 + (-1+e)Z^2 + (1+3e): the workhorse holomorphic cubic."""
    return ha.PowerSeries.polynomial(
        id_dual, dual.zero(),
        [dual.element([1, 3]), dual.zero(), dual.element([-1, 1]), dual.element([1, 2])])


@pytest.fixture(scope="session")
def cubic(dual, id_dual):
    return cubic_example(dual, id_dual)


def assert_coords(element, expected, tol=1e-10):
    gap = np.abs(element.coords - np.asarray(expected, dtype=complex)).max()
    assert gap <= tol, f"coords {element.coords} differ from {expected} by {gap:.3e}"
