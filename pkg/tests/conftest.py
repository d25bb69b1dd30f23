import pytest

from unitalforge import gf, planar, unital as un
from unitalforge.plane import ShiftPlane


@pytest.fixture(scope="session")
def s9():
    return gf.split_new(gf.field_new(3, 2), 1)


@pytest.fixture(scope="session")
def s25():
    return gf.split_new(gf.field_new(5, 2), 1)


@pytest.fixture(scope="session")
def s81():
    return gf.split_new(gf.field_new(3, 4), 2)


@pytest.fixture(scope="session")
def s729():
    return gf.split_new(gf.field_new(3, 6), 3)


@pytest.fixture(scope="session")
def plane_q3(s9):
    return ShiftPlane(planar.square(s9))


@pytest.fixture(scope="session")
def plane_q5(s25):
    return ShiftPlane(planar.square(s25))


@pytest.fixture(scope="session")
def plane_cm81(s81):
    return ShiftPlane(planar.coulter_matthews(s81, 3))


@pytest.fixture(scope="session")
def unital_q3(plane_q3):
    return un.build_parabolic_unital(plane_q3, plane_q3.split.choose_theta())


@pytest.fixture(scope="session")
def unital_q5(plane_q5):
    return un.build_parabolic_unital(plane_q5, plane_q5.split.choose_theta())


@pytest.fixture(scope="session")
def unital_cm81(plane_cm81):
    return un.build_parabolic_unital(plane_cm81, plane_cm81.split.choose_theta())


@pytest.fixture(scope="session")
def classical_q3(s9):
    return un.build_classical_baseline(s9)


@pytest.fixture(scope="session")
def polarity_q3(plane_q3):
    return un.build_polarity_unital(plane_q3, un.InvolutionSpec("frobq"))
