import pytest

from weylsys.potentials import bessel_potential, free_potential
from weylsys.weyl import mfunction


@pytest.fixture(scope="session")
def bessel():
    return bessel_potential(1.5)


@pytest.fixture(scope="session")
def free():
    return free_potential(0.0)


@pytest.fixture(scope="session")
def mf_bessel_closed(bessel):
    return mfunction(bessel, "closed_form")


@pytest.fixture(scope="session")
def mf_bessel_engine(bessel):
    return mfunction(bessel, "riccati_engine")


@pytest.fixture(scope="session")
def mf_free_closed(free):
    return mfunction(free, "closed_form")


@pytest.fixture(scope="session")
def mf_free_engine(free):
    return mfunction(free, "riccati_engine")
