import pytest

from membranelab import (
    BoundaryCircle,
    ModelParams,
    integrate_profile,
    shoot_sigma0,
    sigma0_stop,
    solve_h,
)

from _oracles import TABLE1_ZO


@pytest.fixture(scope="session")
def curve26():
    return integrate_profile(ModelParams(2.0, -0.6), sigma0_stop())


@pytest.fixture(scope="session")
def lin26(curve26):
    return solve_h(curve26)


@pytest.fixture(scope="session")
def table1_curves():
    return {
        z_o: integrate_profile(ModelParams(2.0, z_o), sigma0_stop())
        for z_o in TABLE1_ZO
    }


@pytest.fixture(scope="session")
def table1_lins(table1_curves):
    return {z_o: solve_h(c) for z_o, c in table1_curves.items()}


@pytest.fixture(scope="session")
def circle053():
    return BoundaryCircle(0.5, -3.0)


@pytest.fixture(scope="session")
def sig053(circle053):
    return shoot_sigma0(circle053)


@pytest.fixture(scope="session")
def lin053(sig053):
    return solve_h(sig053.curve)
