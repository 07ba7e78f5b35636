"""Shared fixtures: spacing solves are expensive, so do each alpha once."""

import pytest

from repulse import auxfn, potential


@pytest.fixture(scope="session")
def ctx4():
    return potential.solve_s_alpha(4, 1e-12)


@pytest.fixture(scope="session")
def ctx6():
    return potential.solve_s_alpha(6, 1e-12)


@pytest.fixture(scope="session")
def ctx8():
    return potential.solve_s_alpha(8, 1e-12)


@pytest.fixture(scope="session")
def ctx10():
    return potential.solve_s_alpha(10, 1e-12)


@pytest.fixture(scope="session")
def ctx12():
    return potential.solve_s_alpha(12, 1e-12)


@pytest.fixture(scope="session")
def ctx_by_alpha(ctx4, ctx6, ctx8, ctx10, ctx12):
    return {4: ctx4, 6: ctx6, 8: ctx8, 10: ctx10, 12: ctx12}


@pytest.fixture(scope="session")
def coeffs4(ctx4):
    return auxfn.build_coefficients(ctx4, 256)


@pytest.fixture(scope="session")
def coeffs6(ctx6):
    return auxfn.build_coefficients(ctx6, 256)


@pytest.fixture(scope="session")
def coeffs_by_alpha(ctx_by_alpha):
    return {a: auxfn.build_coefficients(ctx_by_alpha[a], 256) for a in (4, 6, 8, 10)}
