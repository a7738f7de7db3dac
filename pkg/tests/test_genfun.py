import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schrodinger_mop.elements import psi_table, seed_columns
from schrodinger_mop.errors import ConvergenceError, SingularParameterError
from schrodinger_mop.genfun import (
    HERMITE2_MAX_ORDER,
    f_closed,
    f_derivative,
    f_series,
    g_closed,
    g_series,
    hermite2_table,
    hermite2_vector_sides,
    psi_via_hermite2,
)
from schrodinger_mop.group import GroupParams

disk = st.builds(complex, st.floats(-0.35, 0.35), st.floats(-0.35, 0.35))


@given(x=disk, y=disk)
@settings(max_examples=30, deadline=None)
def test_g_series_matches_closed_form(x, y):
    p = GroupParams(0.7, 0.1, 0.3, 0.5)
    assert g_series(p, x, y) == pytest.approx(g_closed(p, x, y), abs=1e-12)


def test_g_series_edge_check():
    with pytest.raises(ConvergenceError):
        g_series(GroupParams(1.1, 0, 0.9, 0), 1.5, 1.5, ncut=10, kcut=10)


def test_g_at_degenerate_parameters():
    q = GroupParams(0.5, 0.2, 0.0, 0.0)
    assert g_series(q, 0.3, -0.2j) == pytest.approx(g_closed(q, 0.3, -0.2j), abs=1e-13)


def test_hermite2_route(p):
    a = hermite2_table(p, 12, 8).entries
    np.testing.assert_allclose(a, psi_table(p, 12, 8).entries, atol=1e-10)
    assert psi_via_hermite2(p, 3, 2) == pytest.approx(a[3, 2], abs=1e-15)
    assert psi_via_hermite2(p, 0, 0) == pytest.approx(psi_table(p, 0, 0)[0, 0], abs=1e-15)


def test_hermite2_identity_at_origin():
    t = hermite2_table(GroupParams(), 5, 5)
    np.testing.assert_allclose(t.entries, np.eye(6), atol=1e-15)


def test_hermite2_cap(p):
    with pytest.raises(ValueError):
        hermite2_table(p, 40, HERMITE2_MAX_ORDER - 39)


@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("k", [0, 4, 10])
def test_hermite2_vector_identity(params, n, k):
    lhs, rhs = hermite2_vector_sides(params, n, k)
    np.testing.assert_allclose(lhs, rhs, atol=1e-9)


@pytest.mark.parametrize("k", [0, 1, 5, 9])
def test_f_at_zero_and_derivative(params, k):
    psi0, psi1 = seed_columns(params, k)
    assert f_closed(params, k, 0) == pytest.approx(psi0[k], abs=1e-13)
    assert f_derivative(params, k) == pytest.approx(psi1[k], abs=1e-7)


@pytest.mark.parametrize("y", [0.4, 0.4j, -0.3 + 0.2j])
def test_f_series(p, y):
    assert f_series(p, 3, y) == pytest.approx(f_closed(p, 3, y), abs=1e-12)


def test_f_needs_rho():
    with pytest.raises(SingularParameterError):
        f_closed(GroupParams(0.3, 0, 0, 0), 1, 0.1)
