import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schrodinger_mop.elements import (
    PsiTable,
    compute_table,
    expm,
    ladder_apply,
    psi00,
    psi_oracle,
    psi_seed,
    psi_table,
    seed_columns,
    seed_columns_alt,
    unitarity_defect,
)
from schrodinger_mop.errors import ConditioningWarning, SingularParameterError, TruncationError
from schrodinger_mop.group import GroupParams

# psi_{n,k} at (0.7, 0.1, 0.3, 0.5) from scipy.linalg.expm on a 300-level truncation
FROZEN = {
    (0, 0): 0.7149256579309221 + 0.015081267556804152j,
    (1, 0): 0.47534255019827387 + 0.05784305826699773j,
    (0, 3): -0.004039913733647229 - 0.040408455382106315j,
    (3, 2): 0.07762129596651439 - 0.015460457542172693j,
    (5, 7): 0.5464472570738105 - 0.18561232410454936j,
    (12, 12): 0.3020372096272991 + 0.09948489615582876j,
}
# same at (1.1, 2.0, 0.9, 0.4)
FROZEN_B = {
    (2, 5): -0.14006708490070333 + 0.12195158599291997j,
    (7, 1): 0.0480227371120738 - 0.23088492066137173j,
}


@pytest.mark.parametrize("nk", sorted(FROZEN))
def test_recurrence_matches_frozen(p, nk):
    assert psi_table(p, 12, 12)[nk] == pytest.approx(FROZEN[nk], abs=1e-9)


@pytest.mark.parametrize("nk", sorted(FROZEN_B))
def test_recurrence_matches_frozen_far(nk):
    q = GroupParams(1.1, 2.0, 0.9, 0.4)
    assert psi_table(q, 8, 8)[nk] == pytest.approx(FROZEN_B[nk], abs=1e-10)


def test_psi00(p):
    assert psi00(p) == pytest.approx(FROZEN[(0, 0)], abs=1e-14)


def test_identity_element():
    t = psi_oracle(GroupParams(), 3, 3)
    np.testing.assert_allclose(t.entries, np.eye(4), atol=1e-15)


def test_expm_against_scipy():
    scipy_linalg = pytest.importorskip("scipy.linalg")
    rng = np.random.default_rng(7)
    M = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    M *= 3 / np.linalg.norm(M, 1)
    ref = scipy_linalg.expm(M)
    assert np.max(np.abs(expm(M) - ref)) <= 1e-12 * np.max(np.abs(ref))


def test_oracle_dimension_checks(p):
    with pytest.raises(ValueError):
        psi_oracle(p, 10, 10, dim=20)
    with pytest.raises(TruncationError):
        psi_oracle(GroupParams(0.5, 0, 3.0, 0), 12, 12, max_dim=128)


def test_seed_forms_agree(params):
    _, psi1 = seed_columns(params, 30)
    np.testing.assert_allclose(seed_columns_alt(params, 30), psi1, atol=1e-14)
    assert psi_seed(params, 4)[1] == psi1[4]


@pytest.mark.parametrize("k", [1, 5, 30])
def test_ladder_moves_seed(params, k):
    psi0, psi1 = seed_columns(params, k + 1)
    seeds = np.stack([psi0, psi1], axis=1)
    np.testing.assert_allclose(ladder_apply(params, k, seeds[k], "lower"), np.sqrt(k) * seeds[k - 1], atol=1e-14)
    np.testing.assert_allclose(ladder_apply(params, k, seeds[k], "raise"), np.sqrt(k + 1) * seeds[k + 1], atol=1e-14)
    with pytest.raises(ValueError):
        ladder_apply(params, k, seeds[k], "sideways")


def test_psi_table_rejects_degenerate():
    with pytest.raises(SingularParameterError):
        psi_table(GroupParams(0.5, 0, 0, 0), 3, 3)
    with pytest.raises(SingularParameterError):
        psi_table(GroupParams(0.0, 0, 0.5, 0), 3, 3)


def test_psi_table_warns_near_singular_limit():
    with pytest.warns(ConditioningWarning):
        psi_table(GroupParams(0.5, 0, 1e-6, 0), 8, 4)


def test_psitable_validates():
    with pytest.raises(ValueError):
        PsiTable(GroupParams(), 1, 1, np.zeros((3, 2)), "oracle")
    with pytest.raises(ValueError):
        PsiTable(GroupParams(), 1, 1, np.zeros((2, 2)), "magic")
    t = PsiTable(GroupParams(), 1, 1, np.zeros((2, 2)), "oracle")
    with pytest.raises(ValueError):
        t.entries[0, 0] = 1


@pytest.mark.parametrize("route", ["recurrence", "convolution", "hermite2", "oracle"])
def test_routes_agree(p, route):
    t = compute_table(p, 6, 6, route=route)
    assert t.route == route
    np.testing.assert_allclose(t.entries, psi_oracle(p, 6, 6).entries, atol=1e-9)


def test_auto_route_falls_back():
    assert compute_table(GroupParams(0.4, 0, 0, 0), 2, 2).route == "convolution"
    assert compute_table(GroupParams(0.4, 0, 0.2, 0), 2, 2).route == "recurrence"
    with pytest.raises(ValueError):
        compute_table(GroupParams(0.4, 0, 0.2, 0), 2, 2, route="bogus")


@given(
    sigma=st.floats(0.05, 1.2),
    delta=st.floats(-3, 3),
    rho=st.floats(0.25, 0.9),
    theta=st.floats(-3, 3),
)
@settings(max_examples=25, deadline=None)
def test_rows_are_unit_vectors(sigma, delta, rho, theta):
    q = GroupParams(sigma, delta, rho, theta)
    table = psi_table(q, 6, 200)
    for n in range(7):
        assert unitarity_defect(q, n, n, 200, table) < 1e-9
    assert unitarity_defect(q, 2, 5, 200, table) < 1e-9
