import cmath
import math

import numpy as np
import pytest

from schrodinger_mop.decompose import (
    assembled_vector,
    chi,
    chi_matrix,
    convolved_table,
    gessel_seed,
    phi,
    phi_matrix,
    psi_convolved,
)
from schrodinger_mop.elements import psi_oracle, psi_table, seed_columns
from schrodinger_mop.errors import ConvergenceError, SingularParameterError
from schrodinger_mop.group import GroupParams


def test_factors_are_unitary(p):
    X = chi_matrix(p, 80, 80)
    F = phi_matrix(p, 80, 80)
    np.testing.assert_allclose((X @ X.conj().T)[:20, :20], np.eye(20), atol=1e-12)
    np.testing.assert_allclose((F @ F.conj().T)[:20, :20], np.eye(20), atol=1e-12)


def test_phi_parity(p):
    assert phi(p, 3, 4) == 0
    assert phi(p, 2, 5) == 0
    assert phi(p, 0, 0) == pytest.approx(1 / math.sqrt(p.ch))


def test_chi_vacuum(p):
    # <k|D|0> is a Poisson amplitude
    for k in range(6):
        ref = math.exp(-p.sigma**2 / 2) * (-p.v.conjugate()) ** k / math.sqrt(math.factorial(k))
        assert chi(p, 0, k) == pytest.approx(ref, abs=1e-15)


def test_convolution_matches_recurrence(params):
    np.testing.assert_allclose(convolved_table(params, 10, 10).entries, psi_table(params, 10, 10).entries, atol=1e-9)


@pytest.mark.parametrize("n,k", [(0, 0), (4, 9), (10, 3)])
def test_scalar_convolution(p, n, k):
    assert psi_convolved(p, n, k) == pytest.approx(psi_table(p, 10, 10)[n, k], abs=1e-10)


def test_convolution_needs_enough_terms():
    with pytest.raises(ConvergenceError):
        psi_convolved(GroupParams(1.1, 0, 0.9, 0), 6, 6, mcut=12)
    with pytest.raises(ConvergenceError):
        convolved_table(GroupParams(1.1, 0, 0.9, 0), 6, 6, mcut=30)


@pytest.mark.parametrize(
    "q", [GroupParams(0.8, 0.3, 0.0, 0.0), GroupParams(0.0, 0.0, 0.6, 0.7), GroupParams()]
)
def test_specializations(q):
    np.testing.assert_allclose(convolved_table(q, 8, 8).entries, psi_oracle(q, 8, 8).entries, atol=1e-13)


@pytest.mark.parametrize("k", [0, 1, 6, 14])
def test_gessel_seed(params, k):
    psi0, psi1 = seed_columns(params, k)
    np.testing.assert_allclose(gessel_seed(params, k), [psi0[k], psi1[k]], atol=1e-13)
    with pytest.raises(SingularParameterError):
        gessel_seed(GroupParams(0, 0, 0.3, 0), k)


@pytest.mark.parametrize("n,k", [(0, 0), (1, 5), (3, 2), (4, 10)])
def test_assembled_vector(params, n, k):
    table = psi_table(params, 9, 10).entries
    np.testing.assert_allclose(assembled_vector(params, n, k), table[2 * n : 2 * n + 2, k], atol=1e-10)


def test_charlier_recurrence_phase(p):
    # k chi_n = -s e^{-i d} sqrt(n+1) chi_{n+1} + (n + s^2) chi_n - s e^{+i d} sqrt(n) chi_{n-1}
    s, d = p.sigma, p.delta
    for k in (0, 3, 7):
        for n in range(1, 10):
            rhs = (
                -s * cmath.exp(-1j * d) * math.sqrt(n + 1) * chi(p, n + 1, k)
                + (n + s * s) * chi(p, n, k)
                - s * cmath.exp(1j * d) * math.sqrt(n) * chi(p, n - 1, k)
            )
            assert k * chi(p, n, k) == pytest.approx(rhs, abs=1e-13)
