"""Charlier/Meixner factorization of the matrix elements.

Splitting ``S = D(v) Sq(w)`` into a displacement and a squeeze gives
``psi_{n,k} = sum_m chi_{m,k} phi_{n,m}`` with

* ``chi_{m,k} = <k|D|m>``, a Charlier polynomial in the Fock labels;
* ``phi_{n,m} = <m|Sq|n>``, zero unless ``n`` and ``m`` share parity, and a
  Meixner polynomial in the half-labels otherwise.

At ``rho = 0`` only ``chi`` survives and at ``sigma = 0`` only ``phi``, so this
is also how the degenerate parameter values are handled.

All factorial prefactors are combined in log space with ``math.lgamma``.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .elements import PsiTable
from .errors import ConvergenceError, SingularParameterError
from .group import GroupParams
from .polykernel import charlier, gessel_even, gessel_odd, meixner

__all__ = [
    "chi",
    "phi",
    "chi_matrix",
    "phi_matrix",
    "psi_convolved",
    "convolved_table",
    "assembled_vector",
    "gessel_seed",
]


def _log_fact(n):
    return math.lgamma(n + 1)


def chi(p: GroupParams, n: int, k: int) -> complex:
    """Displacement element ``<k|exp(v a - conj(v) a+)|n>``."""
    if n < 0 or k < 0:
        raise ValueError("Fock labels must be nonnegative")
    s = p.sigma
    if s == 0:
        return 1.0 + 0j if n == k else 0j
    log_mag = (n + k) * math.log(s) - 0.5 * (_log_fact(n) + _log_fact(k)) - 0.5 * s * s
    phase = cmath.exp(1j * p.delta * (n - k))
    return (-1) ** k * math.exp(log_mag) * phase * charlier(n, k, s * s)


def phi(p: GroupParams, n: int, m: int) -> complex:
    """Squeeze element ``<m|exp((w a^2 - conj(w) a+^2)/2)|n>``.

    The Meixner polynomial is evaluated at the half-label of ``m``:
    ``phi_{2a, 2b}`` uses ``M_a(b; 1/2, th^2)`` and ``phi_{2a+1, 2b+1}`` uses
    ``M_a(b; 3/2, th^2)``.
    """
    if n < 0 or m < 0:
        raise ValueError("Fock labels must be nonnegative")
    if (n - m) % 2:
        return 0j
    if p.rho == 0:
        return 1.0 + 0j if n == m else 0j
    odd = n % 2
    a, b = n // 2, m // 2
    th = p.th
    log_mag = (
        0.5 * (_log_fact(2 * b + odd) + _log_fact(2 * a + odd))
        - _log_fact(a)
        - _log_fact(b)
        - (a + b) * math.log(2.0)
        + (a + b) * math.log(th)
        - (0.5 + odd) * math.log(p.ch)
    )
    beta = 1.5 if odd else 0.5
    phase = cmath.exp(1j * (a - b) * p.theta)
    return (-1) ** b * math.exp(log_mag) * phase * meixner(a, b, beta, th * th)


def chi_matrix(p: GroupParams, mmax: int, kmax: int) -> np.ndarray:
    """``X[m, k] = chi_{m,k}``."""
    return np.array([[chi(p, m, k) for k in range(kmax + 1)] for m in range(mmax + 1)])


def phi_matrix(p: GroupParams, nmax: int, mmax: int) -> np.ndarray:
    """``F[n, m] = phi_{n,m}``."""
    return np.array([[phi(p, n, m) for m in range(mmax + 1)] for n in range(nmax + 1)])


def _settled(terms, tol=1e-14):
    """True when the last ten nonzero-capable terms are negligible."""
    tail = np.abs(np.asarray(terms)[-10:])
    scale = max(float(np.max(np.abs(terms))), 1e-300)
    return float(np.max(tail)) <= tol * scale


def psi_convolved(p: GroupParams, n: int, k: int, mcut: int = 200) -> complex:
    """``sum_{m <= mcut} chi_{m,k} phi_{n,m}`` over ``m`` of the parity of ``n``.

    The sum stops early once ten consecutive terms are below ``1e-16`` of the
    largest one; if ``mcut`` is reached first, the last ten terms must still be
    below ``1e-14`` of it or :class:`ConvergenceError` is raised.
    """
    if n < 0 or k < 0:
        raise ValueError("Fock labels must be nonnegative")
    if p.rho == 0:
        return chi(p, n, k)
    if p.sigma == 0:
        return phi(p, n, k)
    total, biggest, quiet, terms = 0j, 0.0, 0, []
    for m in range(n % 2, mcut + 1, 2):
        term = chi(p, m, k) * phi(p, n, m)
        terms.append(term)
        total += term
        biggest = max(biggest, abs(term))
        quiet = quiet + 1 if abs(term) <= 1e-16 * biggest else 0
        if quiet >= 10:
            return total
    if len(terms) < 10 or not _settled(terms):
        raise ConvergenceError(f"convolution for psi_({n},{k}) not settled by mcut={mcut}")
    return total


def convolved_table(p: GroupParams, nmax: int, kmax: int, mcut: int = 200) -> PsiTable:
    """Whole table by the convolution route as one product ``F @ X``."""
    if p.rho == 0:
        entries = chi_matrix(p, nmax, kmax)
    elif p.sigma == 0:
        entries = phi_matrix(p, nmax, kmax).astype(complex)
    else:
        X = chi_matrix(p, mcut, kmax)
        F = phi_matrix(p, nmax, mcut)
        contrib = np.abs(F[:, :, None] * X[None, :, :])
        scale = max(float(contrib.max()), 1e-300)
        if float(contrib[:, -10:, :].max()) > 1e-14 * scale:
            raise ConvergenceError(f"convolution tail above 1e-14 at mcut={mcut}")
        entries = F @ X
    return PsiTable(p, nmax, kmax, entries, "convolution")


def assembled_vector(p: GroupParams, n: int, k: int, mcut: int = 200) -> np.ndarray:
    """``Psi_{n,k}`` from the single-sum form that merges both factors.

    Both components sum ``(-sigma^2 t)^m / (2^m m!)`` against
    ``C_{2m}(k) M_n(m; 1/2, th^2)`` and ``C_{2m+1}(k) M_n(m; 3/2, th^2)``,
    where ``t = e^{i(2 delta - theta)} th(rho)``.
    """
    p.require_generic()
    s, th, ch = p.sigma, p.th, p.ch
    a, c = s * s, th * th
    t = cmath.exp(1j * (2 * p.delta - p.theta)) * th
    log_pref = k * math.log(s) - 0.5 * _log_fact(k) - n * math.log(2) - _log_fact(n) - 0.5 * a
    pref = (-1) ** k * math.exp(log_pref) * cmath.exp(1j * (n * p.theta - k * p.delta)) * th**n
    z = -a * t / 2
    top = bottom = 0j
    term_scale = 1.0 + 0j
    for m in range(mcut + 1):
        if m > 0:
            term_scale *= z / m
        top += term_scale * charlier(2 * m, k, a) * meixner(n, m, 0.5, c)
        bottom += term_scale * charlier(2 * m + 1, k, a) * meixner(n, m, 1.5, c)
        if abs(term_scale) < 1e-300:
            break
    top *= math.exp(0.5 * _log_fact(2 * n)) / math.sqrt(ch)
    bottom *= math.exp(0.5 * _log_fact(2 * n + 1)) / ch**1.5 * s * cmath.exp(1j * p.delta)
    return pref * np.array([top, bottom])


def gessel_seed(p: GroupParams, k: int) -> np.ndarray:
    """Seed vector ``(psi_{0,k}, psi_{1,k})`` from the finite Gessel sums.

    The even- and odd-degree Charlier series in the ``n = 0`` row of the
    convolution are replaced by their terminating closed forms, with Charlier
    parameter ``sigma^2`` and the complex ``t = e^{i(2 delta - theta)} th(rho)``.
    """
    if p.sigma == 0:
        raise SingularParameterError("the Gessel route needs sigma > 0 (Charlier a = sigma^2)")
    s, ch = p.sigma, p.ch
    a = s * s
    t = cmath.exp(1j * (2 * p.delta - p.theta)) * p.th
    pref = (-s * cmath.exp(-1j * p.delta)) ** k / math.sqrt(math.factorial(k)) * math.exp(-0.5 * a)
    _, even = gessel_even(k, a, t)
    _, odd = gessel_odd(k, a, t)
    return pref * np.array([even / math.sqrt(ch), s * cmath.exp(1j * p.delta) * odd / ch**1.5])
