"""Scalar orthogonal polynomials used by the representation formulas.

Hermite, Laguerre, Charlier and Meixner polynomials are evaluated by forward
three-term recurrence in complex (or real) double precision.  The Charlier and
Meixner families are run through their monic recurrences with the
normalisation folded in as a running ratio, so no factorial or Pochhammer
symbol is ever formed explicitly.

For a nonnegative integer argument ``x`` the Charlier and Meixner sequences in
``n`` are the *minimal* solutions of their recurrences and forward iteration
past ``n > x`` loses all accuracy.  Both families are self-dual on the integer
lattice (``c_n(x) = c_x(n)``, ``M_n(x) = M_x(n)``), so in that regime the
degree and the argument are swapped before recursing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError

__all__ = [
    "PolyParams",
    "SymMatrix2",
    "hermite",
    "hermite_scaled",
    "laguerre",
    "charlier",
    "meixner",
    "gessel_even",
    "gessel_odd",
    "hermite2",
    "hermite2_coeffs",
]


def _check_alpha(alpha):
    if not alpha > -1:
        raise ValueError(f"Laguerre parameter alpha must be > -1, got {alpha!r}")


def _check_a(a):
    if not a > 0:
        raise ValueError(f"Charlier parameter a must be > 0, got {a!r}")


def _check_meixner(beta, c):
    if not beta > 0:
        raise ValueError(f"Meixner parameter beta must be > 0, got {beta!r}")
    if not 0 < c < 1:
        raise ValueError(f"Meixner parameter c must satisfy 0 < c < 1, got {c!r}")


@dataclass(frozen=True)
class PolyParams:
    """Validated parameter bundle for the classical families."""

    alpha: float = 0.0
    a: float = 1.0
    beta: float = 1.0
    c: float = 0.5

    def __post_init__(self):
        _check_alpha(self.alpha)
        _check_a(self.a)
        _check_meixner(self.beta, self.c)


@dataclass(frozen=True)
class SymMatrix2:
    """Symmetric 2x2 matrix ``[[a11, a12], [a12, a22]]``."""

    a11: complex
    a12: complex
    a22: complex

    def as_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a12, self.a22]], dtype=complex)


def _is_lattice_point(x) -> bool:
    return np.ndim(x) == 0 and float(np.real(x)) >= 0 and float(np.real(x)).is_integer() \
        and np.imag(x) == 0


def hermite(n: int, x):
    """Physicists' Hermite polynomial ``H_n(x)``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    h_prev, h = 0 * x + 1.0, 2 * x
    if n == 0:
        return h_prev
    for j in range(1, n):
        h_prev, h = h, 2 * x * h - 2 * j * h_prev
    return h


def hermite_scaled(nmax: int, x: complex, q: complex) -> np.ndarray:
    """Return ``u_j = q**j * H_j(x) / sqrt(j!)`` for ``j = 0..nmax``.

    The scaling keeps the sequence bounded where ``H_j`` itself would overflow
    (``q**j / sqrt(j!)`` is what the matrix elements carry anyway).
    """
    u = np.zeros(nmax + 1, dtype=complex)
    u[0] = 1.0
    if nmax >= 1:
        u[1] = 2 * x * q
    for j in range(1, nmax):
        u[j + 1] = (2 * x * q * u[j] - 2 * math.sqrt(j) * q * q * u[j - 1]) / math.sqrt(j + 1)
    return u


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial ``L_n^alpha(x)``."""
    _check_alpha(alpha)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    l_prev, l = 0 * x + 1.0, 1 + alpha - x
    if n == 0:
        return l_prev
    for j in range(1, n):
        l_prev, l = l, ((2 * j + alpha + 1 - x) * l - (j + alpha) * l_prev) / (j + 1)
    return l


def _normalized_monic(n, x, shift, coupling, ratio):
    # m_j = f_j p_j with p_{j+1} = (x - shift(j)) p_j - coupling(j) p_{j-1}, f_{j+1} = ratio(j) f_j
    m_prev, m = 0 * x, 0 * x + 1.0
    for j in range(n):
        r = ratio(j)
        m_next = r * (x - shift(j)) * m
        if j > 0:
            m_next = m_next - r * ratio(j - 1) * coupling(j) * m_prev
        m_prev, m = m, m_next
    return m


def charlier(n: int, x, a: float):
    """Standard Charlier polynomial ``c_n(x; a)``; ``x`` may be real or an array."""
    _check_a(a)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if _is_lattice_point(x) and n > x:
        n, x = int(round(float(np.real(x)))), float(n)
    return _normalized_monic(n, x, lambda j: j + a, lambda j: j * a, lambda j: -1.0 / a)


def meixner(n: int, x, beta: float, c: float):
    """Standard Meixner polynomial ``M_n(x; beta, c)``."""
    _check_meixner(beta, c)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if _is_lattice_point(x) and n > x:
        n, x = int(round(float(np.real(x)))), float(n)
    return _normalized_monic(
        n,
        x,
        lambda j: (j + (j + beta) * c) / (1 - c),
        lambda j: j * (j + beta - 1) * c / (1 - c) ** 2,
        lambda j: (c - 1) / (c * (beta + j)),
    )


def _gessel_checks(x, a, t):
    _check_a(a)
    if not abs(t) < 1:
        raise ValueError(f"|t| must be < 1, got {t!r}")
    if isinstance(x, bool) or not float(x).is_integer() or x < 0:
        raise ValueError(f"Gessel sums need a nonnegative integer x, got {x!r}")
    return int(x)


def _series(term, tol, run=5, max_terms=5000):
    total, biggest, quiet = 0.0, 0.0, 0
    for j in range(max_terms):
        tj = term(j)
        total += tj
        biggest = max(biggest, abs(tj))
        quiet = quiet + 1 if abs(tj) <= tol * biggest else 0
        if quiet >= run:
            return total
    raise ConvergenceError(f"series did not settle within {max_terms} terms")


def _gessel_sum(x, a, t, bracket):
    total, poch, inv_fact = 0.0, 1.0, 1.0
    for ell in range(x // 2 + 1):
        if ell > 0:
            poch *= (-x + 2 * ell - 2) * (-x + 2 * ell - 1)
            inv_fact /= ell
        total += poch * (1 + t) ** (x - 2 * ell) * bracket(ell) * inv_fact * (-t / (2 * a)) ** ell
    return np.exp(-a * t / 2) * total


def gessel_even(x: int, a: float, t: float, tol: float = 1e-15):
    """Both sides of the even-degree Charlier sum.

    ``lhs = sum_n c_{2n}(x; a) (-a t / 2)**n / n!`` is summed until five
    consecutive terms fall below ``tol`` times the largest term; ``rhs`` is the
    terminating finite sum.  Returns ``(lhs, rhs)``.  Both sides are analytic
    in ``t``, so complex ``t`` with ``|t| < 1`` is accepted as well.
    """
    x = _gessel_checks(x, a, t)
    z = -0.5 * a * t
    lhs = _series(lambda n: charlier(2 * n, x, a) * z**n / math.factorial(n), tol)
    rhs = _gessel_sum(x, a, t, lambda ell: 1.0)
    return lhs, rhs


def gessel_odd(x: int, a: float, t: float, tol: float = 1e-15):
    """Odd-degree counterpart of :func:`gessel_even`."""
    x = _gessel_checks(x, a, t)
    z = -0.5 * a * t
    lhs = _series(lambda n: charlier(2 * n + 1, x, a) * z**n / math.factorial(n), tol)
    rhs = _gessel_sum(x, a, t, lambda ell: 1 + (2 * ell - x) / (a * (1 + t)))
    return lhs, rhs


def hermite2_coeffs(kmax: int, nmax: int, A: SymMatrix2, c1: complex, c2: complex) -> np.ndarray:
    """Taylor coefficients ``f[k, n] = H_{k,n}(c1, c2) / (k! n!)`` for ``k <= kmax``, ``n <= nmax``.

    The generating exponential ``exp(E)``, ``E = sum_ij a_ij (x_i t_j - t_i t_j / 2)``,
    is expanded exactly by homogeneous degree: with ``E = E1 + E2`` split into
    its linear and quadratic parts, ``d F_d = E1 F_{d-1} + 2 E2 F_{d-2}``.
    Returning the coefficients rather than ``H_{k,n}`` keeps large indices
    free of factorial overflow.
    """
    if kmax < 0 or nmax < 0:
        raise ValueError("indices must be nonnegative")
    a11, a12, a22 = A.a11, A.a12, A.a22
    lin1 = a11 * c1 + a12 * c2
    lin2 = a12 * c1 + a22 * c2
    # E2 = -(a11 t1^2 + 2 a12 t1 t2 + a22 t2^2) / 2
    q20, q11, q02 = -a11 / 2, -a12, -a22 / 2
    f = np.zeros((kmax + 3, nmax + 3), dtype=complex)  # two rows/cols of zero padding in front
    f[2, 2] = 1.0
    for d in range(1, kmax + nmax + 1):
        for i in range(max(0, d - nmax), min(kmax, d) + 1):
            j = d - i
            I, J = i + 2, j + 2
            acc = lin1 * f[I - 1, J] + lin2 * f[I, J - 1]
            acc += 2 * (q20 * f[I - 2, J] + q11 * f[I - 1, J - 1] + q02 * f[I, J - 2])
            f[I, J] = acc / d
    return f[2:, 2:]


def hermite2(k: int, n: int, A: SymMatrix2, c1: complex, c2: complex) -> complex:
    """Two-variable Hermite polynomial ``H_{k,n}(c1, c2)`` for the symmetric matrix ``A``.

    ``H_{k,n}`` is ``k! n!`` times the coefficient of ``t1**k t2**n`` in the
    generating exponential; see :func:`hermite2_coeffs`.
    """
    f = hermite2_coeffs(k, n, A, c1, c2)
    return complex(f[k, n] * math.factorial(k) * math.factorial(n))
