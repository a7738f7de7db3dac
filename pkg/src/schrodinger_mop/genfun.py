"""Generating functions of the matrix elements.

``G(x, y) = sum_{k,n} conj(x)^k y^n psi_{n,k} / sqrt(k! n!)`` is the matrix
element of ``S`` between coherent states and has a closed Gaussian form; its
Taylor coefficients are two-variable Hermite polynomials, which gives a third
route to ``psi_{n,k}``.  ``F_k(y) = sum_n y^n psi_{n,k} / sqrt(n!)`` is the
single-variable slice, a Gaussian times ``H_k``.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .elements import PsiTable, compute_table, psi00
from .errors import ConvergenceError
from .group import GroupParams
from .polykernel import SymMatrix2, hermite_scaled, hermite2_coeffs

__all__ = [
    "g_closed",
    "g_series",
    "hermite2_args",
    "psi_via_hermite2",
    "hermite2_table",
    "hermite2_vector_sides",
    "f_closed",
    "f_series",
    "f_derivative",
]

HERMITE2_MAX_ORDER = 60


def g_closed(p: GroupParams, x: complex, y: complex) -> complex:
    """Closed form of ``<x|S|y>`` for coherent states ``|x>``, ``|y>``."""
    v, th, sech = p.v, p.th, 1.0 / p.ch
    et = cmath.exp(-1j * p.theta)
    xb = complex(x).conjugate()
    const = -0.5 * p.sigma**2 - 0.5 * et * th * v * v
    quad = -0.5 * et * th * xb * xb + sech * xb * y + 0.5 * th * y * y / et
    lin = (-v.conjugate() - et * th * v) * xb + sech * v * y
    return math.sqrt(sech) * cmath.exp(const + quad + lin)


def _power_weights(z: complex, jmax: int) -> np.ndarray:
    """``z**j / sqrt(j!)`` for ``j = 0..jmax``, built by ratios."""
    w = np.empty(jmax + 1, dtype=complex)
    w[0] = 1.0
    for j in range(1, jmax + 1):
        w[j] = w[j - 1] * z / math.sqrt(j)
    return w


def g_series(
    p: GroupParams, x: complex, y: complex, ncut: int = 40, kcut: int = 40, table=None, route="auto"
) -> complex:
    """Partial double sum of ``G`` over ``n <= ncut``, ``k <= kcut``.

    Raises :class:`ConvergenceError` when the outermost row or column still
    carries more than ``1e-12`` of the largest term.
    """
    if table is None:
        table = compute_table(p, ncut, kcut, route=route)
    e = table.entries[: ncut + 1, : kcut + 1]
    wk = _power_weights(complex(x).conjugate(), kcut)
    wn = _power_weights(complex(y), ncut)
    terms = wn[:, None] * e * wk[None, :]
    scale = max(float(np.max(np.abs(terms))), 1e-300)
    edge = max(float(np.max(np.abs(terms[-1, :]))), float(np.max(np.abs(terms[:, -1]))))
    if edge > 1e-12 * scale:
        raise ConvergenceError(f"G series not settled at ncut={ncut}, kcut={kcut}")
    return complex(terms.sum())


def hermite2_args(p: GroupParams):
    """``(A, c1, c2)`` with ``psi_{n,k} = H_{k,n}(c1, c2) psi_00 / sqrt(k! n!)``.

    ``A`` is read off the quadratic part of ``log G`` and ``(c1, c2)`` solve
    ``A c = (linear coefficients of log G)``, which gives
    ``c1 = -(v + conj(v) e^{i theta} th(rho))`` and ``c2 = conj(v) / ch(rho)``.
    """
    et, th, sech = cmath.exp(-1j * p.theta), p.th, 1.0 / p.ch
    A = SymMatrix2(et * th, -sech, -th / et)
    v = p.v
    c1 = -(v + v.conjugate() * th / et)
    c2 = v.conjugate() * sech
    return A, c1, c2


def _hermite2_entries(p: GroupParams, nmax: int, kmax: int) -> np.ndarray:
    if nmax + kmax > HERMITE2_MAX_ORDER:
        raise ValueError(f"hermite2 route is capped at n + k <= {HERMITE2_MAX_ORDER}")
    A, c1, c2 = hermite2_args(p)
    f = hermite2_coeffs(kmax, nmax, A, c1, c2)
    lf = np.array([math.lgamma(j + 1) for j in range(max(nmax, kmax) + 1)])
    scale = np.exp(0.5 * (lf[: kmax + 1, None] + lf[None, : nmax + 1]))
    return (f * scale * psi00(p)).T


def psi_via_hermite2(p: GroupParams, n: int, k: int) -> complex:
    """``psi_{n,k}`` from a two-variable Hermite polynomial."""
    if n < 0 or k < 0:
        raise ValueError("Fock labels must be nonnegative")
    return complex(_hermite2_entries(p, n, k)[n, k])


def hermite2_table(p: GroupParams, nmax: int, kmax: int) -> PsiTable:
    return PsiTable(p, nmax, kmax, _hermite2_entries(p, nmax, kmax), "hermite2")


def hermite2_vector_sides(p: GroupParams, n: int, k: int, poly=None):
    """Both sides of the two-variable/one-variable Hermite relation at ``(n, k)``.

    ``lhs = (H_{k,2n}/sqrt((2n)!), H_{k,2n+1}/sqrt((2n+1)!))`` and
    ``rhs = (e^{-i theta} th / 2)^{k/2} P_n(k) h`` with
    ``h = (H_k(s), -(sigma e^{i(theta-delta)} H_k(s) + (e^{i theta} th / 2)^{1/2} H_{k+1}(s)) / sh)``.
    Everything is divided by ``sqrt(k!)`` so both sides stay O(1).
    """
    from .mops import mop

    A, c1, c2 = hermite2_args(p)
    f = hermite2_coeffs(k, 2 * n + 1, A, c1, c2)
    lfk = math.lgamma(k + 1)
    lhs = np.array(
        [f[k, 2 * n + j] * math.exp(0.5 * (lfk + math.lgamma(2 * n + j + 1))) for j in (0, 1)]
    )
    q = p.q
    u = hermite_scaled(k + 1, p.s, q)  # u_j = q^j H_j(s) / sqrt(j!)
    h0 = u[k]
    # q^k e^{i theta} q H_{k+1}(s) / sqrt(k!) = e^{i theta} sqrt(k+1) u_{k+1}
    h1 = -(p.sigma * cmath.exp(1j * (p.theta - p.delta)) * u[k]
           + cmath.exp(1j * p.theta) * math.sqrt(k + 1) * u[k + 1]) / p.sh
    P = mop(p, n) if poly is None else poly
    rhs = P(k) @ np.array([h0, h1])
    return lhs, rhs


def f_closed(p: GroupParams, k: int, y: complex) -> complex:
    """``F_k(y) = q^k H_k(r) / sqrt(k!) exp(v y / ch + e^{i theta} th y^2 / 2) psi_00``.

    ``r = y / (2 q ch(rho)) + s``; with the principal branch of ``q`` this is
    ``e^{i theta/2} y / sqrt(sh 2 rho) + s``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    p.require_rho()
    q = p.q
    r = y / (2 * q * p.ch) + p.s
    u = hermite_scaled(k, r, q)[k]
    gauss = cmath.exp(p.v * y / p.ch + 0.5 * cmath.exp(1j * p.theta) * p.th * y * y)
    return complex(u * gauss * psi00(p))


def f_series(p: GroupParams, k: int, y: complex, ncut: int = 40, table=None) -> complex:
    """Partial sum ``sum_{n <= ncut} y^n psi_{n,k} / sqrt(n!)``."""
    if table is None:
        table = compute_table(p, ncut, k)
    col = table.entries[: ncut + 1, k]
    w = _power_weights(complex(y), ncut)
    return complex(np.dot(w, col))


def f_derivative(p: GroupParams, k: int, h: float = 1e-3) -> complex:
    """``F_k'(0)`` by a central difference with one Richardson step; equals ``psi_{1,k}``."""

    def central(step):
        return (f_closed(p, k, step) - f_closed(p, k, -step)) / (2 * step)

    return (4 * central(h / 2) - central(h)) / 3
