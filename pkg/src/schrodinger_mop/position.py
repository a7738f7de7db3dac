"""Oscillator wavefunctions and affine transforms of Hermite polynomials.

For real parameters (``delta = theta = 0``) the group element acts on
wavefunctions as a dilation by ``e^rho`` followed by a translation by
``sqrt(2) sigma``:  ``<x|S|n> = e^{rho/2} Phi_n(x')`` with
``x' = e^rho (x + sqrt(2) sigma)``.  Expanding the left side in the
oscillator basis turns every matrix-element formula into an identity for
``H_n(x')``.  The functions here return the normalised residual of each such
identity so callers can assert on it.

Hermite values are taken in the scaled form ``H_k(x) / (2^{k/2} sqrt(k!))``,
which is what the oscillator normalisation needs and does not overflow.
"""

from __future__ import annotations

import math

import numpy as np

from .elements import seed_columns
from .errors import ConvergenceError, SingularParameterError
from .group import GroupParams
from .polykernel import charlier, hermite, hermite_scaled, meixner

__all__ = [
    "phi_wave",
    "scaled_hermite",
    "translate_defect",
    "dilate_defect",
    "affine_vector_defect",
    "affine_argument",
]

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def scaled_hermite(kmax: int, x: float) -> np.ndarray:
    """``H_k(x) / (2^{k/2} sqrt(k!))`` for ``k = 0..kmax``."""
    return hermite_scaled(kmax, x, _INV_SQRT2).real


def phi_wave(n: int, x: float) -> float:
    """Normalised oscillator eigenfunction ``Phi_n(x)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return float(math.pi**-0.25 * math.exp(-0.5 * x * x) * scaled_hermite(n, x)[n])


def _check_tail(terms, what, tol=1e-13):
    terms = np.abs(np.asarray(terms))
    scale = max(float(terms.max()), 1e-300)
    if float(terms[-5:].max()) > tol * scale:
        raise ConvergenceError(f"{what}: series not settled; raise kcut")


def _relative(lhs, rhs):
    lhs, rhs = np.atleast_1d(lhs), np.atleast_1d(rhs)
    denom = float(np.linalg.norm(lhs))
    err = float(np.linalg.norm(lhs - rhs))
    return err / denom if denom > 0 else err


def translate_defect(n: int, sigma: float, x: float, kcut: int = 60) -> float:
    """Relative residual of the translation formula for ``H_n(x + sqrt(2) sigma)``.

    ``rhs = (sqrt(2) sigma)^n e^{sqrt(2) sigma x + sigma^2/2}
    sum_k (-sigma)^k / (2^{k/2} k!) C_n(k; sigma^2) H_k(x)``.
    """
    if not sigma > 0:
        raise ValueError("translate_defect needs sigma > 0")
    shift = math.sqrt(2.0) * sigma
    lhs = hermite(n, x + shift)
    h = scaled_hermite(kcut, x)
    # (-sigma)^k H_k / (2^{k/2} k!) = (-sigma)^k h_k / sqrt(k!)
    terms = np.array(
        [
            (-sigma) ** k * math.exp(-0.5 * math.lgamma(k + 1)) * h[k] * charlier(n, k, sigma * sigma)
            for k in range(kcut + 1)
        ]
    )
    _check_tail(terms, "translate_defect")
    rhs = shift**n * math.exp(shift * x + 0.5 * sigma * sigma) * terms.sum()
    return _relative(lhs, rhs)


def dilate_defect(n: int, rho: float, x: float, kcut: int = 80, parity: str = "even") -> float:
    """Relative residual of the dilation formula for ``H_{2n}(e^rho x)`` or ``H_{2n+1}(e^rho x)``.

    ``H_{2n+j}(e^rho x) = (2n+j)!/n! e^{-rho/2} e^{(e^{2 rho} - 1) x^2 / 2} th^n / ch^{1/2+j}
    sum_k (-1)^k th^k / (4^k k!) M_n(k; 1/2 + j, th^2) H_{2k+j}(x)`` with ``j = 0`` for
    ``parity='even'`` and ``j = 1`` for ``'odd'``.
    """
    if not rho > 0:
        raise ValueError("dilate_defect needs rho > 0")
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    j = 1 if parity == "odd" else 0
    th, ch = math.tanh(rho), math.cosh(rho)
    deg = 2 * n + j
    lhs = float(scaled_hermite(deg, math.exp(rho) * x)[deg])
    lhs *= math.exp(0.5 * deg * math.log(2.0) + 0.5 * math.lgamma(deg + 1))
    h = scaled_hermite(2 * kcut + 1, x)
    terms = []
    for k in range(kcut + 1):
        m = 2 * k + j
        # H_m / (4^k k!) = h_m * exp(m/2 ln 2 + lgamma(m+1)/2 - 2k ln 2 - lgamma(k+1))
        log_w = 0.5 * m * math.log(2.0) + 0.5 * math.lgamma(m + 1) - 2 * k * math.log(2.0) - math.lgamma(k + 1)
        terms.append((-1) ** k * th**k * math.exp(log_w) * h[m] * meixner(n, k, 0.5 + j, th * th))
    _check_tail(terms, "dilate_defect")
    pref = math.exp(
        math.lgamma(deg + 1) - math.lgamma(n + 1) - 0.5 * rho + 0.5 * (math.exp(2 * rho) - 1) * x * x
    ) * th**n / ch ** (0.5 + j)
    return _relative(lhs, pref * sum(terms))


def affine_argument(p: GroupParams, x: float) -> float:
    """``x' = e^rho (x + sqrt(2) sigma)``."""
    return math.exp(p.rho) * (x + math.sqrt(2.0) * p.sigma)


def affine_vector_defect(p: GroupParams, n: int, x: float, kcut: int = 200, poly=None) -> float:
    """Relative residual of the 2-vector affine identity at block index ``n``.

    ``(H_{2n}(x') / (2^n sqrt((2n)!)), H_{2n+1}(x') / (2^{n+1/2} sqrt((2n+1)!)))
    = e^{(x'^2 - x^2)/2 - rho/2} sum_k H_k(x) / (2^{k/2} sqrt(k!)) P_n(k) Psi_{0,k}``.
    """
    from .mops import mop

    if p.delta != 0 or p.theta != 0:
        raise SingularParameterError("affine_vector_defect is defined for delta = theta = 0 only")
    p.require_generic()
    xp = affine_argument(p, x)
    hp = scaled_hermite(2 * n + 1, xp)
    lhs = np.array([hp[2 * n], hp[2 * n + 1]])
    P = mop(p, n) if poly is None else poly
    h = scaled_hermite(kcut, x)
    psi0, psi1 = seed_columns(p, kcut)
    vals = P(np.arange(kcut + 1))  # (kcut+1, 2, 2)
    vecs = np.einsum("kij,kj->ki", vals, np.stack([psi0, psi1], axis=1))
    terms = h[:, None] * vecs
    _check_tail(np.max(np.abs(terms), axis=1), "affine_vector_defect")
    rhs = math.exp(0.5 * (xp * xp - x * x) - 0.5 * p.rho) * terms.sum(axis=0)
    return _relative(lhs, rhs)
