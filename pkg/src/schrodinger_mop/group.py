"""Group-element parameters and the scalar/2x2 coefficients derived from them.

A group element is ``S = exp(v a - conj(v) a+) exp((w a^2 - conj(w) a+^2) / 2)``
with ``v = sigma e^{i delta}`` and ``w = rho e^{i theta}``.  Everything in this
module is a closed-form function of those four reals.

2x2 matrices are plain ``numpy`` arrays of shape ``(2, 2)`` and dtype complex.

Half-integer powers of ``e^{-i theta} th(rho)`` appear in many formulas.  They
are all taken from a single principal square root (:attr:`GroupParams.root`)
raised to integer powers, so that paired formulas share one branch.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import SingularParameterError

__all__ = [
    "GroupParams",
    "DerivedScalars",
    "derived_scalars",
    "recurrence_coeffs",
    "block_matrices",
    "ladder_matrices",
    "spectral_matrices",
    "difference_coeffs",
    "inv_lower_triangular",
]


@dataclass(frozen=True)
class GroupParams:
    """Polar parameters ``(sigma, delta, rho, theta)`` of a group element."""

    sigma: float = 0.0
    delta: float = 0.0
    rho: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        for name in ("sigma", "delta", "rho", "theta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.sigma < 0:
            raise ValueError(f"sigma is a modulus and must be >= 0, got {self.sigma!r}")
        if self.rho < 0:
            raise ValueError(f"rho is a modulus and must be >= 0, got {self.rho!r}")

    @property
    def v(self) -> complex:
        return self.sigma * cmath.exp(1j * self.delta)

    @property
    def w(self) -> complex:
        return self.rho * cmath.exp(1j * self.theta)

    @cached_property
    def ch(self) -> float:
        return math.cosh(self.rho)

    @cached_property
    def sh(self) -> float:
        return math.sinh(self.rho)

    @cached_property
    def th(self) -> float:
        return math.tanh(self.rho)

    @cached_property
    def root(self) -> complex:
        """Principal square root of ``e^{-i theta} th(rho)``."""
        return cmath.sqrt(cmath.exp(-1j * self.theta) * self.th)

    @property
    def q(self) -> complex:
        """``(e^{-i theta} th(rho) / 2)^{1/2}`` on the shared branch."""
        return self.root / math.sqrt(2.0)

    @property
    def s(self) -> complex:
        """Argument of the Hermite polynomials in the seed elements."""
        self.require_rho()
        v = self.v
        return -(v.conjugate() + cmath.exp(-1j * self.theta) * self.th * v) / (
            math.sqrt(2.0) * self.root
        )

    @property
    def generic(self) -> bool:
        return self.rho > 0 and self.sigma > 0

    def require_rho(self):
        if self.rho == 0:
            raise SingularParameterError(
                "rho = 0: closed forms divide by sinh(rho); use the Charlier "
                "specialization (decompose.chi) instead"
            )

    def require_generic(self):
        self.require_rho()
        if self.sigma == 0:
            raise SingularParameterError(
                "sigma = 0: the seeds psi_0k, psi_1k are dependent; use the Meixner "
                "specialization (decompose.phi) instead"
            )

    def as_dict(self) -> dict:
        return {"sigma": self.sigma, "delta": self.delta, "rho": self.rho, "theta": self.theta}


@dataclass(frozen=True)
class DerivedScalars:
    s: complex | None
    t: complex
    c: float
    c1: complex
    c2: complex
    mu: complex
    nu: complex


def derived_scalars(p: GroupParams) -> DerivedScalars:
    """Collect the derived scalars; ``s`` is ``None`` at ``rho == 0``."""
    v = p.v
    _, mu, nu = difference_coeffs(p, 0)
    return DerivedScalars(
        s=p.s if p.rho > 0 else None,
        t=cmath.exp(1j * (2 * p.delta - p.theta)) * p.th,
        c=p.th**2,
        c1=-(v + v.conjugate() * cmath.exp(1j * p.theta) * p.th),
        c2=v.conjugate() / p.ch,
        mu=mu,
        nu=nu,
    )


def recurrence_coeffs(p: GroupParams, n: int):
    """Coefficients ``(xi_n, eta_n, zeta_n)`` of the five-term recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    sh2 = math.sinh(2 * p.rho)
    xi = -0.5 * math.sqrt((n - 1) * n) * sh2 * cmath.exp(-1j * p.theta) if n > 1 else 0j
    eta = math.sqrt(n) * p.sigma * (
        cmath.exp(1j * (p.delta - p.theta)) * p.sh - cmath.exp(-1j * p.delta) * p.ch
    )
    zeta = (n + 0.5) * math.cosh(2 * p.rho) + p.sigma**2 - 0.5
    return xi, eta, zeta


def block_matrices(p: GroupParams, n: int, printed_b00: bool = False):
    """Blocks ``(A_n, B_n)`` of the 2-vector three-term recurrence.

    ``B_n[0, 0]`` is ``zeta_{2n}``.  ``printed_b00=True`` substitutes
    ``xi_{2n}`` there instead; that variant is kept only so the verification
    report can show it breaks unitarity.
    """
    xi0, eta0, zeta0 = recurrence_coeffs(p, 2 * n)
    xi1, eta1, zeta1 = recurrence_coeffs(p, 2 * n + 1)
    A = np.array([[xi0, 0.0], [eta0, xi1]], dtype=complex)
    B = np.array([[xi0 if printed_b00 else zeta0, eta1], [eta1.conjugate(), zeta1]], dtype=complex)
    return A, B


def inv_lower_triangular(L: np.ndarray) -> np.ndarray:
    """Closed-form inverse of a 2x2 lower-triangular matrix."""
    a, c, d = L[0, 0], L[1, 0], L[1, 1]
    if a == 0 or d == 0:
        raise SingularParameterError("lower-triangular block is singular (rho = 0?)")
    return np.array([[1 / a, 0.0], [-c / (a * d), 1 / d]], dtype=complex)


def ladder_parts(p: GroupParams):
    """Return ``(L0, L1, R0, R1)`` with lowering ``L0 + k L1`` and raising ``R0 + k R1``."""
    p.require_rho()
    s, ch, sh = p.sigma, p.ch, p.sh
    e = cmath.exp
    d, t = p.delta, p.theta
    L0 = np.array(
        [
            [-s * e(1j * d), ch],
            [e(1j * t) * s**2 / sh, -s * (ch / sh) * e(1j * (t - d))],
        ],
        dtype=complex,
    )
    L1 = np.array([[0, 0], [-e(1j * t) / sh, 0]], dtype=complex)
    R0 = np.array(
        [
            [-s * e(-1j * d), -e(-1j * t) * sh],
            [(1 - s**2) / ch, -s * e(1j * (d - t)) * p.th],
        ],
        dtype=complex,
    )
    R1 = np.array([[0, 0], [1 / ch, 0]], dtype=complex)
    return L0, L1, R0, R1


def ladder_matrices(p: GroupParams, k):
    """Lowering and raising matrices at ``k``; both are affine in ``k``."""
    L0, L1, R0, R1 = ladder_parts(p)
    return L0 + k * L1, R0 + k * R1


def spectral_matrices(n: int):
    """``gamma(n) = diag(2n, 2n+1)`` and ``Theta_n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    gamma = np.diag([2.0 * n, 2.0 * n + 1]).astype(complex)
    theta_n = np.diag([math.sqrt(2 * n * (2 * n - 1)) if n else 0.0, math.sqrt(2 * n * (2 * n + 1))])
    return gamma, theta_n.astype(complex)


def difference_coeffs(p: GroupParams, k):
    """``(lambda(k), mu, nu)`` of the five-term difference relation in ``k``."""
    ch2, sh2 = math.cosh(2 * p.rho), math.sinh(2 * p.rho)
    s2 = p.sigma**2
    lam = (k + s2 + 0.5) * ch2 + s2 * sh2 * math.cos(2 * p.delta - p.theta) - 0.5
    mu = p.sigma * (ch2 * cmath.exp(-1j * p.delta) + sh2 * cmath.exp(1j * (p.delta - p.theta)))
    nu = 0.5 * cmath.exp(-1j * p.theta) * sh2
    return lam, mu, nu
