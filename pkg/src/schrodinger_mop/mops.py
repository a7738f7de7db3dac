"""2x2 matrix orthogonal polynomials ``P_n(k)`` attached to a group element.

``P_n`` is defined by ``Psi_{n,k} = P_n(k) Psi_{0,k}``.  It is built here at
the coefficient level, so the shift operators that appear in the difference,
raising and lowering operators act exactly: a shift ``k -> k + h`` is a Taylor
re-expansion of the coefficients, and the ladder matrices are degree-one
matrix polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .elements import compute_table, seed_columns
from .group import (
    GroupParams,
    block_matrices,
    difference_coeffs,
    inv_lower_triangular,
    ladder_matrices,
    ladder_parts,
    spectral_matrices,
)

__all__ = [
    "MatPoly",
    "WeightPoint",
    "mop",
    "mop_eval",
    "mop_sequence",
    "mop_from_table",
    "weight",
    "gram",
    "gram_block",
    "apply_difference",
    "apply_raise",
    "apply_lower",
    "raise_full",
    "lower_full",
    "rodrigues",
]

_I2 = np.eye(2, dtype=complex)


class MatPoly:
    """Polynomial in ``k`` with 2x2 complex coefficients; ``coeffs[j]`` multiplies ``k**j``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex)
        if c.ndim == 2:
            c = c[None]
        if c.ndim != 3 or c.shape[1:] != (2, 2) or c.shape[0] == 0:
            raise ValueError(f"coefficients must have shape (d+1, 2, 2), got {c.shape}")
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def constant(cls, M) -> "MatPoly":
        return cls(np.asarray(M, dtype=complex)[None])

    @classmethod
    def identity(cls) -> "MatPoly":
        return cls.constant(_I2)

    @classmethod
    def zero(cls) -> "MatPoly":
        return cls.constant(np.zeros((2, 2)))

    @classmethod
    def affine(cls, M0, M1) -> "MatPoly":
        """``M0 + k M1``."""
        return cls(np.stack([M0, M1]))

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient (``0`` for the zero polynomial)."""
        nz = np.nonzero(np.any(self.coeffs != 0, axis=(1, 2)))[0]
        return int(nz[-1]) if nz.size else 0

    def __len__(self):
        return self.coeffs.shape[0]

    def __repr__(self):
        return f"MatPoly(degree={self.degree}, terms={len(self)})"

    def __call__(self, k):
        return mop_eval(self, k)

    def _padded(self, length):
        out = np.zeros((length, 2, 2), dtype=complex)
        out[: len(self)] = self.coeffs
        return out

    def __add__(self, other: "MatPoly") -> "MatPoly":
        n = max(len(self), len(other))
        return MatPoly(self._padded(n) + other._padded(n))

    def __sub__(self, other: "MatPoly") -> "MatPoly":
        n = max(len(self), len(other))
        return MatPoly(self._padded(n) - other._padded(n))

    def scale(self, z: complex) -> "MatPoly":
        return MatPoly(self.coeffs * z)

    def lmul(self, M) -> "MatPoly":
        """Constant matrix on the left: ``M P(k)``."""
        return MatPoly(np.einsum("ij,djk->dik", np.asarray(M, dtype=complex), self.coeffs))

    def rmul(self, M) -> "MatPoly":
        """Constant matrix on the right: ``P(k) M``."""
        return MatPoly(np.einsum("dij,jk->dik", self.coeffs, np.asarray(M, dtype=complex)))

    def times_k(self) -> "MatPoly":
        """``k P(k)``."""
        return MatPoly(np.concatenate([np.zeros((1, 2, 2), dtype=complex), self.coeffs]))

    def __matmul__(self, other: "MatPoly") -> "MatPoly":
        a, b = self.coeffs, other.coeffs
        out = np.zeros((len(a) + len(b) - 1, 2, 2), dtype=complex)
        for i in range(len(a)):
            out[i : i + len(b)] += np.einsum("ij,djk->dik", a[i], b)
        return MatPoly(out)

    def shift(self, h: float) -> "MatPoly":
        """``P(k + h)`` re-expanded in powers of ``k``."""
        c = self.coeffs
        d = len(c)
        out = np.zeros_like(c)
        for j in range(d):
            for i in range(j + 1):
                out[i] += math.comb(j, i) * h ** (j - i) * c[j]
        return MatPoly(out)

    def truncate(self, degree: int) -> "MatPoly":
        """Keep coefficients up to ``k**degree``."""
        return MatPoly(self.coeffs[: degree + 1])

    def entry_degrees(self, tol: float = 0.0) -> np.ndarray:
        """Degree of each scalar entry; ``-1`` marks an identically zero entry."""
        out = np.full((2, 2), -1, dtype=int)
        for i in range(2):
            for j in range(2):
                nz = np.nonzero(np.abs(self.coeffs[:, i, j]) > tol)[0]
                if nz.size:
                    out[i, j] = nz[-1]
        return out


@dataclass(frozen=True)
class WeightPoint:
    k: int
    W: np.ndarray


def mop_eval(poly: MatPoly, k):
    """Horner evaluation; ``k`` may be a scalar or an array (trailing ``(2, 2)`` axes)."""
    k = np.asarray(k)
    acc = np.broadcast_to(poly.coeffs[-1], k.shape + (2, 2)).astype(complex)
    kk = k[..., None, None]
    for c in poly.coeffs[-2::-1]:
        acc = acc * kk + c
    return acc


def mop(p: GroupParams, n: int) -> MatPoly:
    """``P_n`` from ``P_{n+1} = A_{n+1}^{-1} [(k - B_n) P_n - A_n^+ P_{n-1}]``, ``P_0 = 1``."""
    return mop_sequence(p, n)[n]


def mop_sequence(p: GroupParams, nmax: int) -> list[MatPoly]:
    """``[P_0, ..., P_nmax]``."""
    if nmax < 0:
        raise ValueError("n must be nonnegative")
    p.require_generic()
    polys = [MatPoly.identity()]
    prev = MatPoly.zero()
    A_cur, B_cur = block_matrices(p, 0)
    for n in range(nmax):
        A_next, B_next = block_matrices(p, n + 1)
        cur = polys[-1]
        rhs = cur.times_k() - cur.lmul(B_cur) - prev.lmul(A_cur.conj().T)
        nxt = rhs.lmul(inv_lower_triangular(A_next)).truncate(n + 1)
        prev = cur
        polys.append(nxt)
        A_cur, B_cur = A_next, B_next
    return polys


def mop_from_table(p: GroupParams, n: int, table=None, kpoints=None) -> MatPoly:
    """Recover ``P_n`` from matrix elements alone.

    Each row ``i`` of ``P_n(k) Psi_{0,k} = Psi_{n,k}`` is linear in the
    ``2 (n + 1)`` coefficients of that row, so sampling ``k = 0 .. 2n + 5``
    gives an overdetermined system that is solved in the least-squares sense.
    Every equation is divided by ``|Psi_{0,k}|`` and powers are taken of
    ``k / K`` with ``K`` the largest sample; without both, the system is too
    badly scaled to recover the higher coefficients.
    """
    p.require_generic()
    if kpoints is None:
        kpoints = np.arange(2 * n + 6)
    kpoints = np.asarray(kpoints)
    kmax = int(kpoints.max())
    if table is None:
        table = compute_table(p, 2 * n + 1, kmax, route="oracle")
    psi0, psi1 = table.entries[0, kpoints], table.entries[1, kpoints]
    K = max(kmax, 1)
    powers = (kpoints[:, None] / K) ** np.arange(n + 1)[None, :]
    design = np.hstack([powers * psi0[:, None], powers * psi1[:, None]])
    rownorm = np.hypot(np.abs(psi0), np.abs(psi1))[:, None]
    unscale = float(K) ** -np.arange(n + 1)
    coeffs = np.zeros((n + 1, 2, 2), dtype=complex)
    for i in range(2):
        target = table.entries[2 * n + i, kpoints]
        sol, *_ = np.linalg.lstsq(design / rownorm, target / rownorm[:, 0], rcond=None)
        coeffs[:, i, 0] = sol[: n + 1] * unscale
        coeffs[:, i, 1] = sol[n + 1 :] * unscale
    return MatPoly(coeffs)


def weight(p: GroupParams, k: int) -> WeightPoint:
    """Rank-one weight ``W(k) = Psi_{0,k} Psi_{0,k}^+``."""
    psi0, psi1 = seed_columns(p, k)
    v = np.array([psi0[k], psi1[k]])
    return WeightPoint(k, np.outer(v, v.conj()))


def gram(p: GroupParams, n: int, m: int, kcut: int = 300, tol: float = 1e-14, run: int = 10):
    """``sum_{k <= kcut} P_n(k) W(k) P_m(k)^+``; stops early once terms stay below ``tol``."""
    p.require_generic()
    polys = mop_sequence(p, max(n, m))
    Pn, Pm = polys[n], polys[m]
    psi0, psi1 = seed_columns(p, kcut)
    total = np.zeros((2, 2), dtype=complex)
    quiet = 0
    for k in range(kcut + 1):
        # W(k) = v v^+ is applied in factored form: forming P W P^+ left to
        # right multiplies rounding by |P_n(k)|^2, which reaches 1e16 at small rho.
        v = np.array([psi0[k], psi1[k]])
        term = np.outer(Pn(k) @ v, (Pm(k) @ v).conj())
        total += term
        quiet = quiet + 1 if np.max(np.abs(term)) <= tol else 0
        if quiet >= run:
            break
    return total


def gram_block(p: GroupParams, nmax: int, kcut: int = 300) -> np.ndarray:
    """All Gram matrices at once: ``G[n, m] = sum_{k <= kcut} P_n(k) W(k) P_m(k)^+``.

    Uses the same factored weight as :func:`gram`, vectorised over ``k``; the
    result has shape ``(nmax + 1, nmax + 1, 2, 2)``.
    """
    p.require_generic()
    polys = mop_sequence(p, nmax)
    psi0, psi1 = seed_columns(p, kcut)
    seeds = np.stack([psi0, psi1], axis=1)  # (K, 2)
    k = np.arange(kcut + 1)
    vecs = np.stack([np.einsum("kij,kj->ki", P(k), seeds) for P in polys])  # (N, K, 2)
    return np.einsum("nki,mkj->nmij", vecs, vecs.conj())


def apply_difference(p: GroupParams, poly: MatPoly, k):
    """``(P Delta)(k)`` for the right-acting difference operator ``Delta``.

    ``nu P(k-2) L_{k-1} L_k + conj(nu) P(k+2) R_{k+1} R_k + mu P(k-1) L_k
    + conj(mu) P(k+1) R_k + lambda(k) P(k)`` with ``L``/``R`` the lowering and
    raising matrices.  Every term is a polynomial in ``k``, so the identity
    ``P_n Delta = gamma(n) P_n`` holds at every ``k``, including ``0`` and ``1``.
    """
    p.require_rho()
    lam, mu, nu = difference_coeffs(p, k)
    Lk, Rk = ladder_matrices(p, k)
    Lkm1, _ = ladder_matrices(p, k - 1)
    _, Rkp1 = ladder_matrices(p, k + 1)
    return (
        nu * poly(k - 2) @ Lkm1 @ Lk
        + np.conj(nu) * poly(k + 2) @ Rkp1 @ Rk
        + mu * poly(k - 1) @ Lk
        + np.conj(mu) * poly(k + 1) @ Rk
        + lam * poly(k)
    )


def _ladder_polys(p: GroupParams):
    L0, L1, R0, R1 = ladder_parts(p)
    L = MatPoly.affine(L0, L1)
    R = MatPoly.affine(R0, R1)
    LL = L.shift(-1) @ L
    RR = R.shift(1) @ R
    return L, R, LL, RR


def _ladder_scalars(p: GroupParams):
    C = p.ch
    E = np.exp(-1j * p.theta) * p.sh
    beta = p.sigma * (np.exp(-1j * p.delta) * p.ch + np.exp(1j * (p.delta - p.theta)) * p.sh)
    return C, E, beta


def raise_full(p: GroupParams, poly: MatPoly) -> MatPoly:
    """Untruncated ``P R``; its top two coefficients cancel to rounding.

    ``R = C^2 T_-^2 LL + conj(E)^2 T_+^2 RR + 2 conj(beta) C T_- L
    + 2 conj(beta) conj(E) T_+ R + C conj(E) (2k + 1) + conj(beta)^2`` with
    ``C = ch(rho)``, ``E = e^{-i theta} sh(rho)``,
    ``beta = sigma (e^{-i delta} ch(rho) + e^{i(delta - theta)} sh(rho))``.
    """
    p.require_generic()
    L, R, LL, RR = _ladder_polys(p)
    C, E, beta = _ladder_scalars(p)
    Eb, bb = np.conj(E), np.conj(beta)
    diag = MatPoly.affine((C * Eb + bb**2) * _I2, 2 * C * Eb * _I2)
    return (
        (poly.shift(-2) @ LL).scale(C**2)
        + (poly.shift(2) @ RR).scale(Eb**2)
        + (poly.shift(-1) @ L).scale(2 * bb * C)
        + (poly.shift(1) @ R).scale(2 * bb * Eb)
        + poly @ diag
    )


def lower_full(p: GroupParams, poly: MatPoly) -> MatPoly:
    """Untruncated ``P L``, the adjoint partner of :func:`raise_full`.

    Each shifted ladder term is swapped for its adjoint (``T_- L`` with
    ``T_+ R`` and ``T_-^2 LL`` with ``T_+^2 RR``) and scalar coefficients are
    conjugated.
    """
    p.require_generic()
    L, R, LL, RR = _ladder_polys(p)
    C, E, beta = _ladder_scalars(p)
    diag = MatPoly.affine((C * E + beta**2) * _I2, 2 * C * E * _I2)
    return (
        (poly.shift(2) @ RR).scale(C**2)
        + (poly.shift(-2) @ LL).scale(E**2)
        + (poly.shift(1) @ R).scale(2 * beta * C)
        + (poly.shift(-1) @ L).scale(2 * beta * E)
        + poly @ diag
    )


def apply_raise(p: GroupParams, poly: MatPoly) -> MatPoly:
    """``P R``, exact to degree ``deg P + 1`` (so ``P_n R = Theta_{n+1} P_{n+1}``)."""
    return raise_full(p, poly).truncate(len(poly))


def apply_lower(p: GroupParams, poly: MatPoly) -> MatPoly:
    """``P L`` of degree ``deg P - 1`` (so ``P_n L = Theta_n P_{n-1}``); constants map to zero."""
    if len(poly) == 1:
        p.require_generic()
        return MatPoly.zero()
    return lower_full(p, poly).truncate(len(poly) - 2)


def rodrigues(p: GroupParams, n: int) -> MatPoly:
    """``P_n = (Theta_n ... Theta_1)^{-1} (1 R^n)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    p.require_generic()
    Q = MatPoly.identity()
    norm = np.ones(2)
    for i in range(1, n + 1):
        Q = apply_raise(p, Q)
        norm = norm * np.diag(spectral_matrices(i)[1]).real
    return Q.lmul(np.diag(1.0 / norm))

