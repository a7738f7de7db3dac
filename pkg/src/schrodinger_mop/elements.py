"""Matrix elements ``psi_{n,k} = <k|S|n>`` of a group element.

Three ways of getting them live here:

* :func:`psi_table` runs the 2-vector three-term recurrence in ``n`` from the
  closed-form seeds ``(psi_{0,k}, psi_{1,k})``;
* :func:`psi_oracle` exponentiates truncated ladder-operator matrices, which is
  slow but shares no algebra with the other routes;
* :func:`compute_table` dispatches to any route, including the Charlier/Meixner
  convolution and the two-variable Hermite formula from sibling modules.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConditioningWarning, TruncationError
from .group import GroupParams, block_matrices, inv_lower_triangular, ladder_matrices
from .polykernel import hermite_scaled

__all__ = [
    "ROUTES",
    "PsiTable",
    "psi00",
    "seed_columns",
    "seed_columns_alt",
    "psi_seed",
    "psi_table",
    "psi_oracle",
    "expm",
    "compute_table",
    "ladder_apply",
    "unitarity_defect",
]

ROUTES = ("recurrence", "convolution", "hermite2", "oracle")


@dataclass(frozen=True)
class PsiTable:
    """Dense block ``entries[n, k] = psi_{n,k}`` with the route that produced it."""

    params: GroupParams
    nmax: int
    kmax: int
    entries: np.ndarray = field(repr=False)
    route: str = "recurrence"

    def __post_init__(self):
        if self.route not in ROUTES:
            raise ValueError(f"unknown route {self.route!r}")
        if self.entries.shape != (self.nmax + 1, self.kmax + 1):
            raise ValueError(
                f"entries has shape {self.entries.shape}, expected {(self.nmax + 1, self.kmax + 1)}"
            )
        self.entries.setflags(write=False)

    def __getitem__(self, nk):
        return self.entries[nk]


def psi00(p: GroupParams) -> complex:
    """Vacuum-to-vacuum element ``<0|S|0>``."""
    t = cmath.exp(1j * (2 * p.delta - p.theta)) * p.th
    return math.exp(-0.5 * p.sigma**2) / math.sqrt(p.ch) * cmath.exp(-0.5 * p.sigma**2 * t)


def _check_nonneg(**kw):
    for name, value in kw.items():
        if int(value) != value or value < 0:
            raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")


def seed_columns(p: GroupParams, kmax: int):
    """Arrays ``(psi_{0,k}, psi_{1,k})`` for ``k = 0..kmax``.

    ``psi_{0,k} = q^k H_k(s) / sqrt(k!) psi_00`` and ``psi_{1,k}`` follows from
    the first-row relation between the two seeds.  Needs ``rho > 0``.
    """
    _check_nonneg(kmax=kmax)
    p.require_rho()
    g00 = psi00(p)
    u = hermite_scaled(kmax + 1, p.s, p.q)
    kk = np.arange(kmax + 1)
    psi0 = u[:-1] * g00
    psi1 = -(g00 / p.sh) * (
        p.sigma * cmath.exp(1j * (p.theta - p.delta)) * u[:-1]
        + cmath.exp(1j * p.theta) * np.sqrt(kk + 1.0) * u[1:]
    )
    return psi0, psi1


def seed_columns_alt(p: GroupParams, kmax: int) -> np.ndarray:
    """``psi_{1,k}`` from the form that divides by ``ch(rho)`` instead of ``sh(rho)``.

    ``psi_{1,k} = (psi_00 / ch) (v q^k H_k(s)/sqrt(k!) + sqrt(k) q^{k-1} H_{k-1}(s)/sqrt((k-1)!))``;
    this one stays finite at ``rho = 0`` as long as ``s`` does, and is used as a
    cross-check on :func:`seed_columns`.
    """
    _check_nonneg(kmax=kmax)
    p.require_rho()
    u = hermite_scaled(kmax, p.s, p.q)
    lower = np.concatenate(([0.0], u[:-1]))
    kk = np.arange(kmax + 1)
    return psi00(p) / p.ch * (p.v * u + np.sqrt(kk) * lower)


def psi_seed(p: GroupParams, k: int) -> np.ndarray:
    """Seed 2-vector ``Psi_{0,k} = (psi_{0,k}, psi_{1,k})``."""
    _check_nonneg(k=k)
    psi0, psi1 = seed_columns(p, k)
    return np.array([psi0[k], psi1[k]])


def psi_table(p: GroupParams, nmax: int, kmax: int, printed_b00: bool = False) -> PsiTable:
    """Fill ``psi_{n,k}`` for ``n <= nmax``, ``k <= kmax`` by the vector recurrence.

    ``k Psi_n = A_{n+1} Psi_{n+1} + B_n Psi_n + A_n^+ Psi_{n-1}`` is solved for
    ``Psi_{n+1}`` with the closed-form inverse of the lower-triangular block.
    All columns ``k`` advance together.
    """
    _check_nonneg(nmax=nmax, kmax=kmax)
    p.require_generic()
    psi0, psi1 = seed_columns(p, kmax)
    nblocks = nmax // 2 + 1
    k = np.arange(kmax + 1)
    rows = np.empty((2 * nblocks, kmax + 1), dtype=complex)
    prev = np.zeros((2, kmax + 1), dtype=complex)
    cur = np.vstack([psi0, psi1])
    rows[0:2] = cur
    A_cur, B_cur = block_matrices(p, 0, printed_b00)
    for b in range(nblocks - 1):
        A_next, B_next = block_matrices(p, b + 1, printed_b00)
        cond = np.linalg.cond(A_next)
        if cond > 1e10:
            warnings.warn(
                f"A_{b + 1} has condition number {cond:.3g}; rho = {p.rho!r} is close to the "
                "singular limit, prefer route='convolution'",
                ConditioningWarning,
                stacklevel=2,
            )
        rhs = k * cur - B_cur @ cur - A_cur.conj().T @ prev
        prev, cur = cur, inv_lower_triangular(A_next) @ rhs
        rows[2 * b + 2 : 2 * b + 4] = cur
        A_cur, B_cur = A_next, B_next
    return PsiTable(p, nmax, kmax, rows[: nmax + 1].copy(), "recurrence")


def expm(M: np.ndarray, order: int = 18) -> np.ndarray:
    """Matrix exponential by scaling and squaring around a Taylor kernel.

    ``M`` is scaled by ``2**-j`` until its 1-norm is at most 1/2, the Taylor
    series is summed to ``order`` terms (remainder below ``0.5**19 / 19!``),
    and the result is squared ``j`` times.
    """
    M = np.asarray(M, dtype=complex)
    norm = np.linalg.norm(M, 1)
    j = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    X = M / 2.0**j
    E = np.eye(M.shape[0], dtype=complex)
    term = np.eye(M.shape[0], dtype=complex)
    for i in range(1, order + 1):
        term = term @ X / i
        E = E + term
    for _ in range(j):
        E = E @ E
    return E


def _oracle_matrix(p: GroupParams, dim: int) -> np.ndarray:
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)
    ad = a.T
    v, w = p.v, p.w
    M1 = v * a - v.conjugate() * ad
    M2 = 0.5 * (w * (a @ a) - w.conjugate() * (ad @ ad))
    return expm(M1) @ expm(M2)


def _tail_ok(S, ncols, tol=1e-12):
    return float(np.max(np.abs(S[-10:, : ncols + 1]))) <= tol


def psi_oracle(
    p: GroupParams, nmax: int, kmax: int, dim: int | None = None, max_dim: int = 1024
) -> PsiTable:
    """Ground-truth table from truncated Fock-space matrices.

    With ``dim=None`` the truncation starts at ``4 max(nmax, kmax) + 40`` and is
    doubled until the last ten rows of every used column are below ``1e-12``
    (large ``rho`` spreads a column far up the ladder).  An explicit ``dim`` is
    used as given and must pass the same check.
    """
    _check_nonneg(nmax=nmax, kmax=kmax)
    floor = 4 * max(nmax, kmax) + 40
    if dim is not None:
        if dim < floor:
            raise ValueError(f"dim must be >= 4*max(nmax, kmax) + 40 = {floor}, got {dim}")
        S = _oracle_matrix(p, dim)
        if not _tail_ok(S, nmax):
            raise TruncationError(f"dim={dim} too small: tail mass above 1e-12 in columns <= {nmax}")
    else:
        dim = floor
        while True:
            S = _oracle_matrix(p, dim)
            if _tail_ok(S, nmax):
                break
            if dim >= max_dim:
                raise TruncationError(
                    f"tail check still failing at dim={dim}; raise max_dim or lower rho"
                )
            dim = min(2 * dim, max_dim)
    return PsiTable(p, nmax, kmax, S[: kmax + 1, : nmax + 1].T.copy(), "oracle")


def compute_table(p: GroupParams, nmax: int, kmax: int, route: str = "auto", **kw) -> PsiTable:
    """Table by a named route; ``auto`` picks the recurrence when it applies.

    At ``rho = 0`` or ``sigma = 0`` the recurrence is undefined and ``auto``
    falls back to the convolution route, whose factors reduce to a single
    Charlier or Meixner term there.
    """
    if route == "auto":
        route = "recurrence" if p.generic else "convolution"
    if route == "recurrence":
        return psi_table(p, nmax, kmax)
    if route == "oracle":
        return psi_oracle(p, nmax, kmax, **kw)
    if route == "convolution":
        from .decompose import convolved_table

        return convolved_table(p, nmax, kmax, **kw)
    if route == "hermite2":
        from .genfun import hermite2_table

        return hermite2_table(p, nmax, kmax)
    raise ValueError(f"unknown route {route!r}; choose from {ROUTES + ('auto',)}")


def ladder_apply(p: GroupParams, k: int, v, direction: str = "lower") -> np.ndarray:
    """Apply the lowering or raising matrix at ``k`` to a 2-vector.

    On seed vectors, ``lower`` gives ``sqrt(k) Psi_{0,k-1}`` and ``raise`` gives
    ``sqrt(k+1) Psi_{0,k+1}``.
    """
    _check_nonneg(k=k)
    lower, upper = ladder_matrices(p, k)
    v = np.asarray(v, dtype=complex)
    if direction == "lower":
        if k < 1:
            raise ValueError("lowering needs k >= 1")
        return lower @ v
    if direction == "raise":
        return upper @ v
    raise ValueError(f"direction must be 'lower' or 'raise', got {direction!r}")


def _stable_sum(terms, tol=1e-14, run=10):
    """Cumulative sum that stops once it moves by <= tol for ``run`` straight terms."""
    total, quiet = 0j, 0
    for t in terms:
        total += t
        quiet = quiet + 1 if abs(t) <= tol else 0
        if quiet >= run:
            break
    return total


def unitarity_defect(p: GroupParams, n: int, m: int, kcut: int = 200, table=None) -> float:
    """``|sum_{k <= kcut} psi_{n,k} conj(psi_{m,k}) - delta_{nm}|``.

    A precomputed table covering ``max(n, m)`` rows and ``kcut`` columns may be
    passed to avoid rebuilding it across many ``(n, m)`` pairs.
    """
    _check_nonneg(n=n, m=m, kcut=kcut)
    if table is None:
        table = compute_table(p, max(n, m), kcut)
    e = table.entries
    total = _stable_sum(e[n, : kcut + 1] * np.conj(e[m, : kcut + 1]))
    return abs(total - (1.0 if n == m else 0.0))

