"""Numerical verification suites.

Each suite evaluates a family of identities and returns a
:class:`VerificationReport`.  A check's tolerance is ``factor * base_tol``:
the factor encodes how tight that identity is expected to be relative to the
default ``base_tol = 1e-8`` (ladder identities hold to rounding, Gram sums to
about ``1e-7``), so one ``--tol`` knob scales every suite consistently.

Checks flagged ``informational`` are reported but do not affect ``passed``;
they document behaviour outside the guaranteed range, such as the
small-``rho`` corner of the parameter grid where the forward recurrence in
``n`` loses digits.
"""

from __future__ import annotations

import cmath
import itertools
import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .decompose import assembled_vector, chi, convolved_table, gessel_seed, psi_convolved
from .elements import psi_oracle, psi_table, seed_columns, seed_columns_alt, unitarity_defect
from .genfun import (
    f_closed,
    f_derivative,
    f_series,
    g_closed,
    g_series,
    hermite2_table,
    hermite2_vector_sides,
)
from .group import GroupParams, ladder_matrices, spectral_matrices
from .mops import (
    apply_difference,
    apply_lower,
    apply_raise,
    gram_block,
    mop_from_table,
    mop_sequence,
    rodrigues,
)
from .polykernel import charlier, gessel_even, gessel_odd, hermite, laguerre
from .position import affine_vector_defect, dilate_defect, phi_wave, translate_defect

__all__ = [
    "CheckResult",
    "VerificationReport",
    "SUITES",
    "DEFAULT_TOL",
    "GRID",
    "CANONICAL",
    "run_suite",
]

DEFAULT_TOL = 1e-8

GRID = tuple(
    GroupParams(s, d, r, t)
    for s in (0.3, 0.7, 1.1)
    for r in (0.2, 0.5, 0.9)
    for d, t in ((0.0, 0.0), (0.1, 0.5), (2.0, 0.4))
)
CANONICAL = GroupParams(0.7, 0.1, 0.3, 0.5)

CONVENTIONS = {
    "group_element": "exp(v a - conj(v) a+) exp((w a^2 - conj(w) a+^2)/2), v = sigma e^{i delta}, w = rho e^{i theta}",
    "matrix_element": "psi_{n,k} = <k|S|n>",
    "block_b00": "B_n(0,0) = zeta_{2n}",
    "hermite2_args": "c1 = -(v + conj(v) e^{i theta} th), c2 = conj(v)/ch",
    "f_closed_argument": "r = e^{+i theta/2} y / sqrt(sh 2 rho) + s",
    "affine_argument": "x' = e^rho (x + sqrt(2) sigma)",
}


@dataclass
class CheckResult:
    name: str
    suite: str
    residual: float
    tol: float
    passed: bool
    params: dict = field(default_factory=dict)
    note: str = ""
    informational: bool = False


@dataclass
class VerificationReport:
    suite: str
    base_tol: float
    checks: list = field(default_factory=list)
    elapsed: float = 0.0
    conventions: dict = field(default_factory=lambda: dict(CONVENTIONS))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    def failures(self):
        return [c for c in self.checks if not c.passed and not c.informational]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "base_tol": self.base_tol,
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
            "conventions": self.conventions,
            "checks": [asdict(c) for c in self.checks],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


class _Recorder:
    def __init__(self, suite, base_tol, report):
        self.suite, self.base_tol, self.report = suite, base_tol, report

    def __call__(self, name, residual, factor=1.0, params=None, note="", informational=False):
        residual = float(residual)
        tol = factor * self.base_tol
        ok = bool(np.isfinite(residual) and residual <= tol)
        self.report.checks.append(
            CheckResult(name, self.suite, residual, tol, ok, params or {}, note, informational)
        )
        return ok


def _worst(items):
    """``(max residual, params of the argmax)`` over ``(residual, params)`` pairs."""
    items = list(items)
    res, par = max(items, key=lambda rp: rp[0])
    return res, par


def _rel_coeffs(a, b):
    scale = max(float(np.max(np.abs(b.coeffs))), 1e-300)
    n = max(len(a), len(b))
    return float(np.max(np.abs(a._padded(n) - b._padded(n)))) / scale


# --------------------------------------------------------------------------- suites


def _suite_unitarity(rec):
    t0 = time.perf_counter()
    worst = []
    for p in GRID:
        err = np.max(np.abs(psi_table(p, 12, 12).entries - psi_oracle(p, 12, 12).entries))
        worst.append((err, p.as_dict()))
    res, par = _worst(worst)
    rec("oracle_equivalence", res, 1.0, par, f"27-point grid, n, k <= 12, {time.perf_counter() - t0:.1f} s")

    worst = []
    for p in GRID:
        table = psi_table(p, 8, 200)
        err = max(unitarity_defect(p, n, m, 200, table) for n in range(9) for m in range(9))
        worst.append((err, p.as_dict()))
    res, par = _worst(worst)
    rec("unitarity", res, 1.0, par, "n, m <= 8, kcut = 200, 27-point grid")

    t = psi_table(CANONICAL, 8, 200, printed_b00=True)
    err = max(unitarity_defect(CANONICAL, n, m, 200, t) for n in range(9) for m in range(9))
    rec("unitarity_printed_b00", err, 1.0, CANONICAL.as_dict(),
        "block diagonal entry taken as xi_{2n}; expected to fail", informational=True)


def _gram_defect(p, nmax=8, kcut=300):
    G = gram_block(p, nmax, kcut)
    E = np.zeros_like(G)
    for n in range(nmax + 1):
        E[n, n] = np.eye(2)
    herm = float(np.max(np.abs(G - np.conj(np.transpose(G, (1, 0, 3, 2))))))
    return float(np.max(np.abs(G - E))), herm


def _suite_orthogonality(rec):
    err, herm = _gram_defect(CANONICAL)
    rec("gram", err, 10.0, CANONICAL.as_dict(), "n, m <= 8, kcut = 300")
    rec("gram_hermitian", herm, 0.01, CANONICAL.as_dict(), "G[n, m] = G[m, n]^+")
    res, par = _worst((_gram_defect(p)[0], p.as_dict()) for p in GRID)
    rec("gram_grid", res, 10.0, par,
        "27-point grid; small rho amplifies rounding in P_n(k) Psi_0k", informational=True)


def _difference_residual(p, nmax=8, kmax=30):
    worst = 0.0
    for n, P in enumerate(mop_sequence(p, nmax)):
        gamma = spectral_matrices(n)[0]
        lhs = np.array([apply_difference(p, P, k) for k in range(kmax + 1)])
        rhs = np.einsum("ij,kjl->kil", gamma, P(np.arange(kmax + 1)))
        scale = max(float(np.max(np.abs(rhs))), float(np.max(np.abs(P(np.arange(kmax + 1))))))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))) / scale)
    return worst


def _suite_difference(rec):
    for p in (CANONICAL, GroupParams(0.3, 2.0, 0.9, 0.4), GroupParams(1.1, 0.0, 0.5, 0.0)):
        rec("difference_equation", _difference_residual(p), 0.1, p.as_dict(),
            "relative to max_k |P_n(k)|, n <= 8, k <= 30")


def _suite_ladder(rec):
    points = (CANONICAL, GroupParams(0.3, 2.0, 0.9, 0.4), GroupParams(1.1, 0.0, 0.2, 0.0))
    for p in points:
        psi0, psi1 = seed_columns(p, 101)
        seeds = np.stack([psi0, psi1], axis=1)
        norms = np.linalg.norm(seeds, axis=1)
        low = up = ident = 0.0
        for k in range(1, 101):
            L, R = ladder_matrices(p, k)
            low = max(low, np.max(np.abs(L @ seeds[k] - math.sqrt(k) * seeds[k - 1])) / norms[k - 1])
            up = max(up, np.max(np.abs(R @ seeds[k] - math.sqrt(k + 1) * seeds[k + 1])) / norms[k + 1])
            L_next, _ = ladder_matrices(p, k + 1)
            _, R_prev = ladder_matrices(p, k - 1)
            ident = max(ident, np.max(np.abs(L_next @ R - R_prev @ L - np.eye(2))))
        rec("ladder_lower_seed", low, 1e-4, p.as_dict(), "k = 1..100, relative to |Psi_{0,k-1}|")
        rec("ladder_raise_seed", up, 1e-4, p.as_dict(), "k = 1..100, relative to |Psi_{0,k+1}|")
        rec("ladder_identity", ident, 1e-4, p.as_dict(), "entrywise, k = 1..100")
        alt = seed_columns_alt(p, 60)
        rec("seed_alternative_form", np.max(np.abs(alt - psi1[:61])) / np.max(np.abs(psi1)),
            1e-4, p.as_dict())

    polys = mop_sequence(CANONICAL, 7)
    up = down = 0.0
    for n in range(7):
        theta_next = spectral_matrices(n + 1)[1]
        up = max(up, _rel_coeffs(apply_raise(CANONICAL, polys[n]), polys[n + 1].lmul(theta_next)))
        if n:
            theta_n = spectral_matrices(n)[1]
            down = max(down, _rel_coeffs(apply_lower(CANONICAL, polys[n]), polys[n - 1].lmul(theta_n)))
    rec("raise_contract", up, 1.0, CANONICAL.as_dict(), "n <= 6, relative coefficientwise")
    rec("lower_contract", down, 1.0, CANONICAL.as_dict(), "1 <= n <= 6, relative coefficientwise")


def _suite_rodrigues(rec):
    for p in (CANONICAL, GroupParams(0.3, 2.0, 0.9, 0.4), GroupParams(1.1, 0.0, 0.2, 0.0)):
        polys = mop_sequence(p, 6)
        err = max(_rel_coeffs(rodrigues(p, n), polys[n]) for n in range(7))
        rec("rodrigues", err, 1.0, p.as_dict(), "n <= 6, relative coefficientwise")
    polys = mop_sequence(CANONICAL, 6)
    for route, table in (
        ("oracle", psi_oracle(CANONICAL, 13, 20)),
        ("convolution", convolved_table(CANONICAL, 13, 20)),
    ):
        err = max(_rel_coeffs(mop_from_table(CANONICAL, n, table), polys[n]) for n in range(7))
        rec(f"mop_from_{route}", err, 1.0, CANONICAL.as_dict(), "least-squares recovery, n <= 6")


def _suite_convolution(rec):
    worst = []
    for p in GRID:
        err = np.max(np.abs(convolved_table(p, 10, 10).entries - psi_table(p, 10, 10).entries))
        worst.append((err, p.as_dict()))
    res, par = _worst(worst)
    rec("convolution_table", res, 1.0, par, "n, k <= 10, mcut = 200, 27-point grid")

    ref = psi_table(CANONICAL, 10, 10).entries
    err = max(abs(psi_convolved(CANONICAL, n, k) - ref[n, k]) for n in (0, 3, 7, 10) for k in (0, 4, 10))
    rec("convolution_scalar", err, 1.0, CANONICAL.as_dict())

    for p, what in ((GroupParams(0.8, 0.3, 0.0, 0.0), "rho = 0"), (GroupParams(0.0, 0.0, 0.6, 0.7), "sigma = 0")):
        err = np.max(np.abs(convolved_table(p, 10, 10).entries - psi_oracle(p, 10, 10).entries))
        rec("specialization", err, 1e-4, p.as_dict(), what)

    err = 0.0
    for p in GRID[::4]:
        psi0, psi1 = seed_columns(p, 15)
        for k in range(16):
            err = max(err, np.max(np.abs(gessel_seed(p, k) - [psi0[k], psi1[k]])))
    rec("gessel_seed", err, 0.01, note="k <= 15, every fourth grid point")

    table = psi_table(CANONICAL, 9, 10).entries
    err = max(
        np.max(np.abs(assembled_vector(CANONICAL, n, k) - table[2 * n : 2 * n + 2, k]))
        for n in range(5)
        for k in range(11)
    )
    rec("assembled_form", err, 1.0, CANONICAL.as_dict(), "n <= 4, k <= 10")

    p = CANONICAL
    s, d = p.sigma, p.delta
    err = 0.0
    for k in range(8):
        for n in range(1, 12):
            lhs = k * chi(p, n, k)
            rhs = (
                -s * cmath.exp(-1j * d) * math.sqrt(n + 1) * chi(p, n + 1, k)
                + (n + s * s) * chi(p, n, k)
                - s * cmath.exp(1j * d) * math.sqrt(n) * chi(p, n - 1, k)
            )
            err = max(err, abs(lhs - rhs))
    rec("charlier_three_term", err, 0.01, p.as_dict(), "phase e^{+i delta} on the n-1 term")


def _suite_genfun(rec):
    pts = [complex(a, b) for a, b in ((0.5, 0.0), (0.0, -0.5), (0.3, 0.3), (-0.35, 0.2))]
    worst = []
    for p in GRID:
        table = psi_table(p, 40, 40)
        err = max(abs(g_series(p, x, y, table=table) - g_closed(p, x, y)) for x in pts for y in pts)
        worst.append((err, p.as_dict()))
    res, par = _worst(worst)
    rec("g_series_vs_closed", res, 0.1, par, "|x|, |y| <= 0.5, ncut = kcut = 40, 27-point grid")

    def h2_err(p):
        a, b = hermite2_table(p, 20, 20).entries, psi_table(p, 20, 20).entries
        mask = np.add.outer(np.arange(21), np.arange(21)) <= 20
        return float(np.max(np.abs(a - b)[mask]))

    rec("hermite2_vs_recurrence", h2_err(CANONICAL), 1.0, CANONICAL.as_dict(), "n + k <= 20")
    res, par = _worst((h2_err(p), p.as_dict()) for p in GRID)
    rec("hermite2_vs_recurrence_grid", res, 1.0, par,
        "27-point grid; recurrence loses digits at small rho", informational=True)

    vec = 0.0
    for n in range(5):
        for k in range(11):
            lhs, rhs = hermite2_vector_sides(CANONICAL, n, k)
            vec = max(vec, float(np.max(np.abs(lhs - rhs))))
    rec("hermite2_vector_identity", vec, 1.0, CANONICAL.as_dict(), "n <= 4, k <= 10")

    for p in (CANONICAL, GroupParams(1.1, 2.0, 0.5, 0.4)):
        psi0, psi1 = seed_columns(p, 10)
        rec("f_at_zero", max(abs(f_closed(p, k, 0) - psi0[k]) for k in range(11)), 1e-4, p.as_dict())
        rec("f_derivative", max(abs(f_derivative(p, k) - psi1[k]) for k in range(11)), 100.0,
            p.as_dict(), "central difference, h = 1e-3, one Richardson step")
    err = max(abs(f_series(CANONICAL, 3, y) - f_closed(CANONICAL, 3, y)) for y in (0.4, 0.4j, -0.3 + 0.2j))
    rec("f_series", err, 0.1, CANONICAL.as_dict(), "k = 3, ncut = 40")


TRANSLATE_GRID = tuple(itertools.product((1, 2, 4), (0.3, 0.5, 0.8), (-0.7, 0.3, 1.5)))
DILATE_GRID = tuple(itertools.product((0, 1, 2), (0.1, 0.3, 0.6), (-1.0, 0.5, 2.0)))
AFFINE_GRID = tuple(itertools.product((0, 1, 2), ((0.4, 0.3), (0.2, 0.6), (0.7, 0.15)), (-0.5, 0.2, 1.0)))


def _suite_position(rec):
    res, par = _worst(
        (translate_defect(n, s, x, 80), {"n": n, "sigma": s, "x": x}) for n, s, x in TRANSLATE_GRID
    )
    rec("translate", res, 10.0, par, "3x3x3 grid")
    for parity in ("even", "odd"):
        res, par = _worst(
            (dilate_defect(n, r, x, 80, parity), {"n": n, "rho": r, "x": x})
            for n, r, x in DILATE_GRID
        )
        rec(f"dilate_{parity}", res, 10.0, par, "3x3x3 grid")
    res, par = _worst(
        (affine_vector_defect(GroupParams(s, 0.0, r, 0.0), n, x), {"n": n, "sigma": s, "rho": r, "x": x})
        for n, (s, r), x in AFFINE_GRID
    )
    rec("affine_vector", res, 10.0, par, "3x3x3 grid, delta = theta = 0")

    err = max(translate_defect(0, s, x, 80) for s in (0.3, 0.8) for x in (-0.7, 1.5))
    rec("translate_n0", err, 0.01, note="Hermite generating function case")
    err = max(dilate_defect(0, r, x, 80, par) for r in (0.1, 0.6) for x in (-1.0, 2.0) for par in ("even", "odd"))
    rec("dilate_n0", err, 0.01, note="Laguerre generating function case")

    xs = np.arange(-12.0, 12.0 + 5e-4, 1e-3)
    waves = np.array([[phi_wave(n, x) for x in xs] for n in range(9)])
    gramw = np.trapezoid(waves[:, None, :] * waves[None, :, :], xs, axis=2)
    rec("wavefunction_orthonormality", np.max(np.abs(gramw - np.eye(9))), 1.0,
        note="trapezoid on [-12, 12], step 1e-3, n, m <= 8")


def _hermite_exact(n, x: Fraction) -> Fraction:
    total = Fraction(0)
    for m in range(n // 2 + 1):
        total += Fraction((-1) ** m * math.factorial(n), math.factorial(m) * math.factorial(n - 2 * m)) * (
            2 * x
        ) ** (n - 2 * m)
    return total


def _suite_appendix(rec):
    worst = 0.0
    for x in range(11):
        for a in (0.5, 1.0, 2.0):
            for t in (0.5, -0.5, 0.3, 0.4j, 0.3 - 0.3j):
                for fn in (gessel_even, gessel_odd):
                    lhs, rhs = fn(x, a, t)
                    # floor of 1: at a (1 + t) = 1 the odd sum vanishes identically
                    worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0))
    rec("gessel", worst, 0.01, note="x <= 10, a in {0.5, 1, 2}, |t| <= 0.5, relative above 1")

    worst = 0.0
    for n in range(15):
        for x in np.linspace(-3, 3, 13):
            even = (-1) ** n * 4**n * math.factorial(n) * laguerre(n, -0.5, x * x)
            odd = (-1) ** n * 2 ** (2 * n + 1) * math.factorial(n) * x * laguerre(n, 0.5, x * x)
            for h, ref in ((hermite(2 * n, x), even), (hermite(2 * n + 1, x), odd)):
                worst = max(worst, abs(h - ref) / max(abs(h), 1.0))
    rec("hermite_laguerre", worst, 0.01, note="n <= 14, |x| <= 3, relative")

    worst = 0.0
    for n in range(31):
        for x in (Fraction(-5), Fraction(-7, 3), Fraction(1, 10), Fraction(13, 4), Fraction(5)):
            exact = _hermite_exact(n, x)
            worst = max(worst, abs(hermite(n, float(x)) - float(exact)) / max(abs(float(exact)), 1.0))
    rec("hermite_explicit_sum", worst, 0.01, note="n <= 30, |x| <= 5, exact rational reference")

    h = 1e-5
    worst = 0.0
    xs = np.linspace(-2.0, 2.0, 9)
    for n in range(1, 21):
        fd = (hermite(n, xs + h) - hermite(n, xs - h)) / (2 * h)
        ref = 2 * n * hermite(n - 1, xs)
        worst = max(worst, float(np.max(np.abs(fd - ref)) / np.max(np.abs(ref))))
        fd = (laguerre(n, 0.5, xs + 3 + h) - laguerre(n, 0.5, xs + 3 - h)) / (2 * h)
        ref = -laguerre(n - 1, 1.5, xs + 3)
        worst = max(worst, float(np.max(np.abs(fd - ref)) / np.max(np.abs(ref))))
    rec("appell", worst, 10.0, note="central difference h = 1e-5, n <= 20")

    worst = 0.0
    for z in (0.5, -0.5, 0.3j, 0.35 + 0.35j):
        for x in (-1.3, 0.4, 2.0):
            lhs = sum(hermite(n, x) * z**n / math.factorial(n) for n in range(80))
            worst = max(worst, abs(lhs - cmath.exp(2 * x * z - z * z)) / abs(lhs))
            for alpha in (-0.5, 0.5, 2.0):
                lhs = sum(laguerre(n, alpha, x + 1.5) * z**n for n in range(120))
                rhs = (1 - z) ** (-alpha - 1) * cmath.exp((x + 1.5) * z / (z - 1))
                worst = max(worst, abs(lhs - rhs) / abs(rhs))
        for a in (0.7, 2.0):
            for xi in (0, 3, 7):
                lhs = sum(charlier(n, xi, a) * z**n / math.factorial(n) for n in range(80))
                rhs = cmath.exp(z) * (1 - z / a) ** xi
                worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1.0))
    rec("generating_functions", worst, 0.01, note="Hermite, Laguerre, Charlier at |t| <= 0.5")


SUITES = {
    "unitarity": _suite_unitarity,
    "orthogonality": _suite_orthogonality,
    "difference": _suite_difference,
    "ladder": _suite_ladder,
    "rodrigues": _suite_rodrigues,
    "convolution": _suite_convolution,
    "genfun": _suite_genfun,
    "position": _suite_position,
    "appendix": _suite_appendix,
}


def run_suite(name: str, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Run one suite (or ``"all"``) with every check scaled to ``tol``."""
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    report = VerificationReport(name, tol)
    t0 = time.perf_counter()
    for key in SUITES if name == "all" else (name,):
        SUITES[key](_Recorder(key, tol, report))
    report.elapsed = time.perf_counter() - t0
    return report
