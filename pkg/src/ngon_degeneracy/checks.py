"""Self-consistency checks wiring the closed-form blocks to the oracle.

Every check compares an independently computed quantity against the
analytic Hessian assembly and reports a residual with its tolerance.
These back the ``verify`` CLI command and the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import GeometryCache, PolygonConfig, build_config, geometry_cache
from .hessian import (
    HessianTerms, assemble_terms, conjugate_blocks, equivariance_check,
    fd_hessian, grad_f, spectrum_report, symmetric_eigenvalues,
)
from .representation import real_basis, real_mode_vectors
from .spectral import block_spectrum, mode_coefficients

EQUIVARIANCE_TOL = 1e-10
SPECTRUM_TOL = 1e-8
MODE_SUM_TOL = 1e-10


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.value <= self.tol


def _dft_cell_sums(M: np.ndarray, cfg: PolygonConfig, l: int):
    """Discrete Fourier sums of the row-n 2x2 cells of a term matrix."""
    n = cfg.n
    radial = np.zeros(2, dtype=complex)
    tangential = np.zeros(2, dtype=complex)
    for k in range(1, n + 1):
        cell = M[2 * (n - 1): 2 * n, 2 * (k - 1): 2 * k]
        phase = np.exp(-1j * l * k * cfg.theta)
        ck, sk = np.cos(k * cfg.theta), np.sin(k * cfg.theta)
        radial += phase * (cell @ np.array([ck, sk]))
        tangential += phase * (cell @ np.array([-sk, ck]))
    return radial, tangential


def term_mode_sum_residual(cfg: PolygonConfig, geo: GeometryCache,
                           terms: HessianTerms) -> float:
    """Max deviation of the per-term mode sums from their closed forms.

    For every mode l >= 1: the rank-one term sums vanish, the
    inertia-term sums are the constant vectors (1/I0, 0) and (0, 1/I0),
    and the potential-term sums reproduce the mode coefficient sums with
    the central-mass shifts (+2m radial, -m tangential).
    """
    n, m, I0 = cfg.n, cfg.m, geo.I0
    worst = 0.0
    for l in range(1, n // 2 + 1):
        coeffs = mode_coefficients(geo, l)
        c_r, c_t = _dft_cell_sums(terms.C, cfg, l)
        worst = max(worst, np.abs(c_r).max(), np.abs(c_t).max())
        i_r, i_t = _dft_cell_sums(terms.D, cfg, l)
        worst = max(worst, np.abs(i_r - np.array([1.0 / I0, 0.0])).max())
        worst = max(worst, np.abs(i_t - np.array([0.0, 1.0 / I0])).max())
        u_r, u_t = _dft_cell_sums(terms.V, cfg, l)
        expect_r = np.array([coeffs.u_l1 + 2.0 * m, 1j * coeffs.u_l2_im])
        expect_t = np.array([1j * coeffs.up_l1_im, coeffs.up_l2 - m])
        worst = max(worst, np.abs(u_r - expect_r).max(),
                    np.abs(u_t - expect_t).max())
    return worst


def coupling_residual(cfg: PolygonConfig, geo: GeometryCache,
                      terms: HessianTerms) -> float:
    """Residual of the central-mass coupling identities.

    The potential Hessian sends the x-center unit vector to
    m * (-2 v_1 + v_1' + (n/2) e_x), the y-center one to
    m * (w_1 - 2 w_1' + (n/2) e_y), the
    inertia Hessian scales them by m/I0, and the rank-one terms kill them.
    """
    n, m, I0 = cfg.n, cfg.m, geo.I0
    v1, v1p, w1, w1p = real_mode_vectors(cfg, 1)
    e_cx = np.zeros(cfg.dim)
    e_cx[2 * n] = 1.0
    e_cy = np.zeros(cfg.dim)
    e_cy[2 * n + 1] = 1.0
    res = max(
        np.abs(terms.V @ e_cx - m * (-2.0 * v1 + v1p + 0.5 * n * e_cx)).max(),
        np.abs(terms.V @ e_cy - m * (w1 - 2.0 * w1p + 0.5 * n * e_cy)).max(),
        np.abs(terms.D @ e_cx - (m / I0) * e_cx).max(),
        np.abs(terms.D @ e_cy - (m / I0) * e_cy).max(),
        np.abs(terms.C @ e_cx).max(),
        np.abs(terms.C.T @ e_cx).max(),
        np.abs(terms.C @ e_cy).max(),
        np.abs(terms.C.T @ e_cy).max(),
    )
    return float(res)


def run_all_checks(n: int, m: float, *,
                   tol_analytic: float = 1e-9,
                   tol_fd: float = 1e-5,
                   tol_kernel: float = 1e-7,
                   fd_step: float = 1e-4,
                   flip_sep_sign: bool = False) -> list[CheckResult]:
    """Full verification battery for one (n, m) pair."""
    cfg = build_config(n, m)
    geo = geometry_cache(cfg)
    sep = -1.0 if flip_sep_sign else 1.0
    terms = assemble_terms(cfg, geo, sep_sign=sep)
    H = terms.H
    h_norm = np.linalg.norm(H)
    results = []

    results.append(CheckResult(
        "gradient-at-configuration",
        float(np.abs(grad_f(cfg.positions, n, m)).max()), tol_analytic))

    F = fd_hessian(cfg, fd_step)
    results.append(CheckResult(
        "fd-vs-analytic", float(np.linalg.norm(H - F) / np.linalg.norm(F)),
        tol_fd))

    results.append(CheckResult(
        "symmetry", float(np.linalg.norm(H - H.T) / h_norm), 1e-12))

    results.append(CheckResult(
        "equivariance", equivariance_check(H, cfg), EQUIVARIANCE_TOL))

    basis = real_basis(cfg)
    report = conjugate_blocks(H, basis)
    results.append(CheckResult(
        "off-block-mass", report.off_block_max / h_norm, tol_analytic))

    sizes = sorted(len(lab) for lab in report.block_labels)
    expected = sorted([1, 1, 3, 3] + ([1, 1] if n % 2 == 0 else [])
                      + [2, 2] * ((n - 1) // 2 - 1))
    results.append(CheckResult(
        "block-sizes", 0.0 if sizes == expected else 1.0, 0.5))

    full = symmetric_eigenvalues(H)
    predicted = block_spectrum(geo, m)
    results.append(CheckResult(
        "spectrum-multiset", float(np.abs(full - predicted).max()),
        SPECTRUM_TOL))

    results.append(CheckResult(
        "term-mode-sums", term_mode_sum_residual(cfg, geo, terms),
        MODE_SUM_TOL))

    results.append(CheckResult(
        "center-coupling", coupling_residual(cfg, geo, terms), MODE_SUM_TOL))

    kernel = spectrum_report(full, tol_kernel).kernel_dim
    results.append(CheckResult(
        "trivial-kernel", 0.0 if kernel >= 2 else 1.0, 0.5))

    return results
