"""Brute-force ground truth for the block formulas.

Assembles the full (2n+2)x(2n+2) Hessian of f(z) = sqrt(2 I(z)) U(z) from
per-term 2x2 interaction cells, cross-checks it against central finite
differences, and provides a dense symmetric eigensolver plus the
equivariance and block-diagonality diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import GeometryCache, PolygonConfig
from .representation import (
    REFLECTION, ROTATION, SymmetryBasis, rep_matrix,
)


class HessianAssemblyError(RuntimeError):
    """Analytic assembly disagrees with the finite-difference oracle."""


class JacobiConvergenceError(RuntimeError):
    """Cyclic Jacobi failed to reach the off-diagonal target."""


@dataclass(frozen=True)
class HessianTerms:
    """Per-term matrices of the Hessian decomposition.

    ``C`` is grad(sqrt(2I)) grad(U)^T, ``D`` the Hessian of sqrt(2I),
    ``V`` the Hessian of U, and ``H = C + C^T + U0*D + I0*V`` the full
    Hessian at the configuration.  ``sep_sign`` records the separation
    vector orientation selected by the finite-difference arbiter
    (+1 means u_{kj} = (q_j - q_k)/d_{kj}).
    """

    C: np.ndarray = field(repr=False)
    D: np.ndarray = field(repr=False)
    V: np.ndarray = field(repr=False)
    H: np.ndarray = field(repr=False)
    sep_sign: float = 1.0


@dataclass(frozen=True)
class SpectrumReport:
    """Sorted spectrum with kernel bookkeeping."""

    eigenvalues: np.ndarray = field(repr=False)
    kernel_dim: int
    kernel_tol: float
    trivial_dim: int = 2


def f_value(z: np.ndarray, n: int, m: float) -> float:
    """f(z) = sqrt(2 I(z)) * U(z) for vertices of mass 1 and center mass m."""
    q = np.asarray(z).reshape(n + 1, 2)
    masses = np.ones(n + 1)
    masses[n] = m
    two_I = float(np.sum(masses * np.sum(q * q, axis=1)))
    diff = q[:, None, :] - q[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=2))
    iu, ju = np.triu_indices(n + 1, k=1)
    U = float(np.sum(masses[iu] * masses[ju] / dist[iu, ju]))
    return np.sqrt(two_I) * U


def grad_f(z: np.ndarray, n: int, m: float) -> np.ndarray:
    """Analytic gradient of f; vanishes at the configuration for every m."""
    q = np.asarray(z).reshape(n + 1, 2)
    masses = np.ones(n + 1)
    masses[n] = m
    Mz = (masses[:, None] * q).reshape(-1)
    s = np.sqrt(float(Mz @ np.asarray(z).reshape(-1)))
    diff = q[:, None, :] - q[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=2))
    np.fill_diagonal(dist, np.inf)
    U = float(np.sum(np.triu(masses[:, None] * masses[None, :] / dist, k=1)))
    w = masses[:, None] * masses[None, :] / dist ** 3
    gU = -np.sum(w[:, :, None] * diff, axis=1).reshape(-1)
    return s * gU + (U / s) * Mz


def _cells(n: int):
    """Empty (n+1, n+1) grid of 2x2 cells as a (2n+2, 2n+2) matrix view."""
    return np.zeros((2 * n + 2, 2 * n + 2))


def _cell(M: np.ndarray, k: int, j: int):
    """2x2 cell for bodies k, j (1-based; body n+1 is the center)."""
    return M[2 * (k - 1): 2 * k, 2 * (j - 1): 2 * j]


def _rot(a: float) -> np.ndarray:
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s], [s, c]])


def _row_n_terms(cfg: PolygonConfig, geo: GeometryCache, sep_sign: float):
    """Row-n 2x2 cells of the C, D and V terms plus the center cells."""
    n, m, I0 = cfg.n, cfg.m, geo.I0
    q = cfg.positions.reshape(n + 1, 2)
    qn = q[n - 1]
    E2 = np.eye(2)

    C = _cells(n)
    D = _cells(n)
    V = _cells(n)

    # C_{nk}: rank-one cells of grad(sqrt(2I)) grad(U)^T
    for k in range(1, n + 1):
        acc = np.zeros((1, 2))
        for j in range(1, n + 1):
            if j == k:
                continue
            u_kj = sep_sign * (q[j - 1] - q[k - 1]) / geo.d[k - 1, j - 1]
            acc += u_kj[None, :] / geo.d[k - 1, j - 1] ** 2
        _cell(C, n, k)[:] = np.outer(qn / I0, acc) - (m / I0) * np.outer(qn, q[k - 1])
    # C vanishes on the center row and column

    # D_{nk}: Hessian cells of sqrt(2I)
    for k in range(1, n + 1):
        _cell(D, n, k)[:] = -np.outer(qn, q[k - 1]) / I0 ** 3
    _cell(D, n, n)[:] += E2 / I0
    _cell(D, n + 1, n + 1)[:] = (m / I0) * E2

    # V_{nk}: Hessian cells of U, with the translation closure on the diagonal
    for k in range(1, n):
        d = geo.d[n - 1, k - 1]
        u = sep_sign * (q[k - 1] - qn) / d
        _cell(V, n, k)[:] = (E2 - 3.0 * np.outer(u, u)) / d ** 3
    for k in range(1, n + 1):
        _cell(V, n + 1, k)[:] = m * (E2 - 3.0 * np.outer(q[k - 1], q[k - 1]))
        _cell(V, k, n + 1)[:] = _cell(V, n + 1, k).T
    _cell(V, n, n)[:] = -sum(_cell(V, n, k) for k in range(1, n)) - _cell(V, n + 1, n)
    _cell(V, n + 1, n + 1)[:] = -sum(_cell(V, n + 1, k) for k in range(1, n + 1))
    return C, D, V


def _extend_rows(cfg: PolygonConfig, M: np.ndarray) -> None:
    """Fill rows 1..n-1 from row n by the rotational equivariance relation
    (cell of bodies (j, j+k) equals the row-n cell of offset k conjugated
    by the rotation of angle j*theta)."""
    n = cfg.n
    for j in range(1, n):
        R = _rot(j * cfg.theta)
        for k in range(1, n + 1):
            i = (j + k - 1) % n + 1  # vertex j + k, wrapped to 1..n
            _cell(M, j, i)[:] = R @ _cell(M, n, k) @ R.T
        _cell(M, j, n + 1)[:] = R @ _cell(M, n, n + 1) @ R.T
        _cell(M, n + 1, j)[:] = R @ _cell(M, n + 1, n) @ R.T


def direct_hessian(cfg: PolygonConfig) -> np.ndarray:
    """Independent full-matrix evaluation of the Hessian from the two
    gradients and the two term Hessians, without the row-n shortcut."""
    n, m = cfg.n, cfg.m
    z = cfg.positions
    q = z.reshape(n + 1, 2)
    masses = np.ones(n + 1)
    masses[n] = m
    Mz = (masses[:, None] * q).reshape(-1)
    s = np.sqrt(float(Mz @ z))
    gI = Mz / s
    gU = np.zeros(2 * n + 2)
    V = _cells(n)
    E2 = np.eye(2)
    for k in range(1, n + 2):
        acc = np.zeros(2)
        for j in range(1, n + 2):
            if j == k:
                continue
            dv = q[j - 1] - q[k - 1]
            d = np.linalg.norm(dv)
            mm = masses[k - 1] * masses[j - 1]
            acc += mm * dv / d ** 3
            cell = mm * (E2 - 3.0 * np.outer(dv, dv) / d ** 2) / d ** 3
            _cell(V, k, j)[:] = cell
            _cell(V, k, k)[:] -= cell
        gU[2 * (k - 1): 2 * k] = acc
    U = float(np.sum(np.triu(
        masses[:, None] * masses[None, :]
        / np.where(np.eye(n + 1, dtype=bool), np.inf,
                   np.linalg.norm(q[:, None] - q[None, :], axis=2)), k=1)))
    D = np.diag(np.repeat(masses, 2)) / s - np.outer(Mz, Mz) / s ** 3
    C = np.outer(gI, gU)
    return C + C.T + U * D + s * V


def assemble_terms(cfg: PolygonConfig, geo: GeometryCache, *,
                   sep_sign: float = 1.0,
                   validate_fd: bool = False,
                   fd_step: float = 1e-4,
                   fd_tol: float = 1e-5) -> HessianTerms:
    """Analytic Hessian from row-n term cells extended by equivariance.

    With ``validate_fd`` the result is compared against the
    finite-difference Hessian; on failure the opposite separation-vector
    orientation is tried once before raising.
    """
    C, D, V = _row_n_terms(cfg, geo, sep_sign)
    for M in (C, D, V):
        _extend_rows(cfg, M)
    H = C + C.T + geo.U0 * D + geo.I0 * V
    terms = HessianTerms(C=C, D=D, V=V, H=H, sep_sign=sep_sign)
    if validate_fd:
        F = fd_hessian(cfg, fd_step)
        err = np.linalg.norm(H - F) / np.linalg.norm(F)
        if err > fd_tol:
            if sep_sign == 1.0:
                flipped = assemble_terms(cfg, geo, sep_sign=-1.0,
                                         validate_fd=False)
                err2 = np.linalg.norm(flipped.H - F) / np.linalg.norm(F)
                if err2 <= fd_tol:
                    return flipped
            raise HessianAssemblyError(
                f"analytic Hessian deviates from finite differences by "
                f"{err:.3e} (tolerance {fd_tol:.1e})"
            )
    return terms


def fd_hessian(cfg: PolygonConfig, step: float = 1e-4) -> np.ndarray:
    """Central-difference Hessian of f with one Richardson step (h, h/2).

    The default step balances truncation against the eps/h^2 roundoff of
    the second difference; smaller steps lose accuracy here.
    """
    if not 1e-7 <= step <= 1e-3:
        raise ValueError(f"step {step} outside [1e-7, 1e-3]")
    coarse = _fd_hessian_raw(cfg, step)
    fine = _fd_hessian_raw(cfg, step / 2.0)
    return (4.0 * fine - coarse) / 3.0


def _fd_hessian_raw(cfg: PolygonConfig, h: float) -> np.ndarray:
    n, m = cfg.n, cfg.m
    z = cfg.positions
    N = cfg.dim
    H = np.zeros((N, N))
    f0 = f_value(z, n, m)
    for i in range(N):
        zp = z.copy(); zp[i] += h
        zm = z.copy(); zm[i] -= h
        H[i, i] = (f_value(zp, n, m) - 2.0 * f0 + f_value(zm, n, m)) / h ** 2
    for i in range(N):
        for j in range(i + 1, N):
            zpp = z.copy(); zpp[i] += h; zpp[j] += h
            zpm = z.copy(); zpm[i] += h; zpm[j] -= h
            zmp = z.copy(); zmp[i] -= h; zmp[j] += h
            zmm = z.copy(); zmm[i] -= h; zmm[j] -= h
            val = (f_value(zpp, n, m) - f_value(zpm, n, m)
                   - f_value(zmp, n, m) + f_value(zmm, n, m)) / (4.0 * h ** 2)
            H[i, j] = H[j, i] = val
    return H


def equivariance_check(H: np.ndarray, cfg: PolygonConfig) -> float:
    """Max relative commutator norm of H with the two group generators."""
    scale = np.linalg.norm(H)
    res = 0.0
    for a in (ROTATION, REFLECTION):
        Da = rep_matrix(cfg, a).entries
        res = max(res, np.linalg.norm(Da @ H - H @ Da) / scale)
    return res


@dataclass(frozen=True)
class BlockDiagonalReport:
    """Diagonal blocks of H in the orthonormal symmetry basis."""

    blocks: tuple[np.ndarray, ...] = field(repr=False)
    block_labels: tuple[tuple[tuple[int, str], ...], ...]
    off_block_max: float
    h_norm: float


def conjugate_blocks(H: np.ndarray, basis: SymmetryBasis) -> BlockDiagonalReport:
    """Conjugate H into the orthonormal symmetry basis and split blocks."""
    T = basis.B.T @ H @ basis.B
    mask = np.ones_like(T, dtype=bool)
    blocks = []
    labels = []
    for start, stop in basis.groups:
        blocks.append(T[start:stop, start:stop].copy())
        labels.append(tuple(basis.labels[start:stop]))
        mask[start:stop, start:stop] = False
    off = float(np.abs(T[mask]).max()) if mask.any() else 0.0
    return BlockDiagonalReport(
        blocks=tuple(blocks),
        block_labels=tuple(labels),
        off_block_max=off,
        h_norm=float(np.linalg.norm(H)),
    )


def symmetric_eigenvalues(M: np.ndarray, *, max_sweeps: int = 50,
                          tol: float = 1e-12) -> np.ndarray:
    """Full spectrum of a symmetric matrix by the cyclic Jacobi method.

    Sweeps rotate away every off-diagonal entry in row order until the
    off-diagonal Frobenius norm drops below ``tol`` times the matrix norm.
    """
    A = np.array(M, dtype=float)
    if A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(A, A.T, atol=1e-10 * max(1.0, np.abs(A).max())):
        raise ValueError("matrix must be symmetric")
    A = 0.5 * (A + A.T)
    N = A.shape[0]
    scale = max(np.linalg.norm(A), np.finfo(float).tiny)

    def off_norm(B: np.ndarray) -> float:
        # Sum off-diagonal squares directly: subtracting the diagonal
        # contribution from the full Frobenius norm cancels catastrophically
        # once the off-diagonal part is tiny.
        return float(np.linalg.norm(B - np.diag(np.diag(B))))

    for _ in range(max_sweeps):
        off = off_norm(A)
        if off <= tol * scale:
            return np.sort(np.diag(A))
        for p in range(N - 1):
            for q in range(p + 1, N):
                apq = A[p, q]
                if abs(apq) <= 1e-3 * tol * scale / N:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau)) \
                    if tau != 0.0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
    off = off_norm(A)
    if off <= tol * scale:
        return np.sort(np.diag(A))
    raise JacobiConvergenceError(
        f"off-diagonal norm {off:.3e} after {max_sweeps} sweeps "
        f"(target {tol * scale:.3e})"
    )


def spectrum_report(eigenvalues: np.ndarray,
                    kernel_tol: float = 1e-7) -> SpectrumReport:
    """Count near-zero eigenvalues against ``kernel_tol``."""
    eigs = np.sort(np.asarray(eigenvalues))
    return SpectrumReport(
        eigenvalues=eigs,
        kernel_dim=int(np.sum(np.abs(eigs) < kernel_tol)),
        kernel_tol=kernel_tol,
    )


def full_spectrum(cfg: PolygonConfig, geo: GeometryCache) -> np.ndarray:
    """Sorted spectrum of the analytically assembled Hessian."""
    terms = assemble_terms(cfg, geo)
    return symmetric_eigenvalues(terms.H)
