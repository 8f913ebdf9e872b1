"""Closed-form Hessian blocks per symmetry mode.

Each Fourier mode l carries four trigonometric coefficient sums over the
chords d_{n,k}.  Two of the sums are real and two purely imaginary; the
imaginary unit is absorbed so everything here is real arithmetic.  From
these the 2x2 blocks (l >= 2), the 3x3 mode-1 block coupling to the
central mass, and the scalar eigenvalues are assembled as explicit
functions of (n, m).

The blocks are written in the unnormalized basis {v_l, v_l'} (plus the
center unit vector for l = 1).  Those basis vectors are orthogonal with
squared norms (n/2, n/2, 1), so the 3x3 block is not symmetric but is
similar to a symmetric matrix via diag(sqrt(n/2), sqrt(n/2), 1);
determinants and eigenvalues are unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import GeometryCache, PolygonConfig


class BlockConsistencyError(RuntimeError):
    """An invariant-subspace expansion failed to close."""


@dataclass(frozen=True)
class ModeCoefficients:
    """Per-mode coefficient sums, imaginary parts stored as reals.

    ``u_l1`` and ``up_l2`` are the real sums; ``u_l2_im`` and ``up_l1_im``
    are the imaginary parts of the purely imaginary sums and satisfy
    up_l1_im = -u_l2_im term by term.
    """

    l: int
    u_l1: float
    u_l2_im: float
    up_l1_im: float
    up_l2: float


@dataclass(frozen=True)
class BlockSet:
    """All Hessian blocks of one configuration at mass ``m``."""

    scalar_eigs: tuple[tuple[str, float], ...]
    A: dict[int, np.ndarray] = field(repr=False)
    A1: np.ndarray = field(repr=False)
    m: float


def mode_coefficients(geo: GeometryCache, l: int) -> ModeCoefficients:
    """The four chord sums of mode l, for 1 <= l <= n//2."""
    n = geo.n
    if not 1 <= l <= n // 2:
        raise ValueError(f"mode l={l} outside 1..{n // 2}")
    k = np.arange(1, n)
    kt = k * geo.theta
    w = 1.0 / (2.0 * geo.dn ** 3)
    cos_diff = np.cos(kt) - np.cos(l * kt)
    base = 1.0 - np.cos(kt) * np.cos(l * kt)
    s = float(np.sum(w * np.sin(kt) * np.sin(l * kt)))
    return ModeCoefficients(
        l=l,
        u_l1=float(np.sum(w * (base - 3.0 * cos_diff))),
        u_l2_im=s,
        up_l1_im=-s,
        up_l2=float(np.sum(w * (base + 3.0 * cos_diff))),
    )


def block_2x2(geo: GeometryCache, coeffs: ModeCoefficients, m: float) -> np.ndarray:
    """Mode-l block for l >= 2 (also valid at l = n/2, where it is diagonal)."""
    I0, U0 = geo.I0, geo.Ue0 + geo.n * m
    # off-diagonals -i*I0*U'_l1 and i*I0*U_l2 resolve to the same real number
    off = I0 * coeffs.up_l1_im
    return np.array([
        [U0 / I0 + I0 * (coeffs.u_l1 + 2.0 * m), off],
        [-I0 * coeffs.u_l2_im, U0 / I0 + I0 * (coeffs.up_l2 - m)],
    ])


def block_3x3(geo: GeometryCache, coeffs: ModeCoefficients, m: float) -> np.ndarray:
    """Mode-1 block in the basis (v_1, v_1', center-x).

    The third row/column carries the coupling with the central mass; every
    coupling entry is proportional to m, so the block degenerates to the
    2x2 form bordered by zeros at m = 0.  The entries were validated
    against finite-difference Hessians compressed onto the invariant
    subspace.
    """
    if coeffs.l != 1:
        raise ValueError("block_3x3 requires mode-1 coefficients")
    n, I0 = geo.n, geo.I0
    U0 = geo.Ue0 + n * m
    top = block_2x2(geo, coeffs, m)
    return np.array([
        [top[0, 0], top[0, 1], -2.0 * I0 * m],
        [top[1, 0], top[1, 1], I0 * m],
        [-I0 * n * m, I0 * n * m / 2.0, U0 * m / I0 + I0 * n * m / 2.0],
    ])


def mode1_reduced_det(geo: GeometryCache, coeffs: ModeCoefficients, m: float) -> float:
    """det(A_1) with the structural factor -I0*m divided out.

    The 3x3 determinant factors as -I0 * m * p(m) with p quadratic; p is
    the quantity whose positive roots are the mode-1 degeneracy masses.
    The m = 0 value is the limit of the quotient.
    """
    if m == 0.0:
        eps = 1e-6
        return 0.5 * (mode1_reduced_det(geo, coeffs, eps)
                      + mode1_reduced_det(geo, coeffs, -eps))
    return float(np.linalg.det(block_3x3(geo, coeffs, m)) / (-geo.I0 * m))


def scalar_blocks(geo: GeometryCache, m: float) -> list[tuple[str, float]]:
    """Eigenvalues of the one-dimensional modes.

    The dilation and rotation fields are exact zero modes for every m
    (scale and rotation invariance of the underlying function).  For n
    even the two alternating-sign modes contribute the diagonal of the
    l = n/2 block, whose off-diagonal sums vanish identically.
    """
    out = [("dilation", 0.0), ("rotation", 0.0)]
    n = geo.n
    if n % 2 == 0:
        c = mode_coefficients(geo, n // 2)
        A = block_2x2(geo, c, m)
        out.append(("phi3", float(A[0, 0])))
        out.append(("phi4", float(A[1, 1])))
    return out


def build_blocks(geo: GeometryCache, m: float) -> BlockSet:
    """Assemble every block of the configuration at central mass ``m``."""
    A = {
        l: block_2x2(geo, mode_coefficients(geo, l), m)
        for l in range(2, geo.n // 2 + 1)
    }
    return BlockSet(
        scalar_eigs=tuple(scalar_blocks(geo, m)),
        A=A,
        A1=block_3x3(geo, mode_coefficients(geo, 1), m),
        m=m,
    )


def h_coefficients(H: np.ndarray, cfg: PolygonConfig, l: int,
                   tol: float = 1e-10):
    """Expansion coefficients of H acting on the mode-l Fourier pair.

    Computed by the discrete Fourier sums of the 2x2 interaction cells of
    row n; the expansion H v_1 = h_l1 v_1 + h_l2 v_2 (and primed
    counterpart) is verified and a :class:`BlockConsistencyError` raised
    if its residual exceeds ``tol`` times the matrix norm.
    """
    from .representation import fourier_vectors

    n = cfg.n
    if not 2 <= l <= n // 2:
        raise ValueError(f"mode l={l} outside 2..{n // 2}")
    h = np.zeros(2, dtype=complex)
    hp = np.zeros(2, dtype=complex)
    for k in range(1, n + 1):
        cell = H[2 * (n - 1): 2 * n, 2 * (k - 1): 2 * k]
        phase = np.exp(-1j * l * k * cfg.theta)
        radial = np.array([np.cos(k * cfg.theta), np.sin(k * cfg.theta)])
        tangential = np.array([-np.sin(k * cfg.theta), np.cos(k * cfg.theta)])
        h += phase * (cell @ radial)
        hp += phase * (cell @ tangential)
    v1, v2 = fourier_vectors(cfg, l)
    scale = np.linalg.norm(H)
    res = max(
        np.linalg.norm(H @ v1 - h[0] * v1 - h[1] * v2),
        np.linalg.norm(H @ v2 - hp[0] * v1 - hp[1] * v2),
    )
    if res > tol * scale:
        raise BlockConsistencyError(
            f"mode-{l} subspace expansion residual {res:.3e} exceeds "
            f"{tol:.1e} * ||H||; invariant-subspace assumption broken"
        )
    return h[0], h[1], hp[0], hp[1]


def block_from_h(H: np.ndarray, cfg: PolygonConfig, l: int,
                 tol: float = 1e-10) -> np.ndarray:
    """Real mode-l block assembled from the Fourier expansion coefficients."""
    h1, h2, hp1, hp2 = h_coefficients(H, cfg, l, tol=tol)
    A = np.array([[h1, -1j * hp1], [1j * h2, hp2]])
    if np.abs(A.imag).max() > tol * max(1.0, np.abs(A.real).max()):
        raise BlockConsistencyError("mode block has non-real entries")
    return A.real


def eigvals_2x2(A: np.ndarray) -> np.ndarray:
    """Eigenvalues of a symmetric 2x2 matrix, ascending, in closed form."""
    half_tr = 0.5 * (A[0, 0] + A[1, 1])
    delta = np.hypot(0.5 * (A[0, 0] - A[1, 1]), 0.5 * (A[0, 1] + A[1, 0]))
    return np.array([half_tr - delta, half_tr + delta])


def _eigvals_sym3(S: np.ndarray) -> np.ndarray:
    """Closed-form eigenvalues of a symmetric 3x3 matrix, ascending."""
    p1 = S[0, 1] ** 2 + S[0, 2] ** 2 + S[1, 2] ** 2
    q = np.trace(S) / 3.0
    if p1 == 0.0:
        return np.sort(np.diag(S))
    p2 = np.sum((np.diag(S) - q) ** 2) + 2.0 * p1
    p = np.sqrt(p2 / 6.0)
    B = (S - q * np.eye(3)) / p
    r = np.clip(np.linalg.det(B) / 2.0, -1.0, 1.0)
    phi = np.arccos(r) / 3.0
    hi = q + 2.0 * p * np.cos(phi)
    lo = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    return np.array([lo, 3.0 * q - hi - lo, hi])


def eigvals_block3(A1: np.ndarray, n: int) -> np.ndarray:
    """Eigenvalues of the mode-1 block, ascending.

    The block is symmetrized by the basis-norm similarity
    diag(sqrt(n/2), sqrt(n/2), 1) before the closed-form solve.
    """
    w = np.array([np.sqrt(n / 2.0), np.sqrt(n / 2.0), 1.0])
    S = (w[:, None] * A1) / w[None, :]
    S = 0.5 * (S + S.T)  # symmetric up to roundoff
    return _eigvals_sym3(S)


def block_spectrum(geo: GeometryCache, m: float) -> np.ndarray:
    """Full 2n+2 eigenvalue multiset predicted by the closed-form blocks.

    Mode blocks for 2 <= l < n/2 and the mode-1 block each occur twice
    (the v- and w-side subspaces carry equal blocks); for n even the
    l = n/2 contribution enters through the two scalar modes.
    """
    n = geo.n
    blocks = build_blocks(geo, m)
    eigs = [val for _, val in blocks.scalar_eigs]
    e1 = eigvals_block3(blocks.A1, n)
    eigs.extend(np.repeat(e1, 2))
    for l in range(2, (n + 1) // 2):
        eigs.extend(np.repeat(eigvals_2x2(blocks.A[l]), 2))
    return np.sort(np.array(eigs))
