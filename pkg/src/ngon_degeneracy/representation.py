"""Dihedral group action on configuration space and the symmetry basis.

The dihedral group D_n = <r, s | r^n = s^2 = e, s r s = r^-1> acts on the
2n+2 coordinates by permuting the vertices and applying the planar
rotation/reflection to every body, the center included.

Convention: the rotation generator is realized as the *clockwise* rotation
by theta = 2*pi/n.  With this choice the mode-l Fourier vectors (components
e^{-i l k theta} times the radial/tangential frame at vertex k) are
eigenvectors of the rotation matrix with eigenvalue e^{-i l theta}.  The
center combination carrying the same eigenvalue e^{-i theta} is then
e_{2n+1} - i e_{2n+2}; the conjugate combination carries e^{+i theta}.
The reflection generator is the map fixing vertex n, i.e. conjugation
across the x-axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import PolygonConfig

_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class GroupElement:
    """Element r^j or r^j s of D_n (``reflected`` selects the coset)."""

    j: int
    reflected: bool = False

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        # group law of the dihedral group; n-reduction happens in rep_matrix
        if self.reflected:
            j = self.j - other.j
        else:
            j = self.j + other.j
        return GroupElement(j, self.reflected ^ other.reflected)


IDENTITY = GroupElement(0, False)
ROTATION = GroupElement(1, False)
REFLECTION = GroupElement(0, True)


@dataclass(frozen=True)
class RepMatrix:
    """Orthogonal matrix of the action of one group element."""

    element: GroupElement
    entries: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class SymmetryBasis:
    """Labeled real symmetry-adapted basis of the configuration space.

    ``labels`` lists (mode l, kind) pairs with kind in
    {"v", "v'", "w", "w'", "center-x", "center-y"}; ``raw`` stacks the
    unnormalized vectors as columns in the same order; ``B`` is the
    orthonormalized change-of-basis matrix; ``groups`` gives the column
    ranges of the minimal invariant subspaces (the diagonal blocks).
    """

    labels: tuple[tuple[int, str], ...]
    raw: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    groups: tuple[tuple[int, int], ...]


def _planar_map(a: GroupElement, theta: float) -> np.ndarray:
    """2x2 orthogonal map of r^j s^eps (rotation generator is clockwise)."""
    c, s = np.cos(a.j * theta), np.sin(a.j * theta)
    rot = np.array([[c, s], [-s, c]])  # R(-j*theta)
    if a.reflected:
        rot = rot @ np.diag([1.0, -1.0])
    return rot


def rep_matrix(cfg: PolygonConfig, a: GroupElement) -> RepMatrix:
    """Matrix of the action of ``a`` on the 2n+2 coordinates.

    The induced vertex permutation is found numerically: each vertex image
    is matched against the vertex list, which keeps the construction
    independent of any closed-form index convention.
    """
    n = cfg.n
    R = _planar_map(a, cfg.theta)
    verts = cfg.positions[: 2 * n].reshape(n, 2)
    M = np.zeros((cfg.dim, cfg.dim))
    for k in range(n):
        image = R @ verts[k]
        dist = np.linalg.norm(verts - image, axis=1)
        t = int(np.argmin(dist))
        if dist[t] > _MATCH_TOL:
            raise ValueError(
                f"group element {a} does not permute the vertices "
                f"(best match error {dist[t]:.3e})"
            )
        M[2 * t: 2 * t + 2, 2 * k: 2 * k + 2] = R
    M[2 * n:, 2 * n:] = R
    return RepMatrix(element=a, entries=M)


def fourier_vectors(cfg: PolygonConfig, l: int) -> tuple[np.ndarray, np.ndarray]:
    """Complex mode-l Fourier vectors (radial and tangential).

    Both returned vectors are eigenvectors of the rotation matrix with
    eigenvalue e^{-i l theta}.  Admissible modes are 0 <= l <= n//2.
    """
    n = cfg.n
    if not 0 <= l <= n // 2:
        raise ValueError(f"mode l={l} outside 0..{n // 2}")
    k = np.arange(1, n + 1)
    phase = np.exp(-1j * l * k * cfg.theta)
    v1 = np.zeros(cfg.dim, dtype=complex)
    v2 = np.zeros(cfg.dim, dtype=complex)
    v1[0:2 * n:2] = phase * np.cos(k * cfg.theta)
    v1[1:2 * n:2] = phase * np.sin(k * cfg.theta)
    v2[0:2 * n:2] = -phase * np.sin(k * cfg.theta)
    v2[1:2 * n:2] = phase * np.cos(k * cfg.theta)
    return v1, v2


def real_mode_vectors(cfg: PolygonConfig, l: int):
    """Real vectors v_l, v_l', w_l, w_l' spanning the two mode-l subspaces."""
    v1, v2 = fourier_vectors(cfg, l)
    return v1.real, v2.imag, v2.real, -v1.imag


def real_basis(cfg: PolygonConfig) -> SymmetryBasis:
    """Symmetry-adapted real basis that block-diagonalizes any matrix
    commuting with the group action.

    Order: mode-0 dilation and rotation fields; for l = 1 the two
    three-dimensional groups (v_1, v_1', center-x) and (w_1', w_1,
    center-y), paired by reflection parity; for 2 <= l < n/2 the pairs
    (v_l, v_l') and (w_l', w_l); for n even the single mode-n/2
    directions.  Total 2n+2 vectors.
    """
    n = cfg.n
    cols: list[np.ndarray] = []
    labels: list[tuple[int, str]] = []
    groups: list[tuple[int, int]] = []

    def emit(group):
        start = len(cols)
        for lab, vec in group:
            labels.append(lab)
            cols.append(vec)
        groups.append((start, len(cols)))

    e_cx = np.zeros(cfg.dim)
    e_cx[2 * n] = 1.0
    e_cy = np.zeros(cfg.dim)
    e_cy[2 * n + 1] = 1.0

    v0, _, w0, _ = real_mode_vectors(cfg, 0)
    emit([((0, "v"), v0)])
    emit([((0, "w"), w0)])

    for l in range(1, n // 2 + 1):
        vl, vlp, wl, wlp = real_mode_vectors(cfg, l)
        if n % 2 == 0 and l == n // 2:
            # mode n/2 vectors are real already; v', w' vanish
            emit([((l, "v"), vl)])
            emit([((l, "w"), wl)])
        elif l == 1:
            emit([((1, "v"), vl), ((1, "v'"), vlp), ((1, "center-x"), e_cx)])
            emit([((1, "w'"), wlp), ((1, "w"), wl), ((1, "center-y"), e_cy)])
        else:
            emit([((l, "v"), vl), ((l, "v'"), vlp)])
            emit([((l, "w'"), wlp), ((l, "w"), wl)])

    raw = np.stack(cols, axis=1)
    B = raw.copy()
    # modified Gram-Schmidt within each group; groups are mutually orthogonal
    for start, stop in groups:
        for i in range(start, stop):
            for j in range(start, i):
                B[:, i] -= (B[:, j] @ B[:, i]) * B[:, j]
            B[:, i] /= np.linalg.norm(B[:, i])
    raw.flags.writeable = False
    B.flags.writeable = False
    return SymmetryBasis(labels=tuple(labels), raw=raw, B=B, groups=tuple(groups))


def irrep_labels(n: int) -> list[str]:
    """Names of the irreducible representations of D_n."""
    out = ["phi1", "phi2"]
    if n % 2 == 0:
        out += ["phi3", "phi4"]
    out += [f"rho{k}" for k in range(1, (n - 1) // 2 + 1)]
    return out


def _irrep_character(label: str, n: int, j: int, reflected: bool) -> float:
    theta = 2.0 * np.pi / n
    if label == "phi1":
        return 1.0
    if label == "phi2":
        return -1.0 if reflected else 1.0
    if label == "phi3":
        return float((-1) ** j)
    if label == "phi4":
        return float((-1) ** (j + 1)) if reflected else float((-1) ** j)
    k = int(label[3:])
    return 0.0 if reflected else 2.0 * np.cos(k * j * theta)


def isotypic_multiplicities(cfg: PolygonConfig) -> list[tuple[str, int]]:
    """Multiplicity of each irreducible representation in the action.

    Computed from the character inner product (1/|G|) sum_a chi(a) chi_irrep(a)
    with chi(a) the trace of the representation matrix.
    """
    n = cfg.n
    chi = {}
    for refl in (False, True):
        for j in range(n):
            a = GroupElement(j, refl)
            chi[(j, refl)] = float(np.trace(rep_matrix(cfg, a).entries))
    out = []
    for label in irrep_labels(n):
        acc = sum(
            chi[(j, refl)] * _irrep_character(label, n, j, refl)
            for j in range(n) for refl in (False, True)
        )
        mult = acc / (2 * n)
        rounded = int(round(mult))
        if abs(mult - rounded) > 1e-8:
            raise ArithmeticError(f"non-integer multiplicity {mult} for {label}")
        out.append((label, rounded))
    return out
