"""Dihedral group action, Fourier vectors and the symmetry-adapted basis."""

import numpy as np
import pytest

from ngon_degeneracy import (
    build_config, fourier_vectors, isotypic_multiplicities,
    real_basis, rep_matrix,
)
from ngon_degeneracy.representation import (
    GroupElement, IDENTITY, REFLECTION, ROTATION, real_mode_vectors,
)


@pytest.mark.parametrize("n", [3, 4, 5, 8])
def test_group_relations(n):
    cfg = build_config(n, 1.0)

    def M(a):
        return rep_matrix(cfg, a).entries

    r, s = M(ROTATION), M(REFLECTION)
    assert np.allclose(np.linalg.matrix_power(r, n), np.eye(cfg.dim),
                       atol=1e-12)
    assert np.allclose(s @ s, np.eye(cfg.dim), atol=1e-12)
    # s r s = r^{-1}
    assert np.allclose(s @ r @ s, r.T, atol=1e-12)


@pytest.mark.parametrize("n", [4, 7])
def test_representation_is_homomorphism(n):
    cfg = build_config(n, 2.0)
    rng = np.random.default_rng(7)
    for _ in range(10):
        a = GroupElement(int(rng.integers(0, n)), bool(rng.integers(0, 2)))
        b = GroupElement(int(rng.integers(0, n)), bool(rng.integers(0, 2)))
        Mab = rep_matrix(cfg, a * b).entries
        assert np.allclose(Mab, rep_matrix(cfg, a).entries
                           @ rep_matrix(cfg, b).entries, atol=1e-12)


@pytest.mark.parametrize("n", [3, 6, 9])
def test_rep_matrices_orthogonal(n):
    cfg = build_config(n, 1.0)
    for a in (IDENTITY, ROTATION, REFLECTION, GroupElement(2, True)):
        M = rep_matrix(cfg, a).entries
        assert np.allclose(M @ M.T, np.eye(cfg.dim), atol=1e-12)


@pytest.mark.parametrize("n", [5, 6, 11, 12])
def test_fourier_vectors_are_rotation_eigenvectors(n):
    cfg = build_config(n, 1.0)
    R = rep_matrix(cfg, ROTATION).entries
    for l in range(0, n // 2 + 1):
        v1, v2 = fourier_vectors(cfg, l)
        lam = np.exp(-1j * l * cfg.theta)
        assert np.allclose(R @ v1, lam * v1, atol=1e-12)
        assert np.allclose(R @ v2, lam * v2, atol=1e-12)


def test_fourier_mode_range_enforced():
    cfg = build_config(5, 1.0)
    with pytest.raises(ValueError):
        fourier_vectors(cfg, 3)
    with pytest.raises(ValueError):
        fourier_vectors(cfg, -1)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 9, 10])
def test_real_basis_is_orthonormal_and_complete(n):
    cfg = build_config(n, 1.0)
    basis = real_basis(cfg)
    B = basis.B
    assert B.shape == (cfg.dim, cfg.dim)
    assert np.abs(B.T @ B - np.eye(cfg.dim)).max() < 1e-12
    assert len(basis.labels) == cfg.dim


@pytest.mark.parametrize("n", [5, 6, 8, 11])
def test_basis_group_sizes(n):
    basis = real_basis(build_config(n, 1.0))
    sizes = sorted(stop - start for start, stop in basis.groups)
    expected = sorted([1, 1, 3, 3] + ([1, 1] if n % 2 == 0 else [])
                      + [2, 2] * ((n - 1) // 2 - 1))
    assert sizes == expected


@pytest.mark.parametrize("n", [4, 7])
def test_raw_mode_vector_norms(n):
    # the unnormalized v/w vectors are orthogonal with squared norm n/2
    cfg = build_config(n, 1.0)
    for l in range(1, (n - 1) // 2 + 1):
        vl, vlp, wl, wlp = real_mode_vectors(cfg, l)
        for a in (vl, vlp, wl, wlp):
            assert np.dot(a, a) == pytest.approx(n / 2.0, abs=1e-12)
        assert abs(np.dot(vl, vlp)) < 1e-12
        assert abs(np.dot(wl, wlp)) < 1e-12


@pytest.mark.parametrize("n,expected", [
    # phi1, phi2 once each (dilation / rotation fields), each 2-dim irrep
    # rho_k with multiplicity 2 except rho_1 which picks up the center: 3
    (3, {"phi1": 1, "phi2": 1, "rho1": 3}),
    (5, {"phi1": 1, "phi2": 1, "rho1": 3, "rho2": 2}),
    (4, {"phi1": 1, "phi2": 1, "phi3": 1, "phi4": 1, "rho1": 3}),
    (6, {"phi1": 1, "phi2": 1, "phi3": 1, "phi4": 1, "rho1": 3, "rho2": 2}),
    (8, {"phi1": 1, "phi2": 1, "phi3": 1, "phi4": 1,
         "rho1": 3, "rho2": 2, "rho3": 2}),
])
def test_isotypic_multiplicities(n, expected):
    mult = dict(isotypic_multiplicities(build_config(n, 1.0)))
    assert mult == expected


@pytest.mark.parametrize("n", [5, 6, 9, 10])
def test_multiplicities_account_for_dimension(n):
    cfg = build_config(n, 1.0)
    total = 0
    for label, mult in isotypic_multiplicities(cfg):
        dim = 2 if label.startswith("rho") else 1
        total += mult * dim
    assert total == cfg.dim
