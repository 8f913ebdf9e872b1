"""Closed-form blocks against the assembled Hessian and dense solvers."""

import numpy as np
import pytest

from ngon_degeneracy import (
    block_2x2, block_3x3, block_spectrum, build_blocks, build_config,
    eigvals_2x2, eigvals_block3, geometry_cache, h_coefficients,
    mode_coefficients, scalar_blocks,
)
from ngon_degeneracy.hessian import assemble_terms
from ngon_degeneracy.spectral import block_from_h, mode1_reduced_det


def _setup(n, m):
    cfg = build_config(n, m)
    geo = geometry_cache(cfg)
    return cfg, geo


@pytest.mark.parametrize("n", [3, 5, 8, 12])
def test_mode_coefficients_match_direct_sums(n):
    _, geo = _setup(n, 1.0)
    k = np.arange(1, n)
    kt = k * geo.theta
    w = 1.0 / (2.0 * (2.0 * np.sin(k * np.pi / n)) ** 3)
    for l in range(1, n // 2 + 1):
        c = mode_coefficients(geo, l)
        s = float(np.sum(w * np.sin(kt) * np.sin(l * kt)))
        assert c.u_l2_im == pytest.approx(s, rel=1e-13)
        assert c.up_l1_im == pytest.approx(-s, rel=1e-13)
        base = 1.0 - np.cos(kt) * np.cos(l * kt)
        shift = 3.0 * (np.cos(kt) - np.cos(l * kt))
        assert c.u_l1 == pytest.approx(float(np.sum(w * (base - shift))),
                                       rel=1e-12)
        assert c.up_l2 == pytest.approx(float(np.sum(w * (base + shift))),
                                        rel=1e-12)


def test_mode_range_enforced():
    _, geo = _setup(6, 1.0)
    with pytest.raises(ValueError):
        mode_coefficients(geo, 0)
    with pytest.raises(ValueError):
        mode_coefficients(geo, 4)


@pytest.mark.parametrize("n,m", [(5, 0.3), (7, 1.0), (10, 4.0)])
def test_block_2x2_matches_hessian_expansion(n, m):
    cfg, geo = _setup(n, m)
    H = assemble_terms(cfg, geo).H
    for l in range(2, n // 2 + 1):
        closed = block_2x2(geo, mode_coefficients(geo, l), m)
        extracted = block_from_h(H, cfg, l)
        assert np.abs(closed - extracted).max() < 1e-10 * np.linalg.norm(H)


@pytest.mark.parametrize("n,m", [(4, 0.5), (6, 2.0), (9, 1.0)])
def test_block_3x3_action_on_invariant_subspace(n, m):
    # H acting on (v1, v1', e_x) reproduces the 3x3 block columns
    from ngon_degeneracy.representation import real_mode_vectors

    cfg, geo = _setup(n, m)
    H = assemble_terms(cfg, geo).H
    A1 = block_3x3(geo, mode_coefficients(geo, 1), m)
    v1, v1p, _, _ = real_mode_vectors(cfg, 1)
    e_cx = np.zeros(cfg.dim)
    e_cx[2 * n] = 1.0
    span = np.column_stack([v1, v1p, e_cx])
    # solve for the action coefficients column by column
    G = span.T @ span
    coeff = np.linalg.solve(G, span.T @ (H @ span))
    assert np.abs(coeff - A1).max() < 1e-9 * max(1.0, np.abs(A1).max())
    # and the span really is invariant
    residual = H @ span - span @ coeff
    assert np.abs(residual).max() < 1e-9 * np.linalg.norm(H)


@pytest.mark.parametrize("n", [3, 4, 6, 11])
def test_mode1_determinant_vanishes_at_zero_mass(n):
    _, geo = _setup(n, 0.0)
    A1 = block_3x3(geo, mode_coefficients(geo, 1), 0.0)
    assert np.linalg.det(A1) == pytest.approx(0.0, abs=1e-12)
    # bordered structure: third row and column vanish at m = 0
    assert np.abs(A1[2, :]).max() == 0.0
    assert np.abs(A1[:2, 2]).max() == 0.0


@pytest.mark.parametrize("n,m", [(5, 0.7), (8, 1.3)])
def test_mode1_determinant_factorization(n, m):
    _, geo = _setup(n, m)
    c1 = mode_coefficients(geo, 1)
    det = np.linalg.det(block_3x3(geo, c1, m))
    reduced = mode1_reduced_det(geo, c1, m)
    assert det == pytest.approx(-geo.I0 * m * reduced, rel=1e-12)


def test_mode1_reduced_det_continuous_at_zero():
    _, geo = _setup(6, 0.0)
    c1 = mode_coefficients(geo, 1)
    at_zero = mode1_reduced_det(geo, c1, 0.0)
    near = mode1_reduced_det(geo, c1, 1e-7)
    assert at_zero == pytest.approx(near, rel=1e-5)


@pytest.mark.parametrize("n", [4, 6, 10, 16])
def test_scalar_blocks_even_n(n):
    _, geo = _setup(n, 1.5)
    blocks = dict(scalar_blocks(geo, 1.5))
    assert blocks["dilation"] == 0.0
    assert blocks["rotation"] == 0.0
    A = block_2x2(geo, mode_coefficients(geo, n // 2), 1.5)
    # the l = n/2 block is diagonal: its off-diagonal sums vanish
    assert abs(A[0, 1]) < 1e-12
    assert blocks["phi3"] == pytest.approx(A[0, 0])
    assert blocks["phi4"] == pytest.approx(A[1, 1])
    assert blocks["phi3"] * blocks["phi4"] == pytest.approx(
        np.linalg.det(A), rel=1e-12)


def test_scalar_blocks_odd_n_has_no_alternating_modes():
    _, geo = _setup(7, 1.0)
    labels = [lab for lab, _ in scalar_blocks(geo, 1.0)]
    assert labels == ["dilation", "rotation"]


@pytest.mark.parametrize("seed", range(5))
def test_eigvals_2x2_closed_form(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((2, 2))
    A = 0.5 * (A + A.T)
    assert np.allclose(eigvals_2x2(A), np.linalg.eigvalsh(A), atol=1e-12)


@pytest.mark.parametrize("n,m", [(3, 0.5), (5, 1.0), (8, 3.0)])
def test_eigvals_block3_vs_dense(n, m):
    _, geo = _setup(n, m)
    A1 = block_3x3(geo, mode_coefficients(geo, 1), m)
    w = np.array([np.sqrt(n / 2.0), np.sqrt(n / 2.0), 1.0])
    S = (w[:, None] * A1) / w[None, :]
    expected = np.linalg.eigvalsh(0.5 * (S + S.T))
    assert np.allclose(eigvals_block3(A1, n), expected, atol=1e-10)


@pytest.mark.parametrize("n,m", [(3, 1.0), (4, 0.2), (7, 1.0), (12, 5.0)])
def test_block_spectrum_size_and_zero_modes(n, m):
    _, geo = _setup(n, m)
    eigs = block_spectrum(geo, m)
    assert eigs.shape == (2 * n + 2,)
    assert np.sum(np.abs(eigs) < 1e-9) >= 2


@pytest.mark.parametrize("n,m", [(5, 1.0), (6, 0.4)])
def test_build_blocks_contents(n, m):
    _, geo = _setup(n, m)
    bs = build_blocks(geo, m)
    assert sorted(bs.A) == list(range(2, n // 2 + 1))
    assert bs.A1.shape == (3, 3)
    assert bs.m == m


def test_h_coefficients_rejects_non_invariant_matrix():
    from ngon_degeneracy.spectral import BlockConsistencyError

    cfg, _ = _setup(5, 1.0)
    rng = np.random.default_rng(0)
    M = rng.standard_normal((cfg.dim, cfg.dim))
    M = M + M.T
    with pytest.raises(BlockConsistencyError):
        h_coefficients(M, cfg, 2)
