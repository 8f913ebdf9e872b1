"""Critical-mass analysis: roots, counts and kernel verification."""

import numpy as np
import pytest

from ngon_degeneracy import (
    build_config, count_table, degeneracy_report, geometry_cache,
    mode1_degeneracy, mode_coefficients, mode_degeneracy,
    predicted_count, verify_degeneracy,
)
from ngon_degeneracy.degeneracy import _stable_quadratic_roots, det_affine
from ngon_degeneracy.spectral import block_2x2

# positive root of the n = 3 quadratic in closed form
M_STAR_3 = (2.0 * np.sqrt(3.0) + 9.0) / (18.0 * np.sqrt(3.0) - 15.0)


def _geo(n):
    return geometry_cache(build_config(n, 1.0))


def test_triangle_critical_mass_exact():
    rep = degeneracy_report(3)
    assert rep.count == 1
    assert abs(rep.all_m_star[0] - M_STAR_3) < 1e-12


@pytest.mark.parametrize("n", [5, 8, 12])
def test_affine_determinant_matches_block(n):
    geo = _geo(n)
    for l in range(2, n // 2 + 1):
        c = mode_coefficients(geo, l)
        for m in (0.0, 0.5, 2.0, 7.0):
            direct = float(np.linalg.det(block_2x2(geo, c, m)))
            assert det_affine(geo, c, m) == pytest.approx(direct, rel=1e-10)


@pytest.mark.parametrize("n", [6, 10, 14])
def test_mode_degeneracy_root_is_determinant_zero(n):
    geo = _geo(n)
    for l in range(2, n // 2 + 1):
        md = mode_degeneracy(geo, mode_coefficients(geo, l))
        if md.m_star is None:
            continue
        assert md.m_star > 0
        c = mode_coefficients(geo, l)
        assert det_affine(geo, c, md.m_star) == pytest.approx(0.0, abs=1e-9)


def test_mode_degeneracy_rejects_mode_one():
    geo = _geo(8)
    with pytest.raises(ValueError):
        mode_degeneracy(geo, mode_coefficients(geo, 1))


def test_mode1_degeneracy_rejects_higher_modes():
    geo = _geo(8)
    with pytest.raises(ValueError):
        mode1_degeneracy(geo, mode_coefficients(geo, 2))


@pytest.mark.parametrize("n", range(3, 31))
def test_beta_sign_shares_sign_of_constant_term(n):
    geo = _geo(n)
    for l in range(2, n // 2 + 1):
        md = mode_degeneracy(geo, mode_coefficients(geo, l))
        assert np.sign(md.beta_l) == np.sign(md.a_l)


@pytest.mark.parametrize("n", range(3, 31))
def test_mode1_positive_root_regime(n):
    geo = _geo(n)
    m1 = mode1_degeneracy(geo, mode_coefficients(geo, 1))
    expected = 1 if n <= 6 else 0
    assert len(m1.positive_roots) == expected


@pytest.mark.parametrize("n", range(3, 31))
def test_count_matches_prediction(n):
    assert degeneracy_report(n).count == predicted_count(n)


def test_count_table_range():
    table = count_table(3, 12)
    assert table == [(n, predicted_count(n)) for n in range(3, 13)]
    with pytest.raises(ValueError):
        count_table(2, 10)
    with pytest.raises(ValueError):
        count_table(5, 4)


def test_predicted_count_pattern():
    assert [predicted_count(n) for n in range(3, 13)] == \
        [1, 1, 1, 2, 1, 2, 2, 4, 4, 5]
    with pytest.raises(ValueError):
        predicted_count(2)


def test_stable_quadratic_roots():
    r = _stable_quadratic_roots(1.0, -3.0, 2.0)
    assert np.allclose(r, [1.0, 2.0])
    assert _stable_quadratic_roots(1.0, 0.0, 1.0) == ()
    assert np.allclose(_stable_quadratic_roots(0.0, 2.0, -4.0), [2.0])
    # severe cancellation case: roots 1e-8 and 1e8
    r = _stable_quadratic_roots(1.0, -(1e8 + 1e-8), 1.0)
    assert r[0] == pytest.approx(1e-8, rel=1e-12)
    assert r[1] == pytest.approx(1e8, rel=1e-12)


@pytest.mark.parametrize("n", [3, 6, 8])
def test_kernel_probe_at_critical_mass(n):
    rep = degeneracy_report(n)
    m_star = rep.all_m_star[0]
    probe = verify_degeneracy(n, m_star)
    assert probe.kernel_at_star >= 3
    assert probe.extra_at_star >= 1
    assert probe.kernel_above == 2
    if probe.kernel_below is not None:
        assert probe.kernel_below == 2


def test_kernel_probe_skips_negative_mass_side():
    # n = 6 has a critical mass below the probe offset
    rep = degeneracy_report(6)
    tiny = min(rep.all_m_star)
    assert tiny < 0.05
    probe = verify_degeneracy(6, tiny)
    assert probe.kernel_below is None
    assert probe.kernel_at_star >= 3


@pytest.mark.parametrize("n", [10, 12])
def test_all_critical_masses_distinct(n):
    rep = degeneracy_report(n)
    stars = np.array(rep.all_m_star)
    assert np.all(np.diff(stars) > 1e-9)
    assert rep.collisions == ()
