"""Closed-form degeneracy analysis in the central-mass parameter.

For every mode l >= 2 the block determinant is affine in m, giving at
most one positive critical mass per mode.  The mode-1 determinant factors
as -I0 * m times a quadratic in m whose positive roots are the mode-1
critical masses.  The total count of distinct positive critical values
follows the pattern 1 (n = 3), floor(n/2) - 1 (4 <= n <= 6),
floor(n/2) - 2 (7 <= n <= 9), floor(n/2) - 1 (n >= 10).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import GeometryCache, build_config, geometry_cache
from .spectral import ModeCoefficients, block_3x3, mode_coefficients

DEDUP_TOL = 1e-9


class CoefficientMismatchError(RuntimeError):
    """Closed-form quadratic coefficients disagree with interpolation."""


@dataclass(frozen=True)
class ModeDegeneracy:
    """Affine determinant data for one mode l >= 2.

    ``a_l`` is the constant term (the determinant at m = 0), ``slope``
    the coefficient of m, ``beta_l`` a rescaled diagnostic sharing the
    sign of ``a_l``.  ``m_star`` is present exactly when constant term
    and slope have opposite signs.
    """

    l: int
    a_l: float
    slope: float
    beta_l: float
    condition_met: bool
    m_star: float | None
    degenerate_in_m: bool = False


@dataclass(frozen=True)
class Mode1Degeneracy:
    """Quadratic factor of the mode-1 block determinant."""

    b: float
    c: float
    d: float
    roots: tuple[float, ...]
    positive_roots: tuple[float, ...]


@dataclass(frozen=True)
class DegeneracyReport:
    """All positive critical masses of one vertex count."""

    n: int
    modes: tuple[ModeDegeneracy, ...]
    mode1: Mode1Degeneracy
    all_m_star: tuple[float, ...]
    count: int
    collisions: tuple[tuple[float, float], ...]


def mode_degeneracy(geo: GeometryCache, coeffs: ModeCoefficients) -> ModeDegeneracy:
    """Critical-mass data of mode l >= 2 (l = n/2 admissible for n even)."""
    l = coeffs.l
    if not 2 <= l <= geo.n // 2:
        raise ValueError(f"mode l={l} outside 2..{geo.n // 2}")
    I0, d0, Ue0 = geo.I0, geo.d0, geo.Ue0
    x = Ue0 / I0 + I0 * coeffs.u_l1
    y = Ue0 / I0 + I0 * coeffs.up_l2
    cross = coeffs.up_l1_im * coeffs.u_l2_im  # U'_l1 * U_l2, real
    a_l = x * y + I0 ** 2 * cross
    beta_l = (4.0 / d0 ** 2) * (
        (d0 / 2.0 + coeffs.u_l1) * (d0 / 2.0 + coeffs.up_l2) + cross
    )
    slope = 3.0 * I0 * y
    if abs(slope) < 1e-12:
        return ModeDegeneracy(l=l, a_l=a_l, slope=slope, beta_l=beta_l,
                              condition_met=False, m_star=None,
                              degenerate_in_m=True)
    condition = a_l * y < 0.0
    m_star = -a_l / slope if condition else None
    return ModeDegeneracy(l=l, a_l=a_l, slope=slope, beta_l=beta_l,
                          condition_met=condition, m_star=m_star)


def det_affine(geo: GeometryCache, coeffs: ModeCoefficients, m: float) -> float:
    """Block determinant of mode l >= 2 as an explicit affine function."""
    md = mode_degeneracy(geo, coeffs)
    return md.a_l + md.slope * m


def _stable_quadratic_roots(b: float, c: float, d: float) -> tuple[float, ...]:
    """Real roots of b x^2 + c x + d, avoiding cancellation."""
    if b == 0.0:
        return () if c == 0.0 else (-d / c,)
    disc = c * c - 4.0 * b * d
    if disc < 0.0:
        return ()
    sq = np.sqrt(disc)
    q = -0.5 * (c + np.copysign(sq, c)) if c != 0.0 else 0.5 * sq
    roots = {q / b}
    if q != 0.0:
        roots.add(d / q)
    else:
        roots.add(0.0)
    return tuple(sorted(roots))


def mode1_degeneracy(geo: GeometryCache,
                     coeffs: ModeCoefficients,
                     rel_tol: float = 1e-8) -> Mode1Degeneracy:
    """Quadratic coefficients of the reduced mode-1 determinant.

    Coefficients come from the closed forms in (n, U_e0, U_11) and are
    cross-checked against polynomial interpolation of the assembled 3x3
    block determinant divided by its structural factor -I0*m; any
    relative disagreement above ``rel_tol`` raises.
    """
    if coeffs.l != 1:
        raise ValueError("mode1_degeneracy requires mode-1 coefficients")
    I0, Ue0 = geo.I0, geo.Ue0
    u11 = coeffs.u_l1
    b = 3.0 * I0 * (I0 ** 3 / 2.0 - Ue0 / I0 - I0 * u11)
    c = I0 ** 2 * Ue0 - 4.0 * Ue0 ** 2 / I0 ** 2 - I0 ** 4 * u11 - 5.0 * Ue0 * u11
    d = -(I0 ** 2 / 2.0 + Ue0 / I0 ** 2) * (Ue0 ** 2 / I0 ** 2 + 2.0 * Ue0 * u11)

    samples = np.array([1.0, 2.0, 3.0])
    reduced = np.array([
        np.linalg.det(block_3x3(geo, coeffs, m)) / (-I0 * m) for m in samples
    ])
    vand = np.vander(samples, 3)  # columns m^2, m, 1
    interp = np.linalg.solve(vand, reduced)
    scale = max(abs(b), abs(c), abs(d))
    err = np.max(np.abs(interp - np.array([b, c, d]))) / scale
    if err > rel_tol:
        raise CoefficientMismatchError(
            f"closed-form quadratic ({b}, {c}, {d}) vs interpolated "
            f"{tuple(interp)}: relative error {err:.3e}"
        )
    roots = _stable_quadratic_roots(b, c, d)
    positive = tuple(r for r in roots if r > 0.0)
    return Mode1Degeneracy(b=b, c=c, d=d, roots=roots, positive_roots=positive)


def degeneracy_report(n: int) -> DegeneracyReport:
    """All distinct positive critical masses for ``n`` vertices."""
    cfg = build_config(n, 1.0)
    geo = geometry_cache(cfg)
    modes = tuple(
        mode_degeneracy(geo, mode_coefficients(geo, l))
        for l in range(2, n // 2 + 1)
    )
    mode1 = mode1_degeneracy(geo, mode_coefficients(geo, 1))
    values = sorted(
        [md.m_star for md in modes if md.m_star is not None]
        + list(mode1.positive_roots)
    )
    distinct: list[float] = []
    collisions: list[tuple[float, float]] = []
    for v in values:
        if distinct and v - distinct[-1] <= DEDUP_TOL:
            collisions.append((distinct[-1], v))
        else:
            distinct.append(v)
    return DegeneracyReport(
        n=n, modes=modes, mode1=mode1,
        all_m_star=tuple(distinct), count=len(distinct),
        collisions=tuple(collisions),
    )


def predicted_count(n: int) -> int:
    """Expected number of distinct positive critical masses."""
    if n < 3:
        raise ValueError("need n >= 3")
    if n == 3:
        return 1
    if n <= 6:
        return n // 2 - 1
    if n <= 9:
        return n // 2 - 2
    return n // 2 - 1


def count_table(n_min: int, n_max: int) -> list[tuple[int, int]]:
    """Computed count of distinct critical masses for each n in the range."""
    if not 3 <= n_min <= n_max:
        raise ValueError(f"invalid range {n_min}..{n_max}")
    return [(n, degeneracy_report(n).count) for n in range(n_min, n_max + 1)]


@dataclass(frozen=True)
class KernelProbe:
    """Oracle kernel dimensions at a critical mass and nearby."""

    n: int
    m_star: float
    kernel_at_star: int
    kernel_below: int | None
    kernel_above: int
    extra_at_star: int


def verify_degeneracy(n: int, m_star: float, *, offset: float = 0.05,
                      kernel_tol: float = 1e-7) -> KernelProbe:
    """Probe the full-Hessian kernel at ``m_star`` and at ``m_star`` +- offset.

    The probe below ``m_star`` is skipped when it would need a negative
    central mass.
    """
    from .hessian import full_spectrum, spectrum_report

    def kernel(m: float) -> int:
        cfg = build_config(n, m)
        geo = geometry_cache(cfg)
        eigs = full_spectrum(cfg, geo)
        return spectrum_report(eigs, kernel_tol).kernel_dim

    at_star = kernel(m_star)
    below = kernel(m_star - offset) if m_star - offset > 0.0 else None
    above = kernel(m_star + offset)
    return KernelProbe(
        n=n, m_star=m_star,
        kernel_at_star=at_star,
        kernel_below=below,
        kernel_above=above,
        extra_at_star=at_star - 2,
    )
