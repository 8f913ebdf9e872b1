"""Geometry of the central + regular n-gon configuration.

The configuration consists of n unit masses at the vertices of a regular
n-gon inscribed in the unit circle, plus a mass m at the centroid.  Vertex
k (1-based) sits at (cos k*theta, sin k*theta) with theta = 2*pi/n, so
vertex n lies at (1, 0).  Coordinates are stored as a flat vector of
length 2n+2 with the center in the last two slots.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class ConfigurationError(ValueError):
    """Invalid vertex count or central mass."""


@dataclass(frozen=True)
class PolygonConfig:
    """Central + regular n-gon configuration.

    Attributes
    ----------
    n : int
        Number of polygon vertices, n >= 3.
    m : float
        Central mass (vertex masses are 1).  m = 0 is admitted as an
        evaluation point for constant-term extraction even though the
        physical configuration has m > 0.
    theta : float
        Base angle 2*pi/n.
    positions : ndarray, shape (2n+2,)
        Flat coordinate vector; vertex k occupies slots 2(k-1), 2(k-1)+1
        and the center the last two slots.
    """

    n: int
    m: float
    theta: float
    positions: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return 2 * self.n + 2

    @property
    def masses(self) -> np.ndarray:
        """Masses per body (vertices first, center last)."""
        mass = np.ones(self.n + 1)
        mass[self.n] = self.m
        return mass

    def vertex(self, k: int) -> np.ndarray:
        """Position of vertex k, 1-based as in the usual labeling."""
        if not 1 <= k <= self.n:
            raise IndexError(f"vertex index {k} out of range 1..{self.n}")
        return self.positions[2 * (k - 1): 2 * k]


@dataclass(frozen=True)
class GeometryCache:
    """Scalar geometric quantities of a configuration.

    ``d`` holds the pairwise vertex distances with d[k-1, j-1] = |q_k - q_j|;
    ``d0`` is the sum of inverse distances from vertex n to the others,
    ``I0 = sqrt(n)`` the square root of twice the moment of inertia,
    ``Ue0`` the polygon-only potential and ``U0 = Ue0 + n*m`` the total
    potential at the configuration.
    """

    n: int
    m: float
    theta: float
    d: np.ndarray = field(repr=False)
    d0: float
    I0: float
    Ue0: float
    U0: float

    @property
    def dn(self) -> np.ndarray:
        """Chord lengths d_{n,k} for k = 1..n-1."""
        return self.d[self.n - 1, : self.n - 1]


def build_config(n: int, m: float) -> PolygonConfig:
    """Construct the configuration for ``n`` vertices and central mass ``m``.

    Raises
    ------
    ConfigurationError
        If n < 3 or m < 0.
    """
    if int(n) != n or n < 3:
        raise ConfigurationError(f"need at least 3 vertices, got n={n}")
    if m < 0:
        raise ConfigurationError(f"central mass must be nonnegative, got m={m}")
    n = int(n)
    theta = 2.0 * np.pi / n
    k = np.arange(1, n + 1)
    pos = np.zeros(2 * n + 2)
    pos[0:2 * n:2] = np.cos(k * theta)
    pos[1:2 * n:2] = np.sin(k * theta)
    pos.flags.writeable = False
    return PolygonConfig(n=n, m=float(m), theta=theta, positions=pos)


def geometry_cache(cfg: PolygonConfig) -> GeometryCache:
    """Precompute pairwise distances and the scalar potential sums."""
    n = cfg.n
    k = np.arange(1, n + 1)
    # d_{kj} = 2 sin(|k-j| theta / 2)
    diff = np.abs(k[:, None] - k[None, :])
    d = 2.0 * np.sin(diff * cfg.theta / 2.0)
    d.flags.writeable = False
    dn = d[n - 1, : n - 1]
    d0 = float(np.sum(1.0 / dn))
    Ue0 = 0.5 * n * d0  # every vertex sees the same chord multiset
    U0 = Ue0 + n * cfg.m
    return GeometryCache(
        n=n, m=cfg.m, theta=cfg.theta, d=d,
        d0=d0, I0=float(np.sqrt(n)), Ue0=Ue0, U0=U0,
    )
