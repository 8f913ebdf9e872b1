"""Symmetry-adapted block decomposition and degeneracy analysis for the
central + regular n-gon configuration of the planar n-body problem."""

from .geometry import (
    ConfigurationError, GeometryCache, PolygonConfig,
    build_config, geometry_cache,
)
from .representation import (
    GroupElement, RepMatrix, SymmetryBasis,
    fourier_vectors, isotypic_multiplicities, real_basis, rep_matrix,
)
from .spectral import (
    BlockSet, ModeCoefficients,
    block_2x2, block_3x3, block_spectrum, build_blocks,
    eigvals_2x2, eigvals_block3, h_coefficients,
    mode_coefficients, scalar_blocks,
)
from .hessian import (
    BlockDiagonalReport, HessianTerms, SpectrumReport,
    assemble_terms, conjugate_blocks, direct_hessian,
    equivariance_check, fd_hessian, full_spectrum, f_value, grad_f,
    spectrum_report, symmetric_eigenvalues,
)
from .degeneracy import (
    DegeneracyReport, KernelProbe, Mode1Degeneracy, ModeDegeneracy,
    count_table, degeneracy_report, mode1_degeneracy, mode_degeneracy,
    predicted_count, verify_degeneracy,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
