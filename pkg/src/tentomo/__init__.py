"""Fan-beam tomography of symmetric tensor fields on the unit disc.

The package implements the full analytic pipeline: disc (Zernike-type)
polynomials in complex form, the orthogonal basis of divergence-free
polynomial tensor fields, the closed-form singular value decomposition of the
fan-beam transform, forward projection of gridded and polynomial fields, and
truncated-SVD reconstruction, plus a ``tentomo`` command-line front end.
"""
__version__ = "1.0.0"

from ._kernels import backend
from .basis import (
    BasisIndex,
    basis_field,
    basis_norm,
    binomial_window_sum,
    enumerate_basis,
    singular_function,
    singular_value,
    subspace_dim,
)
from .fields import (
    GridField,
    PolyField,
    complex_to_real,
    d_sym,
    divergence,
    eval_field,
    pointwise_inner,
    pointwise_norm_sq,
    real_to_complex,
    sample_to_grid,
)
from .forward import (
    FanScan,
    IrregularScan,
    LineQuadratureSpec,
    RegularScan,
    Sinogram,
    add_noise,
    chord_integrate,
    fanbeam_poly,
    irregular_vertices,
    make_sinogram,
    transform_polyfield,
)
from .inversion import (
    CoefficientSet,
    MaxTerms,
    RankDeficiencyError,
    Threshold,
    invert_lsq,
    invert_projection,
    invert_scalar_regular,
    predict_sinogram,
    reconstruct_grid,
    relative_error,
    truncate,
)
from .poly import Poly2
from .zernike import (
    QuadratureSpec,
    disc_quadrature,
    fanbeam_zernike,
    jacobi,
    jacobi_sequence,
    zernike_boundary,
    zernike_eval,
    zernike_inner,
    zernike_poly,
)

__all__ = [
    "__version__",
    "backend",
    "BasisIndex",
    "basis_field",
    "basis_norm",
    "binomial_window_sum",
    "enumerate_basis",
    "singular_function",
    "singular_value",
    "subspace_dim",
    "GridField",
    "PolyField",
    "complex_to_real",
    "d_sym",
    "divergence",
    "eval_field",
    "pointwise_inner",
    "pointwise_norm_sq",
    "real_to_complex",
    "sample_to_grid",
    "FanScan",
    "IrregularScan",
    "LineQuadratureSpec",
    "RegularScan",
    "Sinogram",
    "add_noise",
    "chord_integrate",
    "fanbeam_poly",
    "irregular_vertices",
    "make_sinogram",
    "transform_polyfield",
    "CoefficientSet",
    "MaxTerms",
    "RankDeficiencyError",
    "Threshold",
    "invert_lsq",
    "invert_projection",
    "invert_scalar_regular",
    "predict_sinogram",
    "reconstruct_grid",
    "relative_error",
    "truncate",
    "Poly2",
    "QuadratureSpec",
    "disc_quadrature",
    "fanbeam_zernike",
    "jacobi",
    "jacobi_sequence",
    "zernike_boundary",
    "zernike_eval",
    "zernike_inner",
    "zernike_poly",
]
