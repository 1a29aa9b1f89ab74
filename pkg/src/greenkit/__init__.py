"""Sectorial Green kernels of D^n + 1: carriers, Stokes sectors, responses,
curved-space reduction and independent numerical verifiers."""

from .c3_algebra import TernaryNumber, ternary_conj, ternary_mul, ternary_norm_sq
from .carriers import (
    Carrier,
    DecaySide,
    SectorDecomposition,
    active_carriers,
    carriers_of_order,
    sector_decomposition,
)
from .curved import (
    Custom,
    Exponential,
    Flat,
    GeodesicMap,
    covariant_delta_weight,
    curved_kernel,
    geodesic_map,
    metric_from_json,
    sampled_metric,
)
from .errors import (
    ComplexResidueError,
    DomainError,
    EvaluatorDivergence,
    GreenkitError,
    ImaginaryRootError,
    NonPositiveMetricError,
    PoleOnPathError,
    QuadratureNonConvergence,
    SingularSystemError,
    StokesLineError,
    ZeroPointError,
)
from .kernel import GreenKernel, build_kernel, eval_kernel, eval_kernel_derivative
from .oracle import OracleReport, fd_apply_operator, fourier_inverse_G, measure_jump
from .response import (
    Box,
    Gaussian,
    Method,
    ResponseCurve,
    Sampled,
    Superposition,
    convolve,
    convolve_box,
    convolve_gaussian,
    convolve_quadrature,
)

__version__ = "0.1.0"
