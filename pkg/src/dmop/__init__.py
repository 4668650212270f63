"""Exact construction and checking of discrete multiple orthogonal polynomials
defined by a Rodrigues formula on shifted lattices."""

__version__ = "0.1.0"

from .core import Polynomial, RationalFunction, format_scalar, to_scalar
from .errors import *  # noqa: F401,F403
from .families import PRESETS, check_family, get_preset
from .rodrigues import RodriguesResult, classical_construct, rodrigues_construct
from .validate import (
    Case,
    ValidationReport,
    check_D1,
    check_D2,
    check_MD2,
    classify_case,
    validate_system,
)
from .verify import (
    check_pearson,
    derive_pearson,
    moment_oracle,
    orthogonality_residuals,
)
from .weights import (
    WeightKind,
    WeightSpec,
    WeightSystem,
    assemble_system,
    forward_ratio,
    make_weight_spec,
    ratio_uv,
    relative_weights,
)
from .zeros import ZeroSet, find_zeros, locate_zeros, zero_report
