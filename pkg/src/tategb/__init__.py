"""Groebner bases over integral Tate algebras at capped p-adic precision.

Everything works in K°{X}/p^N: series are finite, reductions terminate,
and three interchangeable engines (buchberger, pote, vapote) compute
Groebner bases that agree after canonical minimization.
"""

from . import _core
from .arith import Context, EngineOptions
from .engine import (
    EngineStats,
    buchberger,
    colon_signatures,
    minimize_and_reduce,
    pote,
    vapote,
)
from .errors import TateError
from .series import (
    TateMonomial,
    TateSeries,
    TateTerm,
    format_series,
    normalize_to_integral,
    parse_series,
)
from .systems import (
    TorsionSystemSpec,
    division_polynomial,
    random_system,
    tate_curve_coefficients,
    torsion_system,
)

__version__ = "0.1.0"


def kernel_backend():
    """Name of the active arithmetic kernel ('compiled' or 'pure')."""
    return _core.active()
