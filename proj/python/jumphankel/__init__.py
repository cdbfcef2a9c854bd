"""Hankel determinants, ladder identities and Painleve checks for jump-Gaussian weights.

Numbers are returned as decimal strings carrying the full working precision;
feed them to mpmath.mpf or Decimal as needed.
"""

from ._core import (
    ConfigError,
    NumericalError,
    determinant_probability,
    estimate_probability,
    hankel_det,
    hankel_det_direct,
    integrate_cpiv,
    iterate,
    ladder,
    map_to_piv,
    moments,
    ops,
    run_cli,
    sigma,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "determinant_probability",
    "estimate_probability",
    "hankel_det",
    "hankel_det_direct",
    "integrate_cpiv",
    "iterate",
    "ladder",
    "map_to_piv",
    "moments",
    "ops",
    "run_cli",
    "sigma",
]
