"""Layered wheels: deterministic generation of finite prefixes of
(f, ell)-layered wheels, structural verification, and width analysis."""

from .functions import (
    CumulativeFunction,
    SlowFunction,
    cumulative_from_slow,
    parse_f_spec,
    slow_from_cumulative,
)
from .wheel import (
    WheelPrefix,
    build_first_layer,
    build_prefix,
    extend_layer,
    verify_rules,
)

__version__ = "0.1.0"

__all__ = [
    "CumulativeFunction",
    "SlowFunction",
    "WheelPrefix",
    "build_first_layer",
    "build_prefix",
    "cumulative_from_slow",
    "extend_layer",
    "parse_f_spec",
    "slow_from_cumulative",
    "verify_rules",
    "__version__",
]
