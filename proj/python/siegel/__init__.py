"""Certified Siegel disks for rational surface automorphisms."""

import json

from ._siegel import (
    SiegelError,
    __version__,
    action_matrix,
    equal_parameter_value,
    g_function,
    is_salem,
    orbit_polynomial,
    poly_roots,
    salem_from_orbit,
)
from . import _siegel


def certify_cuspidal(n, strict=False):
    """Report dict for the cuspidal family with orbit lengths (n, n, n)."""
    return json.loads(_siegel.certify_cuspidal(n, strict))


def certify_three_lines(m, n, strict=False):
    return json.loads(_siegel.certify_three_lines(list(m), list(n), strict))


def theorem1(k, seed=1, strict=False):
    """Pipeline report with k Siegel centers, or SiegelError naming the failed stage."""
    return json.loads(_siegel.theorem1(k, seed, strict))


def count(report, verdict):
    return sum(v["verdict"] == verdict for v in report["verdicts"])


__all__ = [
    "SiegelError",
    "__version__",
    "action_matrix",
    "certify_cuspidal",
    "certify_three_lines",
    "count",
    "equal_parameter_value",
    "g_function",
    "is_salem",
    "orbit_polynomial",
    "poly_roots",
    "salem_from_orbit",
    "theorem1",
]
