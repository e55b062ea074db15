"""Input validation for run configurations."""

import math
from typing import Any

from .models import EPS_MAX


def validate_epsilon(eps: Any) -> tuple[bool, str]:
    """Validate the core size."""
    try:
        value = float(eps)
    except (ValueError, TypeError):
        return False, "Invalid epsilon format"
    if not 0 < value < 1:
        return False, "epsilon must lie in (0, 1)"
    if value >= EPS_MAX:
        return False, f"epsilon must be below e^-1 = {EPS_MAX:.6f} so that |ln eps| > 1"
    return True, ""


def validate_positive(value: Any, name: str) -> tuple[bool, str]:
    """Validate a strictly positive finite parameter such as kappa or lambda."""
    try:
        x = float(value)
    except (ValueError, TypeError):
        return False, f"Invalid {name} format"
    if not math.isfinite(x) or x <= 0:
        return False, f"{name} must be positive"
    return True, ""


def validate_range(lo: Any, hi: Any, name: str) -> tuple[bool, str]:
    """Validate a sweep interval lo < hi with both ends positive."""
    for bound in (lo, hi):
        ok, message = validate_positive(bound, name)
        if not ok:
            return ok, message
    if float(lo) >= float(hi):
        return False, f"{name} range must satisfy min < max"
    return True, ""


def validate_tolerance(tol: Any) -> tuple[bool, str]:
    """Validate an integrator tolerance."""
    try:
        value = float(tol)
    except (ValueError, TypeError):
        return False, "Invalid tolerance format"
    if not 0 < value < 1:
        return False, "tolerance must lie in (0, 1)"
    return True, ""


def validate_threads(threads: Any) -> tuple[bool, str]:
    """Validate the worker count."""
    try:
        n = int(threads)
    except (ValueError, TypeError):
        return False, "Invalid thread count"
    if n < 1:
        return False, "thread count must be at least 1"
    return True, ""
