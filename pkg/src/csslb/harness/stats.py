from __future__ import annotations

import math

from scipy.stats import norm

from ..errors import ParameterError


def wilson_interval(failures: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ParameterError("trials must be positive")
    if not 0 <= failures <= trials:
        raise ParameterError(f"failures must lie in [0, {trials}], got {failures}")
    z = norm.ppf(0.5 + confidence / 2)
    p = failures / trials
    denom = 1 + z**2 / trials
    center = (p + z**2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z**2 / (4 * trials**2)) / denom
    # at p = 0 or 1 the endpoint is exact in theory; keep rounding from pushing it past p
    return max(0.0, min(p, center - half)), min(1.0, max(p, center + half))
