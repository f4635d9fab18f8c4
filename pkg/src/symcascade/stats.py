"""Binomial proportion estimates and normal quantiles.

Confidence intervals use the Wilson score method, which stays inside
[0, 1] and behaves sensibly for proportions near the boundaries, unlike
the plain normal approximation.
"""

import math
from dataclasses import dataclass

__all__ = ["normal_quantile", "z_for_confidence", "wilson_interval", "EstimateCell"]

# Two-sided z values for the common confidence levels, so the usual cases
# never touch the rational approximation.
_STANDARD_Z = {
    0.90: 1.6448536269514722,
    0.95: 1.959963984540054,
    0.99: 2.5758293035489004,
}

# Coefficients of Wichura's rational approximation of the inverse normal
# CDF (algorithm PPND16), accurate to well below 1e-8 over (0, 1).
_A = (
    3.3871328727963666080e0,
    1.3314166789178437745e2,
    1.9715909503065514427e3,
    1.3731693765509461125e4,
    4.5921953931549871457e4,
    6.7265770927008700853e4,
    3.3430575583588128105e4,
    2.5090809287301226727e3,
)
_B = (
    1.0,
    4.2313330701600911252e1,
    6.8718700749205790830e2,
    5.3941960214247511077e3,
    2.1213794301586595867e4,
    3.9307895800092710610e4,
    2.8729085735721942674e4,
    5.2264952788528545610e3,
)
_C = (
    1.42343711074968357734e0,
    4.63033784615654529590e0,
    5.76949722146069140550e0,
    3.64784832476320460504e0,
    1.27045825245236838258e0,
    2.41780725177450611770e-1,
    2.27238449892691845833e-2,
    7.74545014278341407640e-4,
)
_D = (
    1.0,
    2.05319162663775882187e0,
    1.67638483018380384940e0,
    6.89767334985100004550e-1,
    1.48103976427480074590e-1,
    1.51986665636164571966e-2,
    5.47593808499534494600e-4,
    1.05075007164441684324e-9,
)
_E = (
    6.65790464350110377720e0,
    5.46378491116411436990e0,
    1.78482653991729133580e0,
    2.96560571828504891230e-1,
    2.65321895265761230930e-2,
    1.24266094738807843860e-3,
    2.71155556874348757815e-5,
    2.01033439929228813265e-7,
)
_F = (
    1.0,
    5.99832206555887937690e-1,
    1.36929880922735805310e-1,
    1.48753612908506148525e-2,
    7.86869131145613259100e-4,
    1.84631831751005468180e-6,
    1.42151175831644588870e-7,
    2.04426310338993978564e-15,
)


def _poly(coeffs: tuple[float, ...], x: float) -> float:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF for ``p`` in (0, 1)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile argument must be in (0, 1), got {p}")
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _poly(_A, r) / _poly(_B, r)
    r = p if q < 0.0 else 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        value = _poly(_C, r) / _poly(_D, r)
    else:
        r -= 5.0
        value = _poly(_E, r) / _poly(_F, r)
    return -value if q < 0.0 else value


def z_for_confidence(confidence: float) -> float:
    """Two-sided critical z value for a confidence level in (0, 1)."""
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    z = _STANDARD_Z.get(round(confidence, 10))
    if z is None:
        z = normal_quantile(0.5 * (1.0 + confidence))
    return z


def wilson_interval(
    successes: int, trials: int, confidence: float = 0.95
) -> tuple[float, float]:
    """Wilson score confidence interval for a binomial proportion.

    Args:
        successes: Number of successes, 0 <= successes <= trials.
        trials: Number of trials, >= 1.
        confidence: Two-sided confidence level in (0, 1).

    Returns:
        (low, high), clamped to [0, 1]; always contains successes/trials.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not 0 <= successes <= trials:
        raise ValueError(f"successes must be in [0, {trials}], got {successes}")
    z = z_for_confidence(confidence)
    p_hat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p_hat + z2 / (2.0 * trials)) / denom
    margin = (z / denom) * math.sqrt(
        p_hat * (1.0 - p_hat) / trials + z2 / (4.0 * trials * trials)
    )
    # At the boundaries the interval endpoint is exactly 0 or 1; pin it so
    # rounding cannot push the interval off the observed proportion.
    low = 0.0 if successes == 0 else max(0.0, center - margin)
    high = 1.0 if successes == trials else min(1.0, center + margin)
    return low, high


@dataclass(frozen=True)
class EstimateCell:
    """Monte Carlo point estimate of one activation probability."""

    successes: int
    trials: int
    point: float
    ci_low: float
    ci_high: float
    confidence: float

    @classmethod
    def from_counts(
        cls, successes: int, trials: int, confidence: float = 0.95
    ) -> "EstimateCell":
        low, high = wilson_interval(successes, trials, confidence)
        return cls(
            successes=successes,
            trials=trials,
            point=successes / trials,
            ci_low=low,
            ci_high=high,
            confidence=confidence,
        )

    def contains(self, value: float) -> bool:
        """Whether ``value`` lies inside the closed confidence interval."""
        return self.ci_low <= value <= self.ci_high
