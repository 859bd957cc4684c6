"""Complex gamma function via a fixed-coefficient rational approximation.

Uses the 15-term g = 607/128 coefficient set in the half-plane Re s >= 0.5
and the reflection formula elsewhere.  Relative accuracy is at the 1e-13
level on the strip |Im s| <= 50, comfortably inside the 1e-12 budget the
modulus-identity checks require.
"""

from __future__ import annotations

import cmath
import math

__all__ = ["GammaPoleError", "complex_gamma", "gamma_modulus_sq_imag_axis"]

_LANCZOS_G = 607.0 / 128.0

_LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


class GammaPoleError(ValueError):
    """Gamma evaluated at a non-positive integer."""


def _series(s: complex) -> complex:
    acc = _LANCZOS_COEFFS[0]
    for k in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[k] / (s + (k - 1))
    return acc


def complex_gamma(s: complex) -> complex:
    """Gamma(s) for complex s, excluding the poles at 0, -1, -2, ..."""
    s = complex(s)
    if s.imag == 0.0 and s.real <= 0.0 and s.real == int(s.real):
        raise GammaPoleError(f"gamma pole at {s.real:g}")
    if s.real < 0.5:
        # reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
        return math.pi / (cmath.sin(math.pi * s) * complex_gamma(1.0 - s))
    t = s + (_LANCZOS_G - 0.5)
    return _SQRT_TWO_PI * t ** (s - 0.5) * cmath.exp(-t) * _series(s)


def gamma_modulus_sq_imag_axis(y: float) -> float:
    """|Gamma(i y)|^2 = pi / (y sinh(pi y)), the closed form on the imaginary axis."""
    if y == 0.0:
        raise GammaPoleError("gamma pole at 0")
    return math.pi / (y * math.sinh(math.pi * y))
