"""Thermal spectrum of a massless plane wave seen by an accelerated observer.

A right-moving positive-frequency mode, written in the proper time tau and
radial coordinate z of an observer with acceleration a, has the Fourier
amplitude

    f(omega) = int dtau exp(i omega_hat z e^{-a tau}) e^{i omega tau}
             = (1/a) (omega_hat z)^{i omega/a} Gamma(-i omega/a) e^{pi omega / 2a},

where the phase power and (-i)^... branch follow the principal logarithm
with -i = e^{-i pi/2}.  The detected power at negative frequency is Planckian:

    omega |f(-omega)|^2 = (2 pi / a) / (e^{2 pi omega / a} - 1),

a thermal spectrum at temperature T = a / 2 pi.

The constant-deformation correction enters through the single parameter
``theta01`` (the time-radial component with both indices lowered by the
(-,+,+,+) metric; the raised component is -theta01).  At first order the
amplitude picks up the factor

    1 - (2 theta01 omega / (a z^2)) (i omega/a - 1),

and the detected spectrum deviates from the Planck form by the relative
amount -2 theta01 omega / (pi T z^2).
"""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass, replace

from .gammafn import GammaPoleError, complex_gamma
from .quadrature import QuadratureResult, mode_integral

__all__ = [
    "ModeParams",
    "ThetaCorrection",
    "hawking_temperature",
    "planck_power",
    "f_closed",
    "f_quadrature",
    "correction_integral_closed",
    "correction_integral_quadrature",
    "PowerSpectrumPoint",
    "power_spectrum",
    "deformed_f_theta",
    "deformed_correction_quadrature",
    "DeformedPowerPoint",
    "deformed_power",
    "LinearRegimeWarning",
    "SpectrumRow",
    "SpectrumResult",
]


class LinearRegimeWarning(UserWarning):
    """The first-order deformation bound was violated."""


@dataclass(frozen=True)
class ModeParams:
    """Mode and observer parameters: flat frequency, radial position, acceleration."""

    omega_hat: float
    z: float
    a: float
    omega: float

    def __post_init__(self) -> None:
        if not self.omega_hat > 0:
            raise ValueError("omega_hat must be positive")
        if not self.z > 0:
            raise ValueError("z must be positive")
        if not self.a > 0:
            raise ValueError("a must be positive")


@dataclass(frozen=True)
class ThetaCorrection:
    """Constant-deformation input for the corrected spectrum.

    ``theta01`` is the lowered-index time-radial component; a positive value
    suppresses the detected spectrum at positive frequency.
    """

    theta01: float


def hawking_temperature(a: float) -> float:
    """Temperature of the detected thermal spectrum, a / (2 pi), natural units."""
    if not a > 0:
        raise ValueError("acceleration must be positive")
    return a / (2.0 * math.pi)


def planck_power(a: float, omega: float) -> float:
    """(2 pi / a) / (e^{2 pi omega / a} - 1), the thermal closed form."""
    return (2.0 * math.pi / a) / math.expm1(2.0 * math.pi * omega / a)


def f_closed(m: ModeParams) -> complex:
    """Closed-form Fourier amplitude of the mode in observer proper time.

    The overall sign is fixed by the defining integral itself (the quadrature
    route converges to this value); the phase factor has unit modulus, so
    every power formula is independent of omega_hat * z.
    """
    s = m.omega / m.a
    if s == 0.0:
        raise GammaPoleError("amplitude has a gamma pole at omega = 0")
    wz = m.omega_hat * m.z
    phase = cmath.exp(1j * s * math.log(wz))
    return (1.0 / m.a) * phase * complex_gamma(-1j * s) * math.exp(math.pi * s / 2.0)


def f_quadrature(
    m: ModeParams,
    *,
    eps0: float | None = None,
    levels: int = 7,
    panel_factor: int = 1,
    rtol: float = 1e-7,
) -> QuadratureResult:
    """Fourier amplitude by damped quadrature and extrapolation of the damping.

    Independent of :func:`f_closed` and of the gamma function; this is the
    numerical oracle for the closed form.
    """
    s = m.omega / m.a
    w = m.omega_hat * m.z
    res = mode_integral(
        s, w, power_shift=0, eps0=eps0, levels=levels, panel_factor=panel_factor, rtol=rtol
    )
    return replace(res, value=res.value / m.a)


def correction_integral_closed(m: ModeParams) -> complex:
    """Closed form of the mode integral carrying one extra e^{-a tau} factor.

    Equals (1/a) Gamma(1 - i omega/a) (-i omega_hat z)^{-(1 - i omega/a)} by
    the one-step recursion Gamma(y + 1) = y Gamma(y) applied to the amplitude.
    """
    s = m.omega / m.a
    wz = m.omega_hat * m.z
    # principal branch: (-i wz)^(-(1 - i s)) = e^{-(1 - i s)(ln wz - i pi/2)}
    expo = -(1.0 - 1j * s) * (math.log(wz) - 1j * math.pi / 2.0)
    return (1.0 / m.a) * complex_gamma(1.0 - 1j * s) * cmath.exp(expo)


def correction_integral_quadrature(
    m: ModeParams,
    *,
    eps0: float | None = None,
    levels: int = 7,
    panel_factor: int = 1,
    rtol: float = 1e-7,
) -> QuadratureResult:
    """Quadrature oracle for :func:`correction_integral_closed`."""
    s = m.omega / m.a
    w = m.omega_hat * m.z
    res = mode_integral(
        s, w, power_shift=1, eps0=eps0, levels=levels, panel_factor=panel_factor, rtol=rtol
    )
    return replace(res, value=res.value / m.a)


@dataclass(frozen=True)
class PowerSpectrumPoint:
    """omega * P(-omega) computed two ways; the two must agree."""

    via_amplitude: float
    planck: float


def power_spectrum(m: ModeParams) -> PowerSpectrumPoint:
    """Detected power omega * |f(-omega)|^2 next to the Planck closed form."""
    if not m.omega > 0:
        raise ValueError("omega must be positive for the detected spectrum")
    neg = replace(m, omega=-m.omega)
    via = m.omega * abs(f_closed(neg)) ** 2
    return PowerSpectrumPoint(via_amplitude=via, planck=planck_power(m.a, m.omega))


def _bracket(m: ModeParams, d: ThetaCorrection) -> complex:
    """First-order amplitude factor 1 - (2 theta01 omega/(a z^2))(i omega/a - 1)."""
    s = m.omega / m.a
    return 1.0 - (2.0 * d.theta01 * m.omega / (m.a * m.z**2)) * (1j * s - 1.0)


def deformed_f_theta(m: ModeParams, d: ThetaCorrection) -> complex:
    """Corrected Fourier amplitude at first order in theta01."""
    return f_closed(m) * _bracket(m, d)


def deformed_correction_quadrature(
    m: ModeParams,
    d: ThetaCorrection,
    *,
    eps0: float | None = None,
    levels: int = 7,
    panel_factor: int = 1,
    rtol: float = 1e-7,
) -> complex:
    """First-order amplitude correction assembled from its two mode integrals.

    Both correction terms carry the integral with one extra e^{-a tau} factor,
    here evaluated by damped quadrature rather than by the gamma recursion:

        (2 i theta^{01} omega omega_hat / (a z)) J  -  (2 theta^{01} omega_hat / z) J,

    with the raised component theta^{01} = -theta01.  Cross-checks
    deformed_f_theta(m, d) - f_closed(m).
    """
    theta_upper = -d.theta01
    j = correction_integral_quadrature(
        m, eps0=eps0, levels=levels, panel_factor=panel_factor, rtol=rtol
    ).value
    wave_term = (2.0j * theta_upper * m.omega * m.omega_hat / (m.a * m.z)) * j
    argument_term = -(2.0 * theta_upper * m.omega_hat / m.z) * j
    return wave_term + argument_term


def relative_deviation_closed(m: ModeParams, d: ThetaCorrection) -> float:
    """-2 theta01 omega / (pi T z^2): the closed-form spectral deviation."""
    t = hawking_temperature(m.a)
    return -2.0 * d.theta01 * m.omega / (math.pi * t * m.z**2)


LINEAR_REGIME_BOUND = 0.1


@dataclass(frozen=True)
class DeformedPowerPoint:
    """omega * P(-omega) with the first-order deformation, two routes."""

    closed_form: float
    via_amplitude: float
    linear_bound_exceeded: bool


def deformed_power(m: ModeParams, d: ThetaCorrection) -> DeformedPowerPoint:
    """Corrected detected power at negative frequency, truncated at first order.

    ``closed_form`` scales the Planck form by (1 + deviation); ``via_amplitude``
    squares the corrected amplitude at -omega and drops the quadratic term.
    A warning flags points where the first-order regime bound |deviation| > 0.1
    is violated.
    """
    if not m.omega > 0:
        raise ValueError("omega must be positive for the detected spectrum")
    dev = relative_deviation_closed(m, d)
    exceeded = abs(dev) > LINEAR_REGIME_BOUND
    if exceeded:
        warnings.warn(
            f"first-order deformation bound exceeded: |{dev:.3g}| > {LINEAR_REGIME_BOUND}",
            LinearRegimeWarning,
            stacklevel=2,
        )
    base = power_spectrum(m)
    closed = base.planck * (1.0 + dev)
    neg = replace(m, omega=-m.omega)
    # |f (1 + c)|^2 truncated at first order: |f|^2 (1 + 2 Re c)
    c = _bracket(neg, d) - 1.0
    via = base.via_amplitude * (1.0 + 2.0 * c.real)
    return DeformedPowerPoint(closed_form=closed, via_amplitude=via, linear_bound_exceeded=exceeded)


# --- grid evaluation and export ------------------------------------------------

@dataclass(frozen=True)
class SpectrumRow:
    omega: float
    f_value: complex
    power: float
    power_deformed: float
    method: str
    eps: float | None
    converged: bool = True


@dataclass(frozen=True)
class SpectrumResult:
    """Grid of detected-spectrum values with their provenance.

    Per row: the amplitude f(-omega), the detected power omega * |f(-omega)|^2,
    its first-order deformed counterpart, and whether the amplitude came from
    the closed form or from the quadrature oracle (with its starting damping).
    """

    a: float
    omega_hat: float
    z: float
    theta01: float
    rows: tuple[SpectrumRow, ...]

    @property
    def all_converged(self) -> bool:
        return all(r.converged for r in self.rows)

    def to_csv(self) -> str:
        lines = ["omega,re_f,im_f,power,power_deformed,method,eps"]
        for r in self.rows:
            eps = "" if r.eps is None else repr(r.eps)
            lines.append(
                f"{r.omega!r},{r.f_value.real!r},{r.f_value.imag!r},"
                f"{r.power!r},{r.power_deformed!r},{r.method},{eps}"
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self, *, seed: int | None = None, tolerances: dict | None = None) -> dict:
        return {
            "parameters": {
                "a": self.a,
                "omega_hat": self.omega_hat,
                "z": self.z,
                "theta01": self.theta01,
                "temperature": hawking_temperature(self.a),
            },
            "seed": seed,
            "tolerances": tolerances or {},
            "rows": [
                {
                    "omega": r.omega,
                    "re_f": r.f_value.real,
                    "im_f": r.f_value.imag,
                    "power": r.power,
                    "power_deformed": r.power_deformed,
                    "method": r.method,
                    "eps": r.eps,
                    "converged": r.converged,
                }
                for r in self.rows
            ],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_dict(**kw), indent=2, sort_keys=True) + "\n"


def compute_spectrum(
    omegas: "list[float]",
    *,
    a: float,
    omega_hat: float,
    z: float,
    theta01: float = 0.0,
    method: str = "closed-form",
    eps0: float | None = None,
    levels: int = 7,
    panel_factor: int = 1,
    rtol: float = 1e-7,
) -> SpectrumResult:
    """Evaluate the detected spectrum over a grid of positive frequencies.

    ``method`` is "closed-form", "quadrature" or "both"; quadrature rows tag
    the damping they started from and report convergence per point.
    """
    if method not in ("closed-form", "quadrature", "both"):
        raise ValueError(f"unknown method {method!r}")
    d = ThetaCorrection(theta01)
    rows: list[SpectrumRow] = []
    for omega in omegas:
        if not omega > 0:
            raise ValueError("grid frequencies must be positive")
        m = ModeParams(omega_hat=omega_hat, z=z, a=a, omega=omega)
        neg = replace(m, omega=-omega)
        dp = deformed_power(m, d)
        if method in ("closed-form", "both"):
            fval = f_closed(neg)
            rows.append(
                SpectrumRow(
                    omega=omega,
                    f_value=fval,
                    power=omega * abs(fval) ** 2,
                    power_deformed=dp.via_amplitude,
                    method="closed-form",
                    eps=None,
                )
            )
        if method in ("quadrature", "both"):
            res = f_quadrature(
                neg, eps0=eps0, levels=levels, panel_factor=panel_factor, rtol=rtol
            )
            power = omega * abs(res.value) ** 2
            rows.append(
                SpectrumRow(
                    omega=omega,
                    f_value=res.value,
                    power=power,
                    power_deformed=power * (1.0 + relative_deviation_closed(m, d)),
                    method="quadrature",
                    eps=res.eps0,
                    converged=res.converged,
                )
            )
    return SpectrumResult(a=a, omega_hat=omega_hat, z=z, theta01=theta01, rows=tuple(rows))
