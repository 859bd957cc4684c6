"""Cross-checks against independent engines: sympy for calculus on random
expressions, mpmath (30 significant digits) for the gamma function and the
closed-form amplitude.  These back up the in-package dual routes with
third-party oracles.
"""

import cmath
import math

import mpmath
import pytest
import sympy
from hypothesis import given

from starwedge.expr import eval_numeric, differentiate, substitute
from starwedge.gammafn import complex_gamma
from starwedge.spectrum import ModeParams, f_closed

from test_expr import recipes, _to_expr, _NAMES

_SYMPY_SYMBOLS = {n: sympy.Symbol(n) for n in _NAMES}
_SYMPY_FNS = {"sinh": sympy.sinh, "cosh": sympy.cosh, "exp": sympy.exp, "tanh": sympy.tanh}


def _to_sympy(r):
    tag = r[0]
    if tag == "int":
        return sympy.Integer(r[1])
    if tag == "sym":
        return _SYMPY_SYMBOLS[r[1]]
    if tag == "add":
        return _to_sympy(r[1]) + _to_sympy(r[2])
    if tag == "mul":
        return _to_sympy(r[1]) * _to_sympy(r[2])
    if tag == "pow":
        return _to_sympy(r[1]) ** r[2]
    return _SYMPY_FNS[r[1]](_to_sympy(r[2]))


_POINT = {n: 0.5 + 0.17 * k for k, n in enumerate(_NAMES)}


@given(recipes)
def test_derivative_against_sympy(recipe):
    ours = differentiate(_to_expr(recipe), "z0")
    theirs = sympy.diff(_to_sympy(recipe), _SYMPY_SYMBOLS["z0"])
    try:
        got = eval_numeric(ours, _POINT)
        want = complex(theirs.evalf(subs=_POINT))
    except OverflowError:
        return
    if not (cmath.isfinite(got) and cmath.isfinite(want)):
        return
    assert abs(got - want) <= 1e-9 * (1.0 + abs(want))


@given(recipes)
def test_substitution_against_sympy(recipe):
    ours = substitute(_to_expr(recipe), {"z0": _to_expr(("fn", "cosh", ("sym", "z1")))})
    theirs = _to_sympy(recipe).subs(
        _SYMPY_SYMBOLS["z0"], sympy.cosh(_SYMPY_SYMBOLS["z1"]), simultaneous=True
    )
    try:
        got = eval_numeric(ours, _POINT)
        want = complex(theirs.evalf(subs={k: v for k, v in _POINT.items() if k != "z0"}))
    except OverflowError:
        return
    if not (cmath.isfinite(got) and cmath.isfinite(want)):
        return
    assert abs(got - want) <= 1e-9 * (1.0 + abs(want))


def test_gamma_against_mpmath_high_precision():
    mpmath.mp.dps = 30
    pts = [0.5, 1.0, 3.7, 0.5 + 10j, 1j, 0.3 - 2.4j, -1.5 + 0.25j, 2.0 + 49j,
           -0.4 - 49j, 12.0 - 31j]
    for s in pts:
        got = complex_gamma(s)
        want = complex(mpmath.gamma(s))
        assert abs(got - want) <= 1e-12 * abs(want), f"gamma mismatch at {s}"


def test_damped_integral_against_mpmath_closed_form():
    # the damped mode integral has the exact value Gamma(p+h-is) (h-iw)^(-(p+h-is));
    # evaluate it at 30 significant digits and compare the panel integrator
    from starwedge.quadrature import damped_mode_integral

    mpmath.mp.dps = 30
    for p in (0, 1):
        for s in (0.5, 1.0, 2.0):
            for h in (0.25, 0.05):
                got, _ = damped_mode_integral(s, 1.0, h, power_shift=p)
                c = p + h - 1j * s
                want = complex(mpmath.gamma(c) * (h - 1j) ** (-c))
                assert abs(got - want) <= 1e-11 * abs(want), (p, s, h)


def test_amplitude_limit_against_mpmath():
    # h -> 0 limit of the damped integral: (1/a) Gamma(-is) w^{is} e^{pi s/2}
    mpmath.mp.dps = 30
    for s in (0.5, 1.0, 2.0):
        m = ModeParams(omega_hat=1.0, z=1.0, a=1.0, omega=s)
        got = f_closed(m)
        want = complex(mpmath.gamma(-1j * s) * mpmath.exp(mpmath.pi * s / 2))
        assert abs(got - want) <= 1e-12 * abs(want)


def test_planck_form_against_mpmath():
    mpmath.mp.dps = 30
    for y in (0.1, 0.7, 2.9):
        m = ModeParams(omega_hat=1.0, z=1.0, a=1.0, omega=y)
        got = m.omega * abs(f_closed(ModeParams(1.0, 1.0, 1.0, -y))) ** 2
        want = float(2 * mpmath.pi / mpmath.expm1(2 * mpmath.pi * y))
        assert got == pytest.approx(want, rel=1e-12)
