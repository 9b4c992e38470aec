"""Coefficient-level Hecke-type combination on eta-quotient coefficients.

For parameters ``(r, s, p, ell)`` with ``phi = E(q)^r E(q^p)^s = sum c(n) q^n``
the combined coefficient is::

    T(n) = ell^(2-2eps) c(n ell^2 + Delta)
           + (theta/ell) ell^(1/2-eps) ((n - Delta)/ell) c(n)
           + c((n - Delta)/ell^2)

and ``G = (sum T(n) q^n) / phi`` is a modular function on Gamma_0(p).  The
starred side swaps ``r`` and ``s`` in ``phi`` and uses ``Delta*``,
``theta*``.  Every index that is negative or non-integral contributes zero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .arith import NewmanParams, jacobi
from .exceptions import VerificationError
from .qforms import ProductSpec, eta_quotient
from .series import LaurentSeries


class Side(str, enum.Enum):
    PLAIN = "plain"
    STARRED = "starred"


def _side(side):
    return side if isinstance(side, Side) else Side(side)


def phi_spec(params, side=Side.PLAIN):
    """Product spec of ``phi`` (plain) or ``phi*`` (starred)."""
    if _side(side) is Side.PLAIN:
        return ProductSpec({1: params.r, params.p: params.s})
    return ProductSpec({1: params.s, params.p: params.r})


def _shift_theta(params, side):
    if _side(side) is Side.PLAIN:
        return params.delta, params.theta
    return params.delta_star, params.theta_star


def _pow_ell(ell, e):
    return ell ** e if e >= 0 else Fraction(1, ell ** -e)


def _accessor(c):
    if isinstance(c, LaurentSeries):
        return c.coeff
    return c


def _at(get, x):
    # c(x) = 0 for negative or non-integral x
    if isinstance(x, Fraction):
        if x.denominator != 1:
            return 0
        x = x.numerator
    if x < 0:
        return 0
    return get(x)


def combined_coefficient(params: NewmanParams, side, c, n):
    """Exact ``T(n)``; ``c`` is a series or a callable ``index -> coefficient``."""
    get = _accessor(c)
    shift, theta = _shift_theta(params, side)
    ell = params.ell
    total = _pow_ell(ell, params.leading_power) * _at(get, n * ell * ell + shift)
    symbol = jacobi(n - shift, ell)
    if symbol:
        total += (
            jacobi(theta, ell) * _pow_ell(ell, params.middle_power) * symbol * _at(get, n)
        )
    total += _at(get, Fraction(n - shift, ell * ell))
    if isinstance(total, Fraction) and total.denominator == 1:
        return total.numerator
    return total


def combined_start(params, side):
    """Lowest exponent at which ``T(n)`` can be nonzero."""
    shift, _ = _shift_theta(params, side)
    ell2 = params.ell ** 2
    return min(0, -(shift // ell2), shift)


def required_order(params, side, order):
    """Order of ``phi`` needed for ``T(n)`` through ``n = order``."""
    shift, _ = _shift_theta(params, side)
    return max(order * params.ell ** 2 + shift, order, 0)


def combined_series(params, side, order):
    """``sum T(n) q^n`` through ``q^order``."""
    c = eta_quotient(phi_spec(params, side), required_order(params, side, order))
    start = combined_start(params, side)
    coeffs = [combined_coefficient(params, side, c, n) for n in range(start, order + 1)]
    return LaurentSeries._make(start, coeffs, order)


def pole_prediction(shift, ell):
    """``(order, exact)`` of the pole at i-infinity predicted for a shift ``Delta``."""
    if shift >= 0:
        return shift // (ell * ell), False
    return -shift, True


@dataclass(frozen=True)
class HeckeExpansion:
    params: NewmanParams
    side: Side
    combined: LaurentSeries
    quotient: LaurentSeries
    predicted_pole_infinity: int
    predicted_pole_zero: int


def expand(params: NewmanParams, side, order) -> HeckeExpansion:
    """Expand ``G`` (plain) or ``G*`` (starred) through ``q^order``.

    The predicted pole order at i-infinity is checked; when it is exact
    (negative shift) the quotient must start ``q^shift + ...`` with
    coefficient 1.
    """
    side = _side(side)
    combined = combined_series(params, side, order)
    phi = eta_quotient(phi_spec(params, side), order - combined.valuation)
    quotient = combined / phi
    own, _ = _shift_theta(params, side)
    other = params.delta_star if side is Side.PLAIN else params.delta
    pole_inf, exact = pole_prediction(own, params.ell)
    pole_zero, _ = pole_prediction(other, params.ell)
    if not quotient.is_zero():
        if quotient.valuation < -pole_inf:
            raise VerificationError(
                f"{side.value} quotient has a pole of order {-quotient.valuation} "
                f"at i-infinity, predicted at most {pole_inf}"
            )
        if exact and (quotient.valuation != -pole_inf or quotient.leading_coefficient() != 1):
            raise VerificationError(
                f"{side.value} quotient should start q^{-pole_inf} with coefficient 1"
            )
    return HeckeExpansion(params, side, combined, quotient, pole_inf, pole_zero)
