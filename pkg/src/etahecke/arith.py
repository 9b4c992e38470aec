"""Scalar number theory and the parameter bundle attached to ``(r, s, p, ell)``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import isprime as _isprime
from sympy import jacobi_symbol as _jacobi_symbol

from .exceptions import ParameterError

GENUS_ZERO_PRIMES = (2, 3, 5, 7, 13)

INFINITY = math.inf


def _exact(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def is_prime(n):
    """Deterministic primality (BPSW, proven correct below 2**64)."""
    n = int(n)
    if n < 0:
        raise ParameterError("is_prime expects a nonnegative integer")
    return bool(_isprime(n))


def jacobi(a, n):
    """Jacobi symbol ``(a/n)`` for odd ``n > 0`` and rational ``a``.

    A rational ``u/v`` is handled multiplicatively, ``(u/n)(v/n)``, which is
    legitimate because ``(v/n)**2 == 1`` once ``gcd(v, n) == 1``.
    """
    n = int(n)
    if n <= 0 or n % 2 == 0:
        raise ParameterError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a = Fraction(a)
    if math.gcd(a.denominator, n) != 1:
        raise ParameterError(f"denominator {a.denominator} is not coprime to {n}")
    return int(_jacobi_symbol(a.numerator % n, n)) * int(_jacobi_symbol(a.denominator % n, n))


def p_adic_valuation(x, p):
    """``v_p(x)`` for a rational ``x``; ``math.inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INFINITY
    p = int(p)
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def two_adic_valuation(x):
    x = Fraction(x)
    if x == 0:
        return INFINITY
    num, den = abs(x.numerator), x.denominator
    return ((num & -num).bit_length() - 1) - ((den & -den).bit_length() - 1)


def congruent(x, y, p, exponent):
    """Rational congruence ``x == y (mod p**exponent)``, i.e. ``v_p(x - y) >= exponent``."""
    return p_adic_valuation(Fraction(x) - Fraction(y), p) >= exponent


def hauptmodul_weight(p):
    """The exponent ``k = 24/(p-1)`` for a genus-zero prime ``p``."""
    if p not in GENUS_ZERO_PRIMES:
        raise ParameterError(f"{p} is not a genus-zero prime")
    return 24 // (p - 1)


def n_ell(ell):
    return _exact(Fraction(ell * ell - 1, 6))


def s_ell(ell):
    return _exact(Fraction(ell * ell - 1, 24))


def m_ell(ell):
    return _exact(Fraction(ell * ell - 1, 8))


def triple_hypotheses(r, s, p):
    """Which hypotheses ``(r, s, p)`` satisfies, independent of ``ell``.

    ``gencong_valid``: s > 0 > r, r + s odd, 0 <= r + sp < 24, s + rp < 0.
    ``onoanalog_valid``: additionally -24 < s + rp.  The boundary r + sp = 0
    (the overpartition triple) is admitted for both.
    """
    base = s > 0 and r < 0 and (r + s) % 2 == 1 and 0 <= r + s * p < 24 and s + r * p < 0
    return {"gencong_valid": base, "onoanalog_valid": base and -24 < s + r * p}


@dataclass(frozen=True)
class NewmanParams:
    """Parameters ``(r, s, p, ell)`` of the eta-quotient ``E(q)^r E(q^p)^s`` with all derived data.

    Construction validates the parity of ``r + s``, that ``p`` is a genus-zero
    prime, that ``ell`` is an odd prime different from ``p``, and that both
    shifts ``delta`` and ``delta_star`` are integers.  The two boolean
    fields record whether the congruence and Faber-polynomial hypotheses hold.
    """

    r: int
    s: int
    p: int
    ell: int
    epsilon: Fraction = field(init=False)
    k: int = field(init=False)
    t: Fraction = field(init=False)
    t_star: Fraction = field(init=False)
    delta: int = field(init=False)
    delta_star: int = field(init=False)
    theta: Fraction = field(init=False)
    theta_star: Fraction = field(init=False)
    n_ell: int | Fraction = field(init=False)
    s_ell: int | Fraction = field(init=False)
    m_ell: int | Fraction = field(init=False)
    gencong_valid: bool = field(init=False)
    onoanalog_valid: bool = field(init=False)

    def __post_init__(self):
        r, s, p, ell = int(self.r), int(self.s), int(self.p), int(self.ell)
        if p not in GENUS_ZERO_PRIMES:
            raise ParameterError(f"{p} is not a genus-zero prime")
        if ell % 2 == 0 or ell < 3 or not is_prime(ell):
            raise ParameterError(f"ell={ell} must be an odd prime")
        if ell == p:
            raise ParameterError("ell must differ from p")
        if (r + s) % 2 == 0:
            raise ParameterError(f"parity violation: r + s = {r + s} is even")
        t = Fraction(r + s * p, 24)
        t_star = Fraction(r * p + s, 24)
        delta = t * (ell * ell - 1)
        delta_star = t_star * (ell * ell - 1)
        if delta.denominator != 1 or delta_star.denominator != 1:
            raise ParameterError(
                f"non-integral Delta: Delta={delta}, Delta*={delta_star} for ell={ell}"
            )
        sign = -1 if ((1 - (r + s)) // 2) % 2 else 1
        values = {
            "epsilon": Fraction(r + s, 2),
            "k": hauptmodul_weight(p),
            "t": t,
            "t_star": t_star,
            "delta": int(delta),
            "delta_star": int(delta_star),
            "theta": _exact(sign * 2 * Fraction(p) ** s),
            "theta_star": _exact(sign * 2 * Fraction(p) ** r),
            "n_ell": n_ell(ell),
            "s_ell": s_ell(ell),
            "m_ell": m_ell(ell),
        }
        values.update(triple_hypotheses(r, s, p))
        for name, value in values.items():
            object.__setattr__(self, name, value)

    @property
    def leading_power(self):
        """Exponent ``2 - 2*epsilon`` of ``ell`` on the first Hecke term."""
        return 2 - (self.r + self.s)

    @property
    def middle_power(self):
        """Exponent ``1/2 - epsilon`` of ``ell`` on the middle Hecke term."""
        return (1 - (self.r + self.s)) // 2

    @property
    def modulus_exponent(self):
        """``k/2``: congruences hold modulo ``p**(k/2)``."""
        return self.k // 2

    def as_dict(self):
        return {"r": self.r, "s": self.s, "p": self.p, "ell": self.ell}


def derive_params(r, s, p, ell):
    return NewmanParams(int(r), int(s), int(p), int(ell))


def primes_between(lo, hi):
    """Primes ``lo <= q <= hi``."""
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]
