"""Constructors for the concrete q-series: eta-quotients, Eisenstein series, j, Hauptmoduls.

Eta-quotients are built from sparse pieces.  ``E(q^m)`` is sparse (Euler's
pentagonal theorem) and so is ``E(q^m)^3`` (Jacobi), so a factor
``E(q^m)^e`` with small ``|e|`` is applied as a few sparse multiplications or
divisions, grouping three at a time through the Jacobi form.  Larger
exponents go through a one-pass power recurrence instead, so every factor
costs ``O(N^1.5)`` whatever its exponent.
"""

from __future__ import annotations

import threading
from bisect import bisect_right
from operator import mul as _op_mul
from dataclasses import dataclass
from fractions import Fraction

from .arith import GENUS_ZERO_PRIMES, hauptmodul_weight, is_prime, jacobi
from .exceptions import ParameterError
from .series import IdentityCheck, LaurentSeries, _div_lists, _mul_lists, _shift_add, check_identity

__all__ = [
    "ProductSpec",
    "ALPHA",
    "BETA",
    "OVERPARTITION",
    "POD_SIGNED",
    "PARTITION",
    "EULER",
    "pentagonal_terms",
    "euler_E",
    "eta_quotient",
    "eisenstein",
    "e2_star",
    "discriminant",
    "j_invariant",
    "hauptmodul_phi",
    "kohler_series",
    "theta_product_checks",
    "e2_star_identity",
    "kohler_identity",
    "dq_hauptmodul_identity",
    "pentagonal_identity",
]


@dataclass(frozen=True)
class ProductSpec:
    """The formal product ``prod_m E(q^m)^{e_m}``, stored as sorted ``(m, e_m)`` pairs."""

    factors: tuple

    def __init__(self, factors):
        items = dict(factors.items() if hasattr(factors, "items") else factors)
        clean = []
        for m, e in sorted(items.items()):
            m, e = int(m), int(e)
            if m <= 0:
                raise ParameterError(f"product scale must be positive, got {m}")
            if e:
                clean.append((m, e))
        object.__setattr__(self, "factors", tuple(clean))

    @property
    def weight(self):
        """The fractional power ``t = (1/24) sum m e_m`` carried by the eta-quotient."""
        return Fraction(sum(m * e for m, e in self.factors), 24)

    def __mul__(self, other):
        merged = dict(self.factors)
        for m, e in other.factors:
            merged[m] = merged.get(m, 0) + e
        return ProductSpec(merged)

    def __str__(self):
        return ",".join(f"{m}:{e}" for m, e in self.factors) or "1"

    @classmethod
    def parse(cls, text):
        """Parse ``"1:-2,2:3"`` into a spec."""
        out = {}
        text = text.strip()
        if not text or text == "1":
            return cls({})
        for part in text.split(","):
            try:
                m, e = part.split(":")
                m, e = int(m), int(e)
            except ValueError:
                raise ParameterError(f"bad product spec component {part!r}; expected m:e") from None
            out[m] = out.get(m, 0) + e
        return cls(out)


ALPHA = ProductSpec({1: -2, 2: 3})
BETA = ProductSpec({1: 3, 2: -2})
OVERPARTITION = ProductSpec({1: -2, 2: 1})
POD_SIGNED = ProductSpec({1: 1, 2: -2})
PARTITION = ProductSpec({1: -1})
EULER = ProductSpec({1: 1})


def pentagonal_terms(limit, scale=1):
    """Nonzero terms ``(exponent, sign)`` of ``E(q^scale)`` with exponent <= limit."""
    out = [(0, 1)]
    k = 1
    while True:
        g1 = scale * k * (3 * k - 1) // 2
        if g1 > limit:
            break
        sign = -1 if k % 2 else 1
        out.append((g1, sign))
        g2 = scale * k * (3 * k + 1) // 2
        if g2 <= limit:
            out.append((g2, sign))
        k += 1
    return out


def _jacobi_cube_terms(limit, scale=1):
    # E(q)^3 = sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2}
    out = []
    n = 0
    while scale * n * (n + 1) // 2 <= limit:
        out.append((scale * n * (n + 1) // 2, -(2 * n + 1) if n % 2 else 2 * n + 1))
        n += 1
    return out


def _dense_from_terms(terms, n):
    out = [0] * n
    for e, c in terms:
        if e < n:
            out[e] = c
    return out


def _euler_power(e, n):
    """First ``n`` coefficients of ``E(q)^e`` in a single pass.

    Uses ``n g_n = sum_k ((e+1)k - n) f_k g_{n-k}`` for ``g = f^e``, where
    ``f = E(q)`` has only the pentagonal terms, all of them +-1.
    """
    items = [(k, c) for k, c in pentagonal_terms(n - 1) if k]
    plus = [k for k, c in items if c == 1]
    minus = [k for k, c in items if c == -1]
    g = [0] * n
    g[0] = 1
    e1 = e + 1
    for i in range(1, n):
        a = bisect_right(plus, i)
        b = bisect_right(minus, i)
        gp = [g[i - k] for k in plus[:a]]
        gm = [g[i - k] for k in minus[:b]]
        s1 = sum(map(_op_mul, plus[:a], gp)) - sum(map(_op_mul, minus[:b], gm))
        g[i] = (e1 * s1 - i * (sum(gp) - sum(gm))) // i
    return g


# above this many sparse passes per factor the one-pass recurrence wins
_SPARSE_PASSES_MAX = 2


def _product_coeffs(spec, order):
    n = order + 1
    coeffs = [1] + [0] * order
    for m, e in spec.factors:
        cubes, ones = divmod(abs(e), 3)
        if cubes + ones > _SPARSE_PASSES_MAX:
            short = _euler_power(e, order // m + 1)
            dense = [0] * n
            dense[::m] = short
            coeffs = _mul_lists(coeffs, dense, n)
            continue
        steps = [_jacobi_cube_terms(order, m)] * cubes + [pentagonal_terms(order, m)] * ones
        for terms in steps:
            if e > 0:
                coeffs = _shift_add(coeffs, terms, n)
            else:
                coeffs = _div_lists(coeffs, _dense_from_terms(terms, n), n)
    return coeffs


_CACHE = {}
_CACHE_LOCK = threading.Lock()


def eta_quotient(spec, order):
    """``prod_m E(q^m)^{e_m}`` known through ``q^order`` (no fractional q-power)."""
    if not isinstance(spec, ProductSpec):
        spec = ProductSpec(spec)
    order = int(order)
    if order < 0:
        raise ParameterError("series order must be nonnegative")
    with _CACHE_LOCK:
        hit = _CACHE.get(spec)
    if hit is not None and hit.order >= order:
        return hit.truncate(order)
    result = LaurentSeries._make(0, _product_coeffs(spec, order), order)
    with _CACHE_LOCK:
        old = _CACHE.get(spec)
        if old is None or old.order < order:
            _CACHE[spec] = result
    return result


def clear_cache():
    with _CACHE_LOCK:
        _CACHE.clear()


def euler_E(order):
    """Euler's product ``(q;q)_infinity`` through ``q^order``."""
    if order < 0:
        raise ParameterError("series order must be nonnegative")
    return LaurentSeries.from_terms(dict(pentagonal_terms(order)), order)


def divisor_sums(k, limit):
    """``[sigma_k(0)=0, sigma_k(1), ..., sigma_k(limit)]`` by sieving."""
    sig = [0] * (limit + 1)
    for d in range(1, limit + 1):
        dk = d ** k
        for mult in range(d, limit + 1, d):
            sig[mult] += dk
    return sig


_EISENSTEIN = {"E2": (1, -24), "E4": (3, 240), "E6": (5, -504)}


def eisenstein(kind, order):
    """Normalized Eisenstein series ``E2``, ``E4`` or ``E6`` (constant term 1)."""
    try:
        k, scale = _EISENSTEIN[kind]
    except KeyError:
        raise ParameterError(f"unknown Eisenstein series {kind!r}; use E2, E4 or E6") from None
    sig = divisor_sums(k, order)
    return LaurentSeries._make(0, [1] + [scale * x for x in sig[1:]], order)


def e2_star(p, order):
    """``(p E2(q^p) - E2(q)) / (p - 1)``."""
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    e2 = eisenstein("E2", order)
    return (e2.substitute_power(p).truncate(order).scale(p) - e2) / (p - 1)


def discriminant(order):
    """``Delta = q prod (1 - q^n)^24`` through ``q^order``."""
    if order < 1:
        raise ParameterError("discriminant needs order >= 1")
    return eta_quotient({1: 24}, order - 1).shift(1)


def j_invariant(order):
    """Klein's ``j = E4^3 / Delta = q^-1 + 744 + 196884 q + ...`` through ``q^order``."""
    if order < -1:
        raise ParameterError("j needs order >= -1")
    e4 = eisenstein("E4", order + 1)
    return (e4 ** 3) / discriminant(order + 2)


def hauptmodul_phi(p, order):
    """``Phi_p = q (E(q^p)/E(q))^k`` with ``k = 24/(p-1)``, through ``q^order``."""
    if p not in GENUS_ZERO_PRIMES:
        raise ParameterError(f"{p} is not a genus-zero prime")
    if order < 1:
        raise ParameterError("Hauptmodul needs order >= 1")
    k = hauptmodul_weight(p)
    return eta_quotient({1: -k, p: k}, order - 1).shift(1)


def kohler_series(order):
    """``sum_{n odd > 0} (n/3) n q^{(n^2-1)/24}`` through ``q^order``."""
    terms = {}
    n = 1
    while (n * n - 1) // 24 <= order:
        if (n * n - 1) % 24 == 0:
            terms[(n * n - 1) // 24] = jacobi(n, 3) * n
        n += 2
    return LaurentSeries.from_terms(terms, order)


def _one_plus_product(order, step):
    # prod_{n>=1} (1 + q^{step n}) by direct in-place expansion
    c = [1] + [0] * order
    e = step
    while e <= order:
        for i in range(order, e - 1, -1):
            c[i] += c[i - e]
        e += step
    return LaurentSeries._make(0, c, order)


def theta_product_checks(order):
    """Check both product-side theta identities through ``q^order``.

    Returns two :class:`IdentityCheck` values (truthy on success) for

    * ``(sum_n (-1)^n q^{n^2}) / prod(1+q^n) == E(q)^3/E(q^2)^2``
    * ``(sum_{n>=0} q^{n^2+n}) prod(1+q^{2n}) == E(q^4)^3/E(q^2)^2``
    """
    theta4 = {0: 1}
    n = 1
    while n * n <= order:
        theta4[n * n] = 2 * (-1) ** n
        n += 1
    lhs4 = LaurentSeries.from_terms(theta4, order) / _one_plus_product(order, 1)
    theta2 = {}
    n = 0
    while n * n + n <= order:
        theta2[n * n + n] = 1
        n += 1
    lhs2 = LaurentSeries.from_terms(theta2, order) * _one_plus_product(order, 2)
    return (
        check_identity("theta4", lhs4, eta_quotient({1: 3, 2: -2}, order)),
        check_identity("theta2", lhs2, eta_quotient({2: -2, 4: 3}, order)),
    )


def e2_star_identity(order) -> IdentityCheck:
    """``E2*(q) = E(q)^8/E(q^2)^4 + 32 q E(q^4)^8/E(q^2)^4`` through ``q^order``."""
    rhs = eta_quotient({1: 8, 2: -4}, order) + eta_quotient({2: -4, 4: 8}, order - 1).shift(1).scale(32)
    return check_identity("E2*", e2_star(2, order), rhs, order)


def kohler_identity(order) -> IdentityCheck:
    return check_identity("kohler", kohler_series(order), eta_quotient({1: 5, 2: -2}, order), order)


def dq_hauptmodul_identity(p, order) -> IdentityCheck:
    """``dq(1/Phi_p) == -(1/Phi_p) E_p*`` through ``q^order``."""
    inv = hauptmodul_phi(p, order + 2).invert()
    lhs = inv.dq()
    rhs = -(inv * e2_star(p, order + 1))
    return check_identity(f"dq(1/Phi_{p})", lhs, rhs, order)


def pentagonal_identity(order) -> IdentityCheck:
    """Sparse pentagonal form of ``E(q)`` against the product expanded factor by factor."""
    c = [1] + [0] * order
    for n in range(1, order + 1):
        # multiply by (1 - q^n); the right side is read before assignment
        c[n:] = map(int.__sub__, c[n:], c[: order + 1 - n])
    direct = LaurentSeries._make(0, c, order)
    return check_identity("pentagonal", euler_E(order), direct, order)
