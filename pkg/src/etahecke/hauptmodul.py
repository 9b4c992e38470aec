"""Hauptmodul decompositions and the Faber-type polynomial families.

``decompose`` writes a weakly holomorphic function as ``constant + poly(basis)``
where the basis is ``Phi_p``, ``1/Phi_p`` or ``j``.  It peels the extremal
exponent one basis power at a time and then demands that the residual vanish
on the whole known window, so a successful call is a finite proof that the
series lies in the polynomial ring (to that precision).

The families ``J_m``, ``A(m, x)``, ``P_m`` and ``SB(m, x)`` are read off
generating functions of the shape ``prefactor / (basis - x)``, expanded over
the polynomial ring ``Q[x]``.  Each family is available through two routes:
series inversion in ``Q[x][[q]]`` (``method="invert"``) and the geometric
expansion in powers of the basis (``method="geometric"``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .arith import (
    GENUS_ZERO_PRIMES,
    NewmanParams,
    is_prime,
    jacobi,
    s_ell,
    triple_hypotheses,
)
from .exceptions import DecompositionError, InsufficientTruncation, ParameterError
from .hecke import Side, expand
from .qforms import PARTITION, discriminant, eisenstein, eta_quotient, euler_E, hauptmodul_phi, j_invariant
from .series import IdentityCheck, LaurentSeries, check_identity


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Immutable univariate polynomial with exact rational coefficients (index = degree)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        c = [_norm(Fraction(x)) if not isinstance(x, int) else int(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @property
    def coeffs(self):
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1

    def leading(self):
        return self._c[-1] if self._c else 0

    def is_monic(self):
        return self.leading() == 1

    def __getitem__(self, i):
        return self._c[i] if 0 <= i < len(self._c) else 0

    def __bool__(self):
        return bool(self._c)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        n = max(len(self._c), len(other._c))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-x for x in self._c)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly.constant(-other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(x * other for x in self._c)
        if not self._c or not other._c:
            return Poly()
        out = [0] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, value):
        """Horner evaluation at a scalar or a :class:`LaurentSeries`."""
        if not self._c:
            return value * 0
        acc = self._c[-1]
        for c in reversed(self._c[:-1]):
            acc = acc * value + c
        if isinstance(value, LaurentSeries) and not isinstance(acc, LaurentSeries):
            acc = value * 0 + acc
        return acc

    def rescale(self, c):
        """The polynomial ``x -> self(c x)``."""
        return Poly(a * Fraction(c) ** i for i, a in enumerate(self._c))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly.constant(other)._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for i in range(len(self._c) - 1, -1, -1):
            a = self._c[i]
            if not a:
                continue
            sign = "-" if a < 0 else "+"
            mag = -a if a < 0 else a
            if i == 0:
                body = str(mag)
            else:
                var = "x" if i == 1 else f"x^{i}"
                if mag == 1:
                    body = var
                elif isinstance(mag, Fraction):
                    body = f"({mag}){var}"
                else:
                    body = f"{mag}{var}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({str(self)!r})"


class PolySeries:
    """Truncated Laurent series in ``q`` whose coefficients are :class:`Poly` values."""

    __slots__ = ("valuation", "coeffs", "order")

    def __init__(self, coeffs, valuation, order):
        coeffs = list(coeffs)[: max(order - valuation + 1, 0)]
        k = 0
        while k < len(coeffs) and not coeffs[k]:
            k += 1
        coeffs = coeffs[k:]
        valuation += k
        if not coeffs:
            valuation = order + 1
        coeffs.extend(Poly() for _ in range(order - valuation + 1 - len(coeffs)))
        self.valuation = valuation
        self.coeffs = tuple(coeffs)
        self.order = order

    @classmethod
    def from_series(cls, f):
        return cls((Poly.constant(c) for c in f.coeffs), f.valuation, f.order)

    def coeff(self, n):
        if n > self.order:
            raise InsufficientTruncation(
                f"insufficient truncation: q^{n} requested, known to q^{self.order}"
            )
        i = n - self.valuation
        return self.coeffs[i] if i >= 0 else Poly()

    def __add__(self, other):
        order = min(self.order, other.order)
        lo = min(self.valuation, other.valuation)
        return PolySeries((self.coeff(n) + other.coeff(n) for n in range(lo, order + 1)), lo, order)

    def __neg__(self):
        return PolySeries((-c for c in self.coeffs), self.valuation, self.order)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            other = PolySeries.from_series(other)
        va, vb = self.valuation, other.valuation
        order = min(self.order + vb, other.order + va)
        n = order - (va + vb) + 1
        out = [Poly() for _ in range(max(n, 0))]
        for i, a in enumerate(self.coeffs[:n]):
            if not a:
                continue
            for j, b in enumerate(other.coeffs[: n - i]):
                if b:
                    out[i + j] = out[i + j] + a * b
        return PolySeries(out, va + vb, order)

    __rmul__ = __mul__

    def invert(self):
        """Inverse; the leading coefficient must be a nonzero constant polynomial."""
        if not self.coeffs:
            raise ParameterError("cannot invert a polynomial series that is zero to its order")
        lead = self.coeffs[0]
        if lead.degree != 0:
            raise ParameterError("leading coefficient must be a nonzero constant")
        inv0 = Fraction(1) / lead[0]
        n = self.order - self.valuation + 1
        out = [Poly.constant(inv0)]
        for i in range(1, n):
            acc = Poly()
            for j in range(1, i + 1):
                b = self.coeffs[j]
                if b:
                    acc = acc + b * out[i - j]
            out.append(acc * (-inv0))
        return PolySeries(out, -self.valuation, self.order - 2 * self.valuation)


def _basis_minus_x(f, sign):
    """``f - x`` (sign=+1) or ``x - f`` (sign=-1) as a polynomial series."""
    ps = PolySeries.from_series(f if sign > 0 else -f)
    x = Poly.x() * (-sign)
    coeffs = [ps.coeff(n) + (x if n == 0 else Poly()) for n in range(ps.valuation, ps.order + 1)]
    return PolySeries(coeffs, ps.valuation, ps.order)


def _extract(gen, max_m):
    if gen.order < max_m:
        raise InsufficientTruncation(
            f"insufficient truncation: generating function known to q^{gen.order}, need q^{max_m}"
        )
    return [gen.coeff(m) for m in range(max_m + 1)]


def _geometric(prefactor, inverse_basis, max_m, sign):
    """Polys from ``prefactor * sign * sum_d x^d inverse_basis^(d+1)``."""
    columns = []
    power = inverse_basis
    for _ in range(max_m + 1):
        col = prefactor * power
        if sign < 0:
            col = -col
        if col.order < max_m:
            raise InsufficientTruncation(
                f"insufficient truncation: column known to q^{col.order}, need q^{max_m}"
            )
        columns.append(col)
        power = power * inverse_basis
    return [Poly(columns[d].coeff(m) for d in range(m + 1)) for m in range(max_m + 1)]


def _check_m(max_m, order):
    if max_m < 0:
        raise ParameterError("max_m must be nonnegative")
    if order < max_m:
        raise ParameterError(f"truncation order {order} is below max_m={max_m}")


def faber_prefactor(order):
    """``E4^2 E6 / Delta`` through ``q^order``."""
    e4 = eisenstein("E4", order + 1)
    e6 = eisenstein("E6", order + 1)
    return (e4 * e4 * e6) / discriminant(order + 2)


def _level_one_family(max_m, order, extra, method):
    _check_m(max_m, order)
    pref = faber_prefactor(order)
    if extra is not None:
        pref = pref * extra
    j = j_invariant(order)
    if method == "invert":
        return _extract(_basis_minus_x(j, +1).invert() * pref, max_m)
    if method == "geometric":
        # 1/(j - x) = sum_d x^d j^-(d+1)
        return _geometric(pref, j.invert(), max_m, +1)
    raise ParameterError(f"unknown method {method!r}")


def faber_J(max_m, order=None, method="invert"):
    """Faber polynomials ``J_0 .. J_max_m`` from ``E4^2 E6/Delta * 1/(j - x)``."""
    order = max_m if order is None else order
    return _level_one_family(max_m, order, None, method)


def faber_A(max_m, order=None, method="invert"):
    """``A(0, x) .. A(max_m, x)`` from ``(q)_inf E4^2 E6/Delta * 1/(j - x)``."""
    order = max_m if order is None else order
    return _level_one_family(max_m, order, euler_E(order + 1), method)


def _check_p(p):
    if p not in GENUS_ZERO_PRIMES:
        raise ParameterError(f"{p} is not a genus-zero prime")


def _level_p_family(p, max_m, order, extra, method):
    _check_p(p)
    _check_m(max_m, order)
    phi_inv = hauptmodul_phi(p, order + 2).invert()
    pref = phi_inv.dq()
    if extra is not None:
        pref = pref * extra
    if method == "invert":
        return _extract(_basis_minus_x(phi_inv, -1).invert() * pref, max_m)
    if method == "geometric":
        # 1/(x - 1/Phi) = -sum_d x^d Phi^(d+1)
        return _geometric(pref, hauptmodul_phi(p, order + 2), max_m, -1)
    raise ParameterError(f"unknown method {method!r}")


def beneish_larson_P(p, max_m, order=None, method="invert"):
    """``P_0 .. P_max_m`` with ``P_m(1/Phi_p) = q^-m + O(q)``."""
    order = max_m if order is None else order
    return _level_p_family(p, max_m, order, None, method)


def p_normalization_checks(p, polys):
    """``P_m(1/Phi_p) == q^-m + O(q)`` for each polynomial (window through ``q^0``)."""
    out = []
    for m, poly in enumerate(polys):
        phi_inv = hauptmodul_phi(p, m + 2).invert()
        target = LaurentSeries.monomial(-m, 1, 0)
        out.append(check_identity(f"P_{m}", poly(phi_inv).truncate(0), target, 0))
    return out


def _phi_star_inverse(r, s, p, order):
    return eta_quotient({1: -s, p: -r}, order)


def sB_poly(r, s, p, max_m, order=None, method="invert"):
    """``SB_{r,s,p}(0, x) .. SB_{r,s,p}(max_m, x)`` from ``dq(1/Phi_p)/phi* * 1/(x - 1/Phi_p)``.

    ``method="convolution"`` uses ``SB(m, x) = sum_j b(j) P_{m-j}(x)`` with
    ``sum b(n) q^n = 1/phi*``.
    """
    _check_p(p)
    if not triple_hypotheses(r, s, p)["onoanalog_valid"]:
        raise ParameterError(f"(r, s, p) = ({r}, {s}, {p}) fails the Faber-analogue hypotheses")
    order = max_m if order is None else order
    if method == "convolution":
        _check_m(max_m, order)
        polys = beneish_larson_P(p, max_m, order)
        b = _phi_star_inverse(r, s, p, max_m)
        return [sum((polys[m - i] * b.coeff(i) for i in range(m + 1)), Poly()) for m in range(max_m + 1)]
    return _level_p_family(p, max_m, order, _phi_star_inverse(r, s, p, order + 2), method)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


class Decomposition(NamedTuple):
    """``f = constant + poly(basis)``; ``poly`` has zero constant term."""

    constant: int | Fraction
    poly: Poly
    checked_to: int

    def full_poly(self):
        return self.poly + self.constant

    def evaluate(self, basis):
        return self.poly(basis) + self.constant


def decompose(f, basis, degree_bound):
    """Express ``f`` as ``constant + sum_{j=1}^{degree_bound} gamma_j basis^j``.

    ``basis`` must have valuation +1 or -1 and leading coefficient 1.  Raises
    :class:`DecompositionError` when the residual is nonzero anywhere on the
    known window.
    """
    if basis.is_zero() or basis.valuation not in (1, -1) or basis.leading_coefficient() != 1:
        raise ParameterError("basis must have valuation +-1 and leading coefficient 1")
    d = int(degree_bound)
    if d < 0:
        raise ParameterError("degree bound must be nonnegative")
    direction = -basis.valuation  # +1: poles at i-infinity, -1: zeros there
    gammas = [0] * (d + 1)
    residual = f
    if direction > 0:
        if not f.is_zero() and f.valuation < -d:
            raise DecompositionError(
                f"not a polynomial in basis to given degree: pole of order {-f.valuation} > {d}",
                f.valuation,
            )
        powers = [None, basis]
        for _ in range(2, d + 1):
            powers.append(powers[-1] * basis)
        for j in range(d, 0, -1):
            a = residual.coeff(-j)
            if a:
                gammas[j] = a
                residual = residual - powers[j].scale(a)
        constant = residual.coeff(0)
        residual = residual - constant
    else:
        if not f.is_zero() and f.valuation < 0:
            raise DecompositionError(
                "not a polynomial in basis to given degree: unexpected pole at i-infinity",
                f.valuation,
            )
        constant = f.coeff(0)
        residual = f - constant
        power = LaurentSeries.one(f.order)
        for j in range(1, d + 1):
            power = power * basis
            a = residual.coeff(j)
            if a:
                gammas[j] = a
                residual = residual - power.scale(a)
    if not residual.is_zero():
        e = residual.valuation
        raise DecompositionError(
            f"not a polynomial in basis to given degree {d}: residual {residual.coeff(e)} at q^{e}",
            e,
        )
    return Decomposition(constant, Poly(gammas), residual.order)


# ---------------------------------------------------------------------------
# theorem-level checks
# ---------------------------------------------------------------------------


def _middle_constant(params: NewmanParams):
    """``(theta*/ell) ell^(1/2-eps) ((-Delta*)/ell)``."""
    ell = params.ell
    power = params.middle_power
    scale = ell ** power if power >= 0 else Fraction(1, ell ** -power)
    return _norm(jacobi(params.theta_star, ell) * scale * jacobi(-params.delta_star, ell))


def _require_onoanalog(params):
    if not params.onoanalog_valid:
        raise ParameterError(f"{params.as_dict()} fails the Faber-analogue hypotheses")


def verify_onoanalog(params: NewmanParams, order) -> IdentityCheck:
    """``G* == SB(-Delta*, 1/Phi_p) + (theta*/ell) ell^(1/2-eps) ((-Delta*)/ell)`` through ``q^order``."""
    _require_onoanalog(params)
    m = -params.delta_star
    sb = sB_poly(params.r, params.s, params.p, m, method="geometric")[m]
    phi_inv = hauptmodul_phi(params.p, order + m + 2).invert()
    rhs = sb(phi_inv) + _middle_constant(params)
    g_star = expand(params, Side.STARRED, order).quotient
    return check_identity(f"onoanalog{params.as_dict()}", g_star, rhs, order)


@dataclass(frozen=True)
class ScalingCheck:
    ok: bool
    plain: Decomposition
    starred: Decomposition
    order: int

    def __bool__(self):
        return self.ok


def verify_scaling(params: NewmanParams, order) -> ScalingCheck:
    """Decompose ``G`` in ``Phi_p`` and ``G*`` in ``1/Phi_p``; check ``gamma_G(j) = p^(kj/2) gamma_G*(j)``."""
    if not params.gencong_valid:
        raise ParameterError(f"{params.as_dict()} fails the congruence hypotheses")
    d = max(-params.delta_star, 0)
    # gamma_j of the plain side sits at q^j, so that side is needed through q^d
    g = expand(params, Side.PLAIN, max(order, d)).quotient
    g_star = expand(params, Side.STARRED, order).quotient
    phi = hauptmodul_phi(params.p, max(order, d) + d + 2)
    plain = decompose(g, phi, d)
    starred = decompose(g_star, phi.invert(), d)
    if min(plain.checked_to, starred.checked_to) < order:
        raise InsufficientTruncation("decomposition window shorter than requested order")
    half = params.k // 2
    ok = plain.constant == starred.constant and all(
        plain.poly[j] == params.p ** (half * j) * starred.poly[j] for j in range(1, d + 1)
    )
    return ScalingCheck(ok, plain, starred, min(plain.checked_to, starred.checked_to))


@dataclass(frozen=True)
class AtkinResult:
    ell: int
    series: LaurentSeries
    decomposition: Decomposition
    ono_poly: Poly
    ono_ok: bool

    @property
    def poly(self):
        """Full polynomial in ``j`` (constant included)."""
        return self.decomposition.full_poly()


def atkin_coefficient(ell, p_series, n):
    """``ell^3 p(ell^2 n - s) + ell (12/ell) ((1-24n)/ell) p(n) + p((n+s)/ell^2)``."""
    s = s_ell(ell)

    def part(x):
        return p_series.coeff(x) if x >= 0 else 0

    total = ell ** 3 * part(ell * ell * n - s)
    sym = jacobi(1 - 24 * n, ell)
    if sym:
        total += ell * jacobi(12, ell) * sym * part(n)
    if (n + s) % (ell * ell) == 0:
        total += part((n + s) // (ell * ell))
    return total


def atkin_Z(ell, order=30):
    """``Z_ell (q)_inf`` through ``q^order`` and its decomposition as a polynomial in ``j``."""
    if ell <= 3 or not is_prime(ell):
        raise ParameterError(f"ell={ell} must be a prime > 3")
    s = s_ell(ell)
    parts = eta_quotient(PARTITION, max(ell * ell * order - s, order))
    z = LaurentSeries._make(-s, [atkin_coefficient(ell, parts, n) for n in range(-s, order + 1)], order)
    zq = z * euler_E(order + s)
    dec = decompose(zq, j_invariant(order + s + 1), s)
    ono = faber_A(s)[s] + ell * jacobi(3, ell)
    return AtkinResult(ell, zq, dec, ono, dec.full_poly() == ono)
