"""Truncated Laurent series in q with exact rational coefficients.

A :class:`LaurentSeries` stores the coefficients of ``q^valuation`` through
``q^order`` densely.  Nothing is known about exponents above ``order``; every
operation propagates the largest order its inputs determine, so a result is
never silently padded with zeros.

Coefficients are Python ``int`` whenever they are integral and
``fractions.Fraction`` otherwise.  Products of large integral series use
Kronecker substitution (through gmpy2 when it is installed); products with a
sparse factor, such as an Euler product, use a shift-and-add loop over the
sparse factor's support.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import repeat
from numbers import Rational
from operator import add as _op_add, mul as _op_mul, sub as _op_sub

from .exceptions import InsufficientTruncation, NonInvertibleSeries

try:
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpz = None

__all__ = [
    "LaurentSeries",
    "IdentityCheck",
    "add",
    "mul",
    "invert",
    "power",
    "substitute_power",
    "dq",
    "coeff",
    "check_identity",
]

# sparse support size above which integral products switch to Kronecker
KRONECKER_MIN_TERMS = 48
# length and density above which integral unit inverses use Newton iteration
NEWTON_MIN_LENGTH = 1024
NEWTON_MIN_TERMS = 256


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _exact(c):
    if type(c) is int or type(c) is Fraction:
        return _norm(c)
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return int(c)
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"series coefficients must be exact rationals, got {type(c).__name__}")


def _all_int(seq):
    return all(type(c) is int for c in seq)


def _nonzero_items(seq):
    return [(i, c) for i, c in enumerate(seq) if c]


# ---------------------------------------------------------------------------
# list kernels: plain coefficient lists with implicit valuation 0
# ---------------------------------------------------------------------------


def _shift_add(dense, sparse_items, n):
    res = [0] * n
    for j, c in sparse_items:
        if j >= n:
            break
        seg = dense[: n - j]
        end = j + len(seg)
        if c == 1:
            res[j:end] = map(_op_add, res[j:end], seg)
        elif c == -1:
            res[j:end] = map(_op_sub, res[j:end], seg)
        else:
            res[j:end] = map(_op_add, res[j:end], map(_op_mul, seg, repeat(c)))
    return res


def _pack(vals, nbytes):
    pos = b"".join((v if v > 0 else 0).to_bytes(nbytes, "little") for v in vals)
    neg = b"".join((-v if v < 0 else 0).to_bytes(nbytes, "little") for v in vals)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker(a, b, n):
    """First ``n`` coefficients of ``a*b`` for integer lists, via one big product."""
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    big_a = _pack(a, nbytes)
    big_b = _pack(b, nbytes)
    if _mpz is not None:
        prod = int(_mpz(big_a) * _mpz(big_b))
    else:
        prod = big_a * big_b
    k = len(a) + len(b) - 1
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * k, "little")
    raw = (prod + offset).to_bytes(k * nbytes, "little")
    out = [
        int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half
        for i in range(min(k, n))
    ]
    out.extend(repeat(0, n - len(out)))
    return out


def _mul_lists(a, b, n):
    if n <= 0:
        return []
    a = a[:n]
    b = b[:n]
    nza = _nonzero_items(a)
    nzb = _nonzero_items(b)
    if not nza or not nzb:
        return [0] * n
    if len(nza) > len(nzb):
        a, b, nza, nzb = b, a, nzb, nza
    if len(nza) >= KRONECKER_MIN_TERMS and _all_int(a) and _all_int(b):
        return _kronecker(a, b, n)
    return _shift_add(b, nza, n)


def _unit_inverse(c):
    if c == 1 or c == -1:
        return int(c)
    return _norm(Fraction(1) / c)


def _inv_newton(b, n):
    # b[0] is +-1 and every entry is an int
    x = [b[0]]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        e = _mul_lists(b[:prec], x, prec)
        e = [-v for v in e]
        e[0] += 2
        x = _mul_lists(x, e, prec)
    return x


def _div_lists(a, b, n):
    """First ``n`` coefficients of ``a/b``; requires ``b[0] != 0``."""
    if n <= 0:
        return []
    b = b[:n]
    a = list(a[:n])
    a.extend(repeat(0, n - len(a)))
    b0 = b[0]
    nz = [(j, c) for j, c in enumerate(b[1:], 1) if c]
    if (
        n >= NEWTON_MIN_LENGTH
        and len(nz) >= NEWTON_MIN_TERMS
        and (b0 == 1 or b0 == -1)
        and _all_int(b)
        and _all_int(a)
    ):
        return _mul_lists(a, _inv_newton(b, n), n)
    inv0 = _unit_inverse(b0)
    plus = [j for j, c in nz if c == 1]
    minus = [j for j, c in nz if c == -1]
    other = [(j, c) for j, c in nz if c != 1 and c != -1]
    q = [0] * n
    for i in range(n):
        s = a[i]
        k = bisect_right(plus, i)
        if k:
            s -= sum([q[i - j] for j in plus[:k]])
        k = bisect_right(minus, i)
        if k:
            s += sum([q[i - j] for j in minus[:k]])
        for j, c in other:
            if j > i:
                break
            s -= c * q[i - j]
        q[i] = s if inv0 == 1 else (-s if inv0 == -1 else _norm(s * inv0))
    return q


# ---------------------------------------------------------------------------


class LaurentSeries:
    """Immutable truncated Laurent series ``sum_{n=valuation}^{order} c_n q^n + O(q^{order+1})``.

    ``coeffs`` may be given longer or shorter than the window; it is cut or
    zero-padded to ``order``.  Leading zeros are absorbed into the
    valuation, and a series that vanishes on its whole window is stored as
    ``valuation == order + 1`` with no coefficients.
    """

    __slots__ = ("_valuation", "_coeffs", "_order")

    def __init__(self, coeffs=(), valuation=0, order=None):
        coeffs = [_exact(c) for c in coeffs]
        valuation = int(valuation)
        if order is None:
            order = valuation + len(coeffs) - 1
        self._init(valuation, coeffs, int(order))

    def _init(self, valuation, coeffs, order):
        width = order - valuation + 1
        if width <= 0:
            self._valuation = order + 1
            self._coeffs = ()
            self._order = order
            return
        if len(coeffs) > width:
            coeffs = coeffs[:width]
        k = 0
        for k, c in enumerate(coeffs):
            if c:
                break
        else:
            k = len(coeffs)
        if k == len(coeffs):
            self._valuation = order + 1
            self._coeffs = ()
            self._order = order
            return
        tail = width - len(coeffs)
        coeffs = [_norm(c) for c in coeffs[k:]] if not _all_int(coeffs) else coeffs[k:]
        if tail:
            coeffs.extend(repeat(0, tail))
        self._valuation = valuation + k
        self._coeffs = tuple(coeffs)
        self._order = order

    @classmethod
    def _make(cls, valuation, coeffs, order):
        obj = cls.__new__(cls)
        obj._init(valuation, list(coeffs), order)
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_terms(cls, terms, order):
        """Build from a mapping ``{exponent: coefficient}`` known through ``order``."""
        terms = {int(e): _exact(c) for e, c in dict(terms).items() if c}
        if not terms:
            return cls.zero(order)
        lo = min(terms)
        coeffs = [0] * max(order - lo + 1, 0)
        for e, c in terms.items():
            if e <= order:
                coeffs[e - lo] = c
        return cls._make(lo, coeffs, order)

    @classmethod
    def zero(cls, order):
        return cls._make(order + 1, [], order)

    @classmethod
    def one(cls, order):
        return cls.monomial(0, 1, order)

    @classmethod
    def monomial(cls, exponent, coefficient, order):
        return cls.from_terms({exponent: coefficient}, order)

    # -- accessors ----------------------------------------------------------

    @property
    def valuation(self):
        return self._valuation

    @property
    def order(self):
        return self._order

    @property
    def coeffs(self):
        """Coefficients of ``q^valuation .. q^order`` as a tuple."""
        return self._coeffs

    def is_zero(self):
        return not self._coeffs

    def is_integral(self):
        return _all_int(self._coeffs)

    def leading_coefficient(self):
        if not self._coeffs:
            raise NonInvertibleSeries("non-invertible series: zero to its order")
        return self._coeffs[0]

    def coeff(self, n):
        if n > self._order:
            raise InsufficientTruncation(
                f"insufficient truncation: coefficient of q^{n} requested, series known to q^{self._order}"
            )
        i = n - self._valuation
        if i < 0:
            return 0
        return self._coeffs[i]

    __getitem__ = coeff

    def coefficients(self, start, stop):
        """Coefficients of ``q^start`` .. ``q^stop`` inclusive as a list."""
        return [self.coeff(n) for n in range(start, stop + 1)]

    def terms(self):
        """Iterate ``(exponent, coefficient)`` over nonzero stored terms."""
        v = self._valuation
        return ((v + i, c) for i, c in enumerate(self._coeffs) if c)

    def _dense(self, start):
        # coefficients from q^start through the order; start <= valuation
        pad = self._valuation - start
        return [0] * pad + list(self._coeffs) if pad else list(self._coeffs)

    # -- ring operations ----------------------------------------------------

    def __neg__(self):
        return LaurentSeries._make(self._valuation, [-c for c in self._coeffs], self._order)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, LaurentSeries):
            order = min(self._order, other._order)
            lo = min(self._valuation, other._valuation)
            if lo > order:
                return LaurentSeries.zero(order)
            a = self._dense(lo)[: order - lo + 1]
            b = other._dense(lo)[: order - lo + 1]
            if len(a) < len(b):
                a, b = b, a
            a[: len(b)] = map(_op_add, a[: len(b)], b)
            return LaurentSeries._make(lo, a, order)
        try:
            c = _exact(other)
        except TypeError:
            return NotImplemented
        return self + LaurentSeries.monomial(0, c, self._order)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, LaurentSeries):
            return self + (-other)
        try:
            c = _exact(other)
        except TypeError:
            return NotImplemented
        return self + (-c)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _exact(c)
        if c == 1:
            return self
        return LaurentSeries._make(self._valuation, [_norm(c * x) for x in self._coeffs], self._order)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        va, vb = self._valuation, other._valuation
        order = min(self._order + vb, other._order + va)
        v = va + vb
        n = order - v + 1
        if n <= 0:
            return LaurentSeries.zero(order)
        return LaurentSeries._make(v, _mul_lists(list(self._coeffs), list(other._coeffs), n), order)

    __rmul__ = __mul__

    def invert(self):
        """Multiplicative inverse; the leading stored coefficient must be nonzero."""
        if not self._coeffs:
            raise NonInvertibleSeries(
                f"non-invertible series: zero through q^{self._order}"
            )
        v, big_n = self._valuation, self._order
        n = big_n - v + 1
        one = [1] + [0] * (n - 1)
        return LaurentSeries._make(-v, _div_lists(one, list(self._coeffs), n), big_n - 2 * v)

    def __truediv__(self, other):
        if not isinstance(other, LaurentSeries):
            try:
                c = _exact(other)
            except TypeError:
                return NotImplemented
            if c == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(Fraction(1) / c)
        if not other._coeffs:
            raise NonInvertibleSeries(
                f"non-invertible series: zero through q^{other._order}"
            )
        va, vb = self._valuation, other._valuation
        v = va - vb
        order = min(self._order - vb, other._order - 2 * vb + va)
        n = order - v + 1
        if n <= 0 or not self._coeffs:
            return LaurentSeries.zero(order)
        return LaurentSeries._make(v, _div_lists(list(self._coeffs), list(other._coeffs), n), order)

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.invert() ** (-e)
        if e == 0:
            if not self._coeffs:
                raise NonInvertibleSeries("0^0 of a series that is zero to its order")
            return LaurentSeries.one(self._order - self._valuation)
        result = None
        base = self
        while True:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if not e:
                return result
            base = base * base

    def substitute_power(self, m):
        """The series in ``q^m`` (``q -> q^m``)."""
        m = int(m)
        if m <= 0:
            raise ValueError("substitution exponent must be positive")
        order = m * (self._order + 1) - 1
        if m == 1:
            return self
        if not self._coeffs:
            return LaurentSeries.zero(order)
        out = [0] * ((len(self._coeffs) - 1) * m + 1)
        out[::m] = self._coeffs
        return LaurentSeries._make(m * self._valuation, out, order)

    def dq(self):
        """Apply ``q d/dq``: the coefficient of ``q^n`` is multiplied by ``n``."""
        v = self._valuation
        return LaurentSeries._make(v, [(v + i) * c for i, c in enumerate(self._coeffs)], self._order)

    def shift(self, k):
        """Multiply by ``q^k``."""
        return LaurentSeries._make(self._valuation + k, list(self._coeffs), self._order + k)

    def truncate(self, order):
        if order >= self._order:
            return self
        return LaurentSeries._make(self._valuation, list(self._coeffs), order)

    # -- comparison ---------------------------------------------------------

    def first_mismatch(self, other, order=None):
        """First exponent where two series differ on their common window, else None."""
        top = min(self._order, other._order)
        if order is not None:
            if order > top:
                raise InsufficientTruncation(
                    f"insufficient truncation: comparison to q^{order} but series known to q^{top}"
                )
            top = order
        lo = min(self._valuation, other._valuation)
        for n in range(lo, top + 1):
            if self.coeff(n) != other.coeff(n):
                return n
        return None

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self._order == other._order
            and self._valuation == other._valuation
            and self._coeffs == other._coeffs
        )

    def __hash__(self):
        return hash((self._valuation, self._order, self._coeffs))

    def __repr__(self):
        shown = []
        for e, c in self.terms():
            if len(shown) == 6:
                shown.append("...")
                break
            if e == 0:
                shown.append(str(c))
            else:
                shown.append(f"{c}*q^{e}")
        body = " + ".join(shown) if shown else "0"
        return f"LaurentSeries({body} + O(q^{self._order + 1}))"


# functional aliases --------------------------------------------------------


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def invert(a):
    return a.invert()


def power(a, e):
    return a ** e


def substitute_power(a, m):
    return a.substitute_power(m)


def dq(a):
    return a.dq()


def coeff(a, n):
    return a.coeff(n)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of comparing two series coefficient by coefficient."""

    name: str
    ok: bool
    order: int
    first_mismatch: int | None = None

    def __bool__(self):
        return self.ok


def check_identity(name, lhs, rhs, order=None):
    bad = lhs.first_mismatch(rhs, order)
    top = order if order is not None else min(lhs.order, rhs.order)
    return IdentityCheck(name, bad is None, top, bad)
