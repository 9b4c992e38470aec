from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etahecke.exceptions import InsufficientTruncation, NonInvertibleSeries
from etahecke.series import LaurentSeries, check_identity

from oracles import naive_div, naive_mul


def S(coeffs, v=0, order=None):
    return LaurentSeries(coeffs, v, order)


coeff_ints = st.integers(min_value=-10**6, max_value=10**6)
coeff_values = st.one_of(
    coeff_ints,
    st.fractions(min_value=-50, max_value=50, max_denominator=12),
    st.integers(min_value=-10**40, max_value=10**40),
)


@st.composite
def series(draw, min_len=1, max_len=20, integral=False, unit=False):
    vals = draw(st.lists(coeff_ints if integral else coeff_values, min_size=min_len, max_size=max_len))
    if unit:
        vals[0] = draw(st.sampled_from([1, -1]) if integral else st.sampled_from([1, -1, 2, Fraction(3, 5)]))
    v = draw(st.integers(min_value=-4, max_value=4))
    return LaurentSeries(vals, v)


# long inputs reach the Kronecker and Newton branches
long_series = series(min_len=50, max_len=130, integral=True)


def agree(x, y):
    return x.first_mismatch(y) is None


# -- unit tests -------------------------------------------------------------


def test_normal_form_absorbs_leading_zeros():
    f = S([0, 0, 3, 4], v=-1, order=5)
    assert f.valuation == 1
    assert f.coeffs == (3, 4, 0, 0, 0)
    assert f.coeff(-7) == 0
    assert f[2] == 4


def test_zero_series_canonical():
    z = LaurentSeries.zero(5)
    assert z.is_zero() and z.valuation == 6
    assert z == S([0, 0], order=5)


def test_coeff_beyond_order_raises():
    with pytest.raises(InsufficientTruncation):
        S([1, 2, 3]).coeff(3)


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        S([1.5])


def test_invert_zero_raises():
    with pytest.raises(NonInvertibleSeries, match="non-invertible series"):
        LaurentSeries.zero(4).invert()


def test_order_propagation():
    a = S([1, 1], v=-1, order=5)
    b = S([1, 2, 3], v=2, order=6)
    assert (a * b).order == min(5 + 2, 6 - 1)
    assert a.invert().order == 5 + 2
    assert (b / a).order == min(6 + 1, 5 + 2 + 2)
    assert a.substitute_power(3).order == 3 * 6 - 1


def test_geometric_series_inverse():
    f = S([1, -1], order=10)
    assert f.invert().coeffs == (1,) * 11


def test_fraction_results_normalize_to_int():
    f = S([2, 4, 6]).scale(Fraction(1, 2))
    assert f.coeffs == (1, 2, 3)
    assert all(type(c) is int for c in f.coeffs)


def test_pow_negative_and_zero():
    f = S([1, 1], order=8)
    assert agree(f ** -2, (f * f).invert())
    assert f ** 0 == LaurentSeries.one(8)


def test_dq_and_shift():
    f = S([1, 2, 3], v=-1)
    assert f.dq().coeffs == (-1, 0, 3)
    assert f.shift(2).valuation == 1 and f.shift(2).order == 3


def test_repr_mentions_order():
    assert "O(q^3)" in repr(S([1, 2, 3]))


def test_check_identity_reports_first_mismatch():
    res = check_identity("x", S([1, 2, 3, 4]), S([1, 2, 5, 4]))
    assert not res and res.first_mismatch == 2


def test_large_integer_product_matches_naive():
    a = [(-1) ** i * (10 ** 30 + i * i) for i in range(300)]
    b = [(i * 7919) % 101 - 50 for i in range(300)]
    got = (S(a) * S(b)).coeffs
    assert list(got) == naive_mul(a, b, 300)


def test_large_unit_division_matches_naive():
    # dense enough to take the Newton route
    b = [1] + [(i * 31) % 17 - 8 for i in range(1, 1500)]
    a = [(i * 13) % 29 - 14 for i in range(1500)]
    got = (S(a) / S(b)).coeffs
    assert list(got[:400]) == naive_div(a, b, 400)


# -- properties ----------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert agree(a + b, b + a)
    assert agree(a * b, b * a)
    assert agree((a + b) + c, a + (b + c))
    assert agree((a * b) * c, a * (b * c))
    assert agree(a * (b + c), a * b + a * c)
    assert (a - a).is_zero()


@settings(max_examples=300, deadline=None)
@given(series(unit=True))
def test_inverse_pairs(a):
    one = LaurentSeries.one(a.order)
    assert agree(a * a.invert(), one)
    assert agree(a.invert().invert(), a)


@settings(max_examples=300, deadline=None)
@given(series(), series())
def test_leibniz(a, b):
    assert agree((a * b).dq(), a.dq() * b + a * b.dq())


@settings(max_examples=300, deadline=None)
@given(series(), series(), st.integers(min_value=1, max_value=5), st.integers(min_value=1, max_value=4))
def test_substitution_laws(a, b, m, k):
    assert agree((a * b).substitute_power(m), a.substitute_power(m) * b.substitute_power(m))
    assert agree((a + b).substitute_power(m), a.substitute_power(m) + b.substitute_power(m))
    assert agree(a.substitute_power(m).substitute_power(k), a.substitute_power(m * k))
    assert agree(a.substitute_power(m).dq(), a.dq().substitute_power(m).scale(m))


@settings(max_examples=150, deadline=None)
@given(long_series, long_series)
def test_kronecker_product_matches_naive(a, b):
    n = min(len(a.coeffs), len(b.coeffs))
    got = (a * b).coeffs
    assert list(got[:n]) == naive_mul(list(a.coeffs), list(b.coeffs), n)


@settings(max_examples=150, deadline=None)
@given(series(min_len=2, max_len=40), series(min_len=2, max_len=40, unit=True))
def test_division_matches_naive(a, b):
    q = a / b
    n = q.order - q.valuation + 1
    start = a.valuation - b.valuation
    want = naive_div(list(a.coeffs), list(b.coeffs), n)
    assert q.coefficients(start, q.order) == want[: q.order - start + 1]


@settings(max_examples=200, deadline=None)
@given(series(unit=True, max_len=10), st.integers(min_value=-3, max_value=4))
def test_power_matches_repeated_product(a, e):
    want = LaurentSeries.one(a.order - a.valuation)
    base = a if e >= 0 else a.invert()
    for _ in range(abs(e)):
        want = want * base
    assert agree(a ** e, want)
