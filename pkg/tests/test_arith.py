from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etahecke.arith import (
    INFINITY,
    NewmanParams,
    congruent,
    derive_params,
    hauptmodul_weight,
    is_prime,
    jacobi,
    m_ell,
    n_ell,
    p_adic_valuation,
    primes_between,
    s_ell,
    triple_hypotheses,
    two_adic_valuation,
)
from etahecke.exceptions import ParameterError

from oracles import legendre

ODD_PRIMES = [q for q in range(3, 200) if is_prime(q)]


@settings(max_examples=300, deadline=None)
@given(st.integers(-10**6, 10**6), st.sampled_from(ODD_PRIMES))
def test_jacobi_matches_euler_criterion(a, p):
    assert jacobi(a, p) == legendre(a, p)


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**4, 10**4), st.integers(1, 10**4).filter(lambda d: d % 3), st.sampled_from(ODD_PRIMES))
def test_jacobi_of_rational(u, v, p):
    x = Fraction(u, v)
    if x.denominator % p == 0:
        with pytest.raises(ParameterError):
            jacobi(x, p)
    else:
        assert jacobi(x, p) == legendre(x.numerator, p) * legendre(x.denominator, p)


def test_jacobi_rejects_even_modulus():
    with pytest.raises(ParameterError):
        jacobi(3, 8)


def test_valuations():
    assert p_adic_valuation(Fraction(48, 5), 2) == 4
    assert p_adic_valuation(Fraction(3, 40), 2) == -3
    assert p_adic_valuation(0, 7) == INFINITY
    assert two_adic_valuation(96) == 5
    assert two_adic_valuation(Fraction(1, 12)) == -2


@settings(max_examples=300, deadline=None)
@given(st.integers(-10**9, 10**9).filter(bool), st.integers(1, 10**6))
def test_two_adic_agrees_with_general(num, den):
    x = Fraction(num, den)
    assert two_adic_valuation(x) == p_adic_valuation(x, 2)


def test_rational_congruence():
    assert congruent(Fraction(4097, 5), Fraction(1, 5), 2, 12)
    assert not congruent(3, 1, 2, 2)
    assert congruent(7, 7, 3, 1000)


def test_ell_constants():
    assert (n_ell(5), s_ell(5), m_ell(5)) == (4, 1, 3)
    assert n_ell(31) == 160
    assert s_ell(11) == 5
    assert m_ell(3) == 1
    assert hauptmodul_weight(13) == 2


def test_params_alpha_ell5():
    prm = derive_params(-2, 3, 2, 5)
    assert prm.delta == 4 and prm.delta_star == -1
    assert prm.epsilon == Fraction(1, 2)
    assert prm.theta == 16 and prm.theta_star == Fraction(1, 2)
    assert prm.k == 24 and prm.modulus_exponent == 12
    assert prm.leading_power == 1 and prm.middle_power == 0
    assert prm.gencong_valid and prm.onoanalog_valid


def test_params_overpartition():
    prm = derive_params(-2, 1, 2, 3)
    assert prm.delta == 0 and prm.delta_star == -1
    assert prm.theta == -4
    assert prm.leading_power == 3 and prm.middle_power == 1


@pytest.mark.parametrize(
    "args, message",
    [
        ((-2, 3, 11, 5), "genus-zero"),
        ((-2, 3, 2, 9), "odd prime"),
        ((-2, 3, 2, 2), "odd prime"),
        ((-2, 1, 3, 3), "differ"),
        ((-2, 2, 2, 5), "parity"),
        ((-2, 3, 2, 3), "non-integral"),
    ],
)
def test_params_validation(args, message):
    with pytest.raises(ParameterError, match=message):
        NewmanParams(*args)


def test_triple_hypotheses():
    assert triple_hypotheses(-3, 2, 3)["gencong_valid"]
    assert triple_hypotheses(-2, 1, 2) == {"gencong_valid": True, "onoanalog_valid": True}
    # s + rp below -24 keeps the congruence but loses the Faber form
    assert triple_hypotheses(-9, 2, 5) == {"gencong_valid": True, "onoanalog_valid": False}
    assert triple_hypotheses(-6, 1, 5)["gencong_valid"] is False
    assert triple_hypotheses(-2, 3, 13)["gencong_valid"] is False


@settings(max_examples=300, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30), st.sampled_from([2, 3, 5, 7, 13]))
def test_hypothesis_predicates_nest(r, s, p):
    h = triple_hypotheses(r, s, p)
    assert not h["onoanalog_valid"] or h["gencong_valid"]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(-2, 3, 2), (-2, 1, 2), (-3, 2, 3), (-1, 2, 2)]), st.sampled_from(ODD_PRIMES[1:30]))
def test_delta_is_integral_for_ell_above_3(triple, ell):
    r, s, p = triple
    if ell == p:
        return
    prm = derive_params(r, s, p, ell)
    assert prm.delta == Fraction(r + s * p, 24) * (ell * ell - 1)
    assert prm.delta_star == Fraction(r * p + s, 24) * (ell * ell - 1)


def test_primes_between():
    assert primes_between(3, 20) == [3, 5, 7, 11, 13, 17, 19]
    assert is_prime(2 ** 61 - 1)
