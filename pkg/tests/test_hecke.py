import pytest

from etahecke.arith import derive_params
from etahecke.hecke import (
    Side,
    combined_coefficient,
    combined_series,
    combined_start,
    expand,
    phi_spec,
    pole_prediction,
    required_order,
)
from etahecke.qforms import eta_quotient, hauptmodul_phi

from oracles import brute_T, mod_p

N_MAX = 200


@pytest.mark.parametrize("triple", [(-2, 3, 2), (-2, 1, 2)])
@pytest.mark.parametrize("ell", [5, 7])
@pytest.mark.parametrize("side", [Side.PLAIN, Side.STARRED])
def test_combined_coefficient_brute_force(triple, ell, side):
    prm = derive_params(*triple, ell)
    c = eta_quotient(phi_spec(prm, side), required_order(prm, side, N_MAX))
    starred = side is Side.STARRED
    for n in range(N_MAX + 1):
        assert mod_p(combined_coefficient(prm, side, c, n)) == brute_T(*triple, ell, n, starred), n


def test_combined_accepts_callable():
    prm = derive_params(-2, 3, 2, 5)
    c = eta_quotient(phi_spec(prm), 200)
    assert combined_coefficient(prm, "plain", c.coeff, 3) == combined_coefficient(prm, Side.PLAIN, c, 3)


def test_phi_spec_swaps():
    prm = derive_params(-2, 3, 2, 5)
    assert phi_spec(prm).factors == ((1, -2), (2, 3))
    assert phi_spec(prm, Side.STARRED).factors == ((1, 3), (2, -2))


def test_start_and_required_order():
    prm = derive_params(-2, 3, 2, 5)
    assert combined_start(prm, Side.PLAIN) == 0
    assert combined_start(prm, Side.STARRED) == -1
    assert required_order(prm, Side.PLAIN, 100) == 2504


def test_pole_prediction():
    assert pole_prediction(-3, 5) == (3, True)
    assert pole_prediction(4, 5) == (0, False)
    assert pole_prediction(60, 7) == (1, False)


def test_starred_expansion_alpha_ell5():
    g = expand(derive_params(-2, 3, 2, 5), Side.STARRED, 2).quotient
    assert g.coefficients(-1, 2) == [1, 2, 276, -2048]


def test_plain_expansion_alpha_ell5():
    g = expand(derive_params(-2, 3, 2, 5), "plain", 3).quotient
    assert g.coefficients(0, 3) == [26, 4096, 98304, 1228800]


def test_plain_is_holomorphic_at_infinity():
    for ell in (5, 7, 11):
        h = expand(derive_params(-2, 3, 2, ell), Side.PLAIN, 20)
        assert h.predicted_pole_infinity == 0
        assert h.quotient.valuation >= 0


def test_exact_pole_for_overpartition_ell5():
    h = expand(derive_params(-2, 1, 2, 5), Side.STARRED, 5)
    assert h.quotient.valuation == -3 and h.quotient.leading_coefficient() == 1
    assert h.quotient.coefficients(-3, 0) == [1, 1, 0, 6]
    x = hauptmodul_phi(2, 12).invert()
    k5 = x * x * x + x * x * 73 + x * 948 + 126
    assert h.quotient.first_mismatch(k5) is None


def test_combined_series_orders():
    prm = derive_params(-3, 2, 3, 5)
    t = combined_series(prm, Side.PLAIN, 10)
    assert t.order == 10
    assert expand(prm, Side.PLAIN, 10).quotient.coeff(0) == 2505
