"""Finite-range verifiers for the congruences and eigenvalue identities.

Every verifier computes the series order it needs up front.  A caller may
pass ``truncation`` to force a specific order; if that order is too small the
verifier raises :class:`InsufficientTruncation` instead of quietly shrinking
the range.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (
    NewmanParams,
    congruent,
    is_prime,
    jacobi,
    n_ell,
    p_adic_valuation,
    primes_between,
    s_ell,
)
from .exceptions import InsufficientTruncation, ParameterError
from .hecke import Side, combined_coefficient, phi_spec, required_order
from .qforms import ALPHA, OVERPARTITION, e2_star, e2_star_identity, eta_quotient


def _text(x):
    return str(x)


@dataclass
class CongruenceReport:
    theorem: str
    params: dict
    range: dict
    modulus: str
    checked: int = 0
    failures: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def passed(self):
        return not self.failures

    def __bool__(self):
        return self.passed

    def fail(self, n, lhs, rhs):
        self.failures.append({"n": _text(n), "lhs": _text(lhs), "rhs": _text(rhs)})

    def to_dict(self):
        """JSON-ready dict in canonical key order; numbers become decimal strings."""
        return {
            "theorem": self.theorem,
            "params": {k: _text(v) for k, v in self.params.items()},
            "range": {k: _text(v) for k, v in self.range.items()},
            "modulus": self.modulus,
            "checked": self.checked,
            "failures": [dict(f) for f in self.failures],
            "witnesses": {k: _text(v) for k, v in self.witnesses.items()},
            "elapsed_ms": int(self.elapsed_ms),
        }


def _series(spec, needed, truncation):
    if truncation is not None:
        if truncation < needed:
            raise InsufficientTruncation(
                f"insufficient truncation: range needs order {needed}, override gives {truncation}"
            )
        needed = truncation
    return eta_quotient(spec, needed)


def _require_ell(ell, minimum=5):
    if ell < minimum or not is_prime(ell):
        raise ParameterError(f"ell={ell} must be a prime >= {minimum}")


def _finish(report, t0):
    report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return report


def c_ell(ell, truncation=None):
    """``ell alpha(N_ell) + (6/ell)``."""
    _require_ell(ell)
    big_n = n_ell(ell)
    alpha = _series(ALPHA, big_n, truncation)
    return ell * alpha.coeff(big_n) + jacobi(6, ell)


def thm_1_1_lhs(ell, alpha, n):
    """``ell alpha(ell^2 n + N) + (-1/ell)((N - n)/ell) alpha(n) + alpha((n - N)/ell^2)``."""
    big_n = n_ell(ell)
    total = ell * alpha.coeff(ell * ell * n + big_n)
    total += jacobi(-1, ell) * jacobi(big_n - n, ell) * alpha.coeff(n)
    if n >= big_n and (n - big_n) % (ell * ell) == 0:
        total += alpha.coeff((n - big_n) // (ell * ell))
    return total


def verify_thm_1_1(ell, n_max, truncation=None) -> CongruenceReport:
    t0 = time.perf_counter()
    _require_ell(ell)
    big_n = n_ell(ell)
    alpha = _series(ALPHA, ell * ell * n_max + big_n, truncation)
    c = ell * alpha.coeff(big_n) + jacobi(6, ell)
    report = CongruenceReport(
        "thm1.1", {"ell": ell}, {"n_min": 0, "n_max": n_max}, "2^12", witnesses={"c_ell": c}
    )
    for n in range(n_max + 1):
        lhs = thm_1_1_lhs(ell, alpha, n)
        rhs = c * alpha.coeff(n)
        if not congruent(lhs, rhs, 2, 12):
            report.fail(n, lhs, rhs)
        report.checked += 1
    report.witnesses["n0_exact"] = "true" if thm_1_1_lhs(ell, alpha, 0) == c else "false"
    return _finish(report, t0)


def thm_1_3_admissible(i, ell):
    if not 1 <= i <= 5:
        raise ParameterError(f"i={i} must satisfy 1 <= i <= 5")
    if ell == 3 or ell < 5 or not is_prime(ell):
        raise ParameterError(f"ell={ell} must be a prime > 3")
    if (ell + 1) % (2 ** i):
        raise ParameterError(f"hypothesis violation: ell={ell} is not -1 mod 2^{i}")


def thm_1_3_pairs(ell, case_count):
    """First ``case_count`` pairs ``(n, m)`` by increasing ``ell n + m``.

    ``m`` is the least positive residue of ``N_ell`` mod ``ell``; the pair is
    admissible when ``ell n + m`` is not ``N_ell`` mod ``ell^2``, which is
    what makes both extra terms of the ``thm1.1`` congruence vanish.
    """
    big_n = n_ell(ell)
    m = big_n % ell
    out = []
    n = 0
    while len(out) < case_count:
        if (ell * n + m - big_n) % (ell * ell):
            out.append((n, m))
        n += 1
    return out


def verify_thm_1_3(i, ell, case_count, exponent=None, truncation=None) -> CongruenceReport:
    """``alpha(ell^2(ell n + m) + N_ell) == 0 mod 2^exponent`` (default ``exponent = i``)."""
    t0 = time.perf_counter()
    thm_1_3_admissible(i, ell)
    exponent = i if exponent is None else exponent
    big_n = n_ell(ell)
    pairs = thm_1_3_pairs(ell, case_count)
    indices = [ell * ell * (ell * n + m) + big_n for n, m in pairs]
    alpha = _series(ALPHA, max(indices, default=0), truncation)
    report = CongruenceReport(
        "thm1.3",
        {"i": i, "ell": ell},
        {"cases": case_count, "index_max": max(indices, default=0)},
        f"2^{exponent}",
    )
    for (n, m), idx in zip(pairs, indices):
        value = alpha.coeff(idx)
        if not congruent(value, 0, 2, exponent):
            report.fail(f"{n},{m}", value, 0)
        report.checked += 1
    return _finish(report, t0)


def _require_gencong(params):
    if not params.gencong_valid:
        raise ParameterError(f"hypothesis violation: {params.as_dict()} fails the congruence hypotheses")


def lambda_direct(params: NewmanParams, truncation=None):
    """``lambda`` from the eta-quotient coefficients: the combination at ``n = 0``."""
    c = _series(phi_spec(params, Side.PLAIN), required_order(params, Side.PLAIN, 0), truncation)
    return combined_coefficient(params, Side.PLAIN, c, 0)


def mu_series(params: NewmanParams, order):
    """``E_p*(q) / phi*`` through ``q^order``."""
    return e2_star(params.p, order) / eta_quotient(phi_spec(params, Side.STARRED), order)


def lambda_via_mu(params: NewmanParams, truncation=None):
    """``mu(-Delta*) + (theta*/ell) ell^(1/2-eps) ((-Delta*)/ell)``."""
    m = -params.delta_star
    if m < 0:
        raise ParameterError("Delta* must be nonpositive for the mu route")
    order = m if truncation is None else truncation
    if order < m:
        raise InsufficientTruncation(f"insufficient truncation: need q^{m}, override gives {order}")
    mu = mu_series(params, order).coeff(m)
    power = params.middle_power
    scale = params.ell ** power if power >= 0 else Fraction(1, params.ell ** -power)
    total = mu + jacobi(params.theta_star, params.ell) * scale * jacobi(-params.delta_star, params.ell)
    return total.numerator if isinstance(total, Fraction) and total.denominator == 1 else total


def lambda_two_ways(params: NewmanParams, order=None):
    """Both eigenvalue routes; raises ``VerificationError`` if they differ."""
    from .exceptions import VerificationError

    if not (params.gencong_valid and params.onoanalog_valid):
        raise ParameterError(f"hypothesis violation: {params.as_dict()}")
    direct = lambda_direct(params)
    via_mu = lambda_via_mu(params, order)
    if direct != via_mu:
        raise VerificationError(f"eigenvalue mismatch: direct {direct}, via mu {via_mu}")
    return direct, via_mu


def verify_thm_1_4(params: NewmanParams, n_max, truncation=None) -> CongruenceReport:
    t0 = time.perf_counter()
    _require_gencong(params)
    c = _series(phi_spec(params, Side.PLAIN), required_order(params, Side.PLAIN, n_max), truncation)
    lam = combined_coefficient(params, Side.PLAIN, c, 0)
    a = params.modulus_exponent
    report = CongruenceReport(
        "thm1.4",
        params.as_dict(),
        {"n_min": 0, "n_max": n_max},
        f"{params.p}^{a}",
        witnesses={"lambda": lam},
    )
    for n in range(n_max + 1):
        lhs = combined_coefficient(params, Side.PLAIN, c, n)
        rhs = lam * c.coeff(n)
        if not congruent(lhs, rhs, params.p, a):
            report.fail(n, lhs, rhs)
        report.checked += 1
    return _finish(report, t0)


def verify_mu_mod32(ell_max, truncation=None) -> CongruenceReport:
    """``mu(s_ell) == ell (ell/3)`` and ``c_ell == (ell/3)(ell + 1)`` mod 32 for ``3 < ell <= ell_max``."""
    t0 = time.perf_counter()
    if ell_max < 5:
        raise ParameterError("ell_max must be at least 5")
    ells = primes_between(5, ell_max)
    need = max(s_ell(ell) for ell in ells)
    order = need if truncation is None else truncation
    if order < need:
        raise InsufficientTruncation(f"insufficient truncation: need q^{need}, override gives {order}")
    mu = e2_star(2, order) / eta_quotient({1: 3, 2: -2}, order)
    report = CongruenceReport("mu-mod32", {"ell_max": ell_max}, {"ells": len(ells)}, "2^5")
    identity = e2_star_identity(order)
    report.witnesses["e2_star_identity"] = "true" if identity else "false"
    if not identity:
        report.fail("e2*", identity.first_mismatch, 0)
    alpha = _series(ALPHA, n_ell(ells[-1]), None)
    for ell in ells:
        sym = jacobi(ell, 3)
        m = mu.coeff(s_ell(ell))
        if not congruent(m, ell * sym, 2, 5):
            report.fail(f"mu({ell})", m, ell * sym)
        c = ell * alpha.coeff(n_ell(ell)) + jacobi(6, ell)
        if not congruent(c, sym * (ell + 1), 2, 5):
            report.fail(f"c({ell})", c, sym * (ell + 1))
        report.witnesses[f"mu_s_{ell}"] = m
        report.checked += 2
    return _finish(report, t0)


def _require_odd_prime(ell):
    if ell < 3 or not is_prime(ell):
        raise ParameterError(f"ell={ell} must be an odd prime")


def overpartition_lhs(ell, pbar, n):
    """``ell^3 pbar(ell^2 n) + (-n/ell) ell pbar(n) + pbar(n/ell^2)``."""
    total = ell ** 3 * pbar.coeff(ell * ell * n) + jacobi(-n, ell) * ell * pbar.coeff(n)
    if n % (ell * ell) == 0:
        total += pbar.coeff(n // (ell * ell))
    return total


def verify_overpartition(ell, n_max, truncation=None) -> CongruenceReport:
    t0 = time.perf_counter()
    _require_odd_prime(ell)
    pbar = _series(OVERPARTITION, ell * ell * n_max, truncation)
    lam = ell ** 3 + 1
    report = CongruenceReport(
        "overpartition",
        {"ell": ell},
        {"n_min": 0, "n_max": n_max},
        "2^12",
        witnesses={"lambda": lam},
    )
    for n in range(n_max + 1):
        lhs = overpartition_lhs(ell, pbar, n)
        rhs = lam * pbar.coeff(n)
        if not congruent(lhs, rhs, 2, 12):
            report.fail(n, lhs, rhs)
        report.checked += 1
    return _finish(report, t0)


def overpartition_corollary(i, ell, case_count, truncation=None) -> CongruenceReport:
    """``pbar(ell^3 n) == 0 mod 2^i`` for the first ``case_count`` positive ``n`` prime to ``ell``."""
    t0 = time.perf_counter()
    _require_odd_prime(ell)
    if i < 1 or (ell + 1) % (2 ** i):
        raise ParameterError(f"hypothesis violation: ell={ell} is not -1 mod 2^{i}")
    ns = []
    n = 1
    while len(ns) < case_count:
        if n % ell:
            ns.append(n)
        n += 1
    pbar = _series(OVERPARTITION, ell ** 3 * max(ns, default=0), truncation)
    report = CongruenceReport(
        "overpartition-corollary",
        {"i": i, "ell": ell},
        {"cases": case_count, "n_max": max(ns, default=0)},
        f"2^{i}",
    )
    for n in ns:
        value = pbar.coeff(ell ** 3 * n)
        if not congruent(value, 0, 2, i):
            report.fail(n, value, 0)
        report.checked += 1
    return _finish(report, t0)


def c31_structure():
    """``(c_31, v_2(c_31), c_31 / 2^10)``."""
    c = c_ell(31)
    return c, p_adic_valuation(c, 2), c // 2 ** 10 if c % 2 ** 10 == 0 else Fraction(c, 2 ** 10)
