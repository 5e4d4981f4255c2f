import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jordanian.ncalg.scalars import I
from jordanian.ordexp import (
    WElement,
    brute_force_expand,
    check_conjugation,
    check_ordering_1d,
    check_ordering_nd,
    check_q_boundary,
    family_realization,
    g_log_series,
    normal_ordered_exp,
    solve_j_series,
    solve_jq_series,
)
from jordanian.starlab import Q_log, StarParams, g_log


def _x(M):
    return WElement.x(0, 1, M)


def _p(M):
    return WElement.p(0, 1, M)


def _k(M):
    return WElement.k(0, 1, M)


def test_weyl_relation():
    x, p = _x(3), _p(3)
    assert x * p - p * x == WElement.one(1, 3, I)


def test_constant_phi_is_already_normal():
    M = 3
    ikx = (_k(M) * _x(M)).scale(I)
    expected = sum(((ikx**m).scale(Fraction(1, math.factorial(m))) for m in range(M + 1)), WElement.zero(1, M))
    assert brute_force_expand([1], M) == expected


def test_linear_phi_second_order():
    # (ikxp)^2 / 2 = (ik)^2 (x^2 p^2 - i x p) / 2
    M = 2
    x, p, k = _x(M), _p(M), _k(M)
    ik2 = (k * k).scale(-1)
    expected = WElement.one(1, M) + (k * x * p).scale(I) + (ik2 * (x * x * p * p - (x * p).scale(I))).scale(Fraction(1, 2))
    assert brute_force_expand([0, 1], M) == expected


def test_zero_phi():
    assert brute_force_expand([0], 4) == WElement.one(1, 4)


def test_j_series_examples():
    M = 5
    k, p = _k(M), _p(M)
    assert solve_j_series([1], M).J == p + k
    assert solve_j_series([1], M).Phi == k
    exp_k = sum(((k**s).scale(Fraction(1, math.factorial(s))) for s in range(M + 1)), WElement.zero(1, M))
    assert solve_j_series([0, 1], M).J == p * exp_k


@given(st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=3), min_size=1, max_size=4))
def test_j_boundary_condition(coeffs):
    assert solve_j_series(coeffs, 3).part(0) == _p(3)


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=4))
def test_ordering_1d_random_cubics(coeffs):
    assert check_ordering_1d(coeffs, 5).passed


@pytest.mark.parametrize("u", [Fraction(1, 4), Fraction(1, 2), Fraction(2)])
def test_ordering_1d_family_shadow(u):
    phi = [1, 2 * u - 1, -u * (1 - u)]  # (1 + up)(1 - (1-u)p)
    assert check_ordering_1d(phi, 8).passed


def test_wrong_j_is_detected():
    M = 4
    good = solve_j_series([0, 1], M)
    bad = normal_ordered_exp([good.Phi + (_k(M) ** 2).scale(Fraction(1, 7))], M)
    diff = brute_force_expand([0, 1], M) - bad
    assert diff.lowest_k_degree() == 2


@pytest.mark.parametrize("coeffs", [[1, 1], [0, 1, Fraction(-1, 2)], [Fraction(1, 3), 0, 0, 1]])
def test_conjugation_gives_j(coeffs):
    assert check_conjugation(coeffs, 5).passed


@pytest.mark.parametrize("family", ["L", "R"])
@pytest.mark.parametrize("u", [Fraction(1, 2), Fraction(1, 4)])
def test_ordering_nd(family, u):
    real = family_realization(family, u, 2, 4)
    rep, Q = check_ordering_nd(real, 4, family, u)
    assert rep.passed
    assert check_q_boundary(Q, u, 4, family=family).passed


def test_l_family_has_no_phase():
    _, Q = solve_jq_series(family_realization("L", Fraction(1, 3), 2, 4), 4)
    assert Q == WElement.zero(2, 4)


def test_ordering_nd_detects_wrong_phase():
    M = 4
    real = family_realization("R", Fraction(1, 2), 2, M)
    J, Q = solve_jq_series(real, M)
    from jordanian.ordexp import _exp

    n = 2
    kx = sum((WElement.k(mu, n, M) * real.xhat(mu) for mu in range(n)), WElement.zero(n, M))
    lhs = _exp(kx.scale(I))
    Phi = [J[a] - WElement.p(a, n, M) for a in range(n)]
    assert lhs == normal_ordered_exp(Phi, M, Q)
    assert lhs != normal_ordered_exp(Phi, M)


def test_g_series_matches_closed_form():
    u = Fraction(1, 4)
    coeffs = g_log_series(u, 10)
    p = StarParams(float(u), 1.0, (1.0, 0.0))
    for a in (0.05, 0.1, -0.08):
        approx = sum(float(c) * a**s for s, c in enumerate(coeffs))
        assert abs(approx - g_log(p, [a, 0.0])) <= 2 * abs(a) ** 11


def test_q_series_matches_closed_form_numerically():
    M = 6
    u = Fraction(1, 2)
    _, Q = solve_jq_series(family_realization("R", u, 2, M), M)
    p = StarParams(0.5, 1.0, (1.0, 0.0))
    k, q = (0.04, 0.01), (0.03, -0.02)
    total = 0j
    for (ke, xe, pe), c in Q.terms.items():
        total += complex(c) * math.prod(a**e for a, e in zip(k, ke)) * math.prod(b**e for b, e in zip(q, pe))
    # Q = i QLog
    assert abs(total - 1j * Q_log(p, k, q)) <= 1e-9
