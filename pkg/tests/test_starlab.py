import math
import re

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jordanian.starlab import (
    DomainError,
    J,
    K,
    K_inv,
    Packet,
    Q_log,
    StarParams,
    check_ode_oracle,
    check_star_properties,
    coproduct_consistency,
    g_log,
    G_log,
    kernel_table_csv,
    ode_oracle,
    star_kernel,
    wave_packet_star,
    star_with_plane_wave,
)

HALF = StarParams(0.5, 1.0, (1.0, 0.0))

params = st.builds(
    StarParams,
    st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0, 2.0]),
    st.sampled_from([1.0, 3.0, 10.0]),
    st.just((1.0, 0.0)),
)
small = st.floats(-0.2, 0.2)
momenta = st.tuples(small, small)


def test_amplitude_at_unit_momenta():
    pw = star_kernel(HALF, [1, 0], [1, 0], "R")
    assert abs(pw.amplitude - 0.8) <= 1e-12
    assert np.allclose(pw.dvec, [1.6, 0.0], rtol=0, atol=1e-15)
    # the L family carries no phase
    assert star_kernel(HALF, [1, 0], [1, 0], "L").gLog == 0.0


def test_amplitude_confirmed_by_ode():
    # gLog(k, q) = QLog(K^-1 k, q) - QLog(K^-1 k, 0) with QLog integrated numerically
    ki = K_inv(HALF, [1.0, 0.0])
    ode = ode_oracle(HALF, "Q", ki, [1.0, 0.0]) - ode_oracle(HALF, "g", ki)
    assert abs(math.exp(-ode) - 0.8) <= 1e-12


def test_undeformed_point():
    p = StarParams(0.0, 1.0, (1.0, 0.0))
    pw = star_kernel(p, [0.3, 0.2], [0.0, 0.0], "R")
    assert np.array_equal(pw.dvec, [0.3, 0.2])
    assert pw.amplitude == 1.0


@pytest.mark.parametrize(
    "u,k,q,text",
    [
        (0.5, [4.0, 0.0], [-4.0, 0.0], "1 + u(1-u)"),
        (0.0, [1.0, 0.0], [0.0, 0.0], "1 - (1-u)"),
        (2.0, [0.0, 0.0], [-0.5, 0.0], "1 + u(v.q)"),
    ],
)
def test_domain_boundary_raises(u, k, q, text):
    with pytest.raises(DomainError, match="requires " + re.escape(text)):
        star_kernel(StarParams(u, 1.0, (1.0, 0.0)), k, q, "R")


def test_inverse_domain_boundary_raises():
    with pytest.raises(DomainError):
        K_inv(StarParams(0.5, 1.0, (1.0, 0.0)), [2.0, 0.0])
    with pytest.raises(DomainError):
        K(StarParams(2.0, 1.0, (1.0, 0.0)), [math.log(2.0), 0.0])


@given(params, momenta)
def test_k_roundtrip(p, k):
    assert np.allclose(K_inv(p, K(p, k)), k, rtol=1e-12, atol=1e-15)


@given(params, momenta, momenta)
def test_boundary_values(p, k, q):
    z = np.zeros(2)
    assert np.allclose(J(p, z, q), q, rtol=1e-14, atol=0)
    assert np.allclose(J(p, k, z), K(p, k), rtol=1e-14, atol=0)
    assert abs(Q_log(p, k, z) - g_log(p, k)) <= 1e-14 * max(1.0, abs(g_log(p, k))) + 1e-17
    assert Q_log(p, z, q) == 0.0


@given(params, momenta, momenta)
def test_phase_matches_q_representation(p, k, q):
    pw = star_kernel(p, k, q, "R")
    assert abs(pw.gLog - G_log(p, k, q)) <= 1e-12 * max(abs(pw.gLog), 1e-3)


def test_small_argument_branches_are_continuous():
    p = StarParams(0.25, 1.0, (1.0, 0.0))
    # compare the smooth profiles K/k, K^-1/k and gLog/k^2 on both sides of the switch
    for f in (lambda a: K(p, [a, 0.0])[0] / a, lambda a: K_inv(p, [a, 0.0])[0] / a, lambda a: g_log(p, [a, 0.0]) / a**2):
        below, above = f(0.9999999e-4), f(1.0000001e-4)
        assert abs(below - above) <= 1e-10 * abs(above)


@pytest.mark.parametrize("u", [0.0, 0.25, 0.5, 0.75, 1.0, 2.0])
def test_ode_oracle(u):
    reps = check_ode_oracle(StarParams(u, 1.0, (1.0, 0.0)), samples=100, seed=42)
    assert all(r.passed for r in reps), [r.line() for r in reps if not r.passed]


@pytest.mark.parametrize("u", [0.25, 0.5, 2.0])
def test_star_properties(u):
    reps = check_star_properties(StarParams(u, 1.0, (1.0, 0.0)), samples=100, seed=7)
    assert all(r.passed for r in reps), [r.line() for r in reps if not r.passed]


def test_sampling_is_seeded():
    a = check_ode_oracle(HALF, samples=5, seed=1)
    b = check_ode_oracle(HALF, samples=5, seed=1)
    assert [r.detail for r in a] == [r.detail for r in b]


def test_tilted_direction_ode():
    p = StarParams(0.25, 2.0, (1.0, 1.0))
    assert all(r.passed for r in check_ode_oracle(p, samples=20, seed=3))


@pytest.mark.parametrize("family", ["L", "R"])
@pytest.mark.parametrize("N", [4, 6])
def test_coproduct_consistency(family, N):
    rep = coproduct_consistency(StarParams(0.25, 4.0, (1.0, 0.0)), family, N, [0.7, 0.3], [-0.4, 0.5])
    assert rep.passed, rep.detail


def test_wave_packets_commute_in_the_classical_limit():
    p = StarParams(0.5, 1e6, (1.0, 0.0))
    f, g = Packet((0.3, -0.2), (0.5, 0.4)), Packet((-0.1, 0.4), (0.3, 0.6))
    x = [0.7, -1.1]
    assert abs(wave_packet_star(p, f, g, x) - f(x) * g(x)) < 1e-6


def test_narrow_packet_limit():
    p = StarParams(0.5, 3.0, (1.0, 0.0))
    f = Packet((0.3, -0.2), (0.5, 0.4))
    narrow = Packet((0.2, 0.1), (1e-4, 1e-4))
    x = [2.0, 1.0]
    assert abs(wave_packet_star(p, f, narrow, x) - star_with_plane_wave(p, f, (0.2, 0.1), x)) < 1e-6


def test_tail_mass_guard():
    p = StarParams(0.5, 1.0, (1.0, 0.0))
    wide = Packet((0.0, 0.0), (2.0, 2.0))
    with pytest.raises(DomainError, match="tail mass"):
        wave_packet_star(p, wide, wide, [0.0, 0.0])


def test_csv_table():
    text = kernel_table_csv(HALF, [([1.0, 0.0], [1.0, 0.0])])
    header, row = text.strip().splitlines()
    assert header == "k,q,D,amplitude"
    assert row.endswith(",0.80000000000000004")


def test_bad_params():
    with pytest.raises(ValueError):
        StarParams(0.5, 0.0)
    with pytest.raises(ValueError):
        star_kernel(HALF, [1, 0], [1, 0], "LR")
