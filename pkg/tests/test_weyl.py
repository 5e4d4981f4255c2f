from fractions import Fraction

import pytest
from conftest import rewrite, weyl_word, word_to_weyl_mono
from hypothesis import given
from hypothesis import strategies as st

from jordanian.hopf import build_twist
from jordanian.ncalg import Config
from jordanian.ncalg.scalars import I
from jordanian.weyl import (
    NonStabilizingRealization,
    WeylSpace,
    check_chi_difference,
    check_commutators,
    check_dilatation_substitution,
    check_jacobi,
    check_realization,
    closed_form_xhat,
    substitute_dilatation,
    xhat_from_twist,
)

CFG = Config(n=2, N=4, triple_order=3)
W = WeylSpace(CFG)

wmonos = st.tuples(*([st.integers(0, 2)] * 4), st.integers(0, 2))


@given(wmonos, wmonos)
def test_product_matches_word_rewriting(a, b):
    got = W.mono(a[:2], a[2:4], a[4]) * W.mono(b[:2], b[2:4], b[4])
    expected = rewrite(weyl_word(a, 2) + weyl_word(b, 2))
    assert {mons[0]: complex(c) for (_, mons), c in got.terms.items()} == {
        word_to_weyl_mono(w, 2): c for w, c in expected.items()
    }


@given(wmonos, wmonos, wmonos)
def test_product_associative(a, b, c):
    x, y, z = (W.mono(m[:2], m[2:4], m[4]) for m in (a, b, c))
    assert (x * y) * z == x * (y * z)


def test_basic_relations():
    x0, P0, D = W.x(0), W.P(0), W.D()
    assert P0 * x0 == x0 * P0 - W.one().scale(I)
    assert D * x0 == x0 * D + x0
    assert D * P0 == P0 * D - P0
    assert W.P(1) * x0 == x0 * W.P(1)


@pytest.mark.parametrize("family,u", [("F0", None), ("F1", None), ("L", Fraction(1, 4)), ("R", Fraction(1, 2)), ("R", Fraction(2))])
def test_realization_matches_closed_form(family, u):
    assert check_realization(build_twist(family, u, CFG)).passed


def test_realization_is_linear_in_order_zero_coordinate():
    xh = xhat_from_twist(build_twist("F0", cfg=CFG), 1)
    assert xh == closed_form_xhat("F0", None, 1, CFG)
    # with v = (1, 0) the transverse coordinate is undeformed
    assert xh == W.x(1)


def test_custom_twist_cannot_be_stabilized():
    from jordanian.hopf import Twist

    F = build_twist("L", Fraction(1, 4), CFG)
    custom = Twist(F.element, F.inverse, "custom", CFG, None)
    with pytest.raises(NonStabilizingRealization):
        xhat_from_twist(custom, 0)


@pytest.mark.parametrize("family,u", [("L", Fraction(1, 4)), ("R", Fraction(3, 4)), ("R", Fraction(2))])
def test_commutators_and_jacobi(family, u):
    F = build_twist(family, u, CFG)
    xh = [xhat_from_twist(F, mu, stabilize=False) for mu in range(2)]
    reps = check_commutators(xh, u, CFG, family) + [check_jacobi(xh, CFG, family, u)]
    assert all(r.passed for r in reps)


def test_wrong_parameter_breaks_heisenberg():
    F = build_twist("L", Fraction(1, 4), CFG)
    xh = [xhat_from_twist(F, mu, stabilize=False) for mu in range(2)]
    mink, heis = check_commutators(xh, Fraction(1, 2), CFG, "L")
    assert mink.passed
    assert not heis.passed and heis.first_residual_order == 1


@pytest.mark.parametrize("u", [Fraction(1, 4), Fraction(1, 2), Fraction(2)])
def test_chi_difference(u):
    assert check_chi_difference(u, CFG).passed


@pytest.mark.parametrize("family", ["L", "R"])
def test_dilatation_substitution(family):
    assert check_dilatation_substitution(family, Fraction(1, 3), CFG).passed


def test_substitution_is_a_homomorphism():
    a, b = W.D() * W.P(0), W.x(0) * W.D()
    assert substitute_dilatation(a * b, CFG) == substitute_dilatation(a, CFG) * substitute_dilatation(b, CFG)


def test_tilted_direction():
    cfg = Config(n=2, N=4, triple_order=3, v=(1, 1), signature=(-1, 1))
    F = build_twist("R", Fraction(1, 4), cfg)
    assert check_realization(F).passed
