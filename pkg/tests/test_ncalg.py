from fractions import Fraction

import pytest
from conftest import rewrite, ug_word, word_to_ug_mono
from hypothesis import given
from hypothesis import strategies as st

from jordanian.ncalg import (
    AlgebraError,
    Config,
    GaussianRational,
    I,
    NonTerminatingSeries,
    Series,
    antipode,
    as_scalar,
    conjugate,
    coproduct,
    counit,
    format_scalar,
    mu,
    parse_scalar,
)

CFG = Config(n=2, N=4, triple_order=3)

monos = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
coefs = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def series(draw, max_terms=3, min_order=0):
    out = CFG.zero()
    for _ in range(draw(st.integers(1, max_terms))):
        m = draw(monos)
        out = out + CFG.mono(m[:2], m[2], draw(coefs), draw(st.integers(min_order, 2)))
    return out


def test_product_matches_word_rewriting():
    for a in [(1, 0, 2), (0, 1, 3), (2, 1, 1)]:
        for b in [(1, 1, 0), (0, 2, 1), (3, 0, 2)]:
            got = CFG.mono(a[:2], a[2]) * CFG.mono(b[:2], b[2])
            expected = rewrite(ug_word(a, 2) + ug_word(b, 2))
            assert {mons[0]: complex(c) for (_, mons), c in got.terms.items()} == {
                word_to_ug_mono(w, 2): c for w, c in expected.items()
            }


def test_dilatation_past_momentum():
    P0, D = CFG.P(0), CFG.D()
    assert D * P0 == P0 * D - P0
    # D^2 P^2 = P^2 (D - 2)^2
    assert D * D * P0 * P0 == P0 * P0 * (D - CFG.scalar(2)) * (D - CFG.scalar(2))


@given(series(), series(), series())
def test_product_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(series(), series())
def test_coproduct_is_multiplicative(a, b):
    assert coproduct(a * b) == coproduct(a) * coproduct(b)


@given(series(), series())
def test_antipode_reverses_products(a, b):
    assert antipode(a * b) == antipode(b) * antipode(a)


@given(series())
def test_antipode_axiom_undeformed(a):
    assert mu(antipode(coproduct(a), 0)) == _eps(a)
    assert mu(antipode(coproduct(a), 1)) == _eps(a)


def _eps(a):
    out = CFG.zero()
    for (m, (mono,)), c in a.terms.items():
        if not any(mono):
            out = out + CFG.scalar(c, kappa_pow=m)
    return out


@given(series())
def test_coproduct_counit(a):
    d = coproduct(a)
    assert counit(d, 0) == a
    assert counit(d, 1) == a


@given(series())
def test_conjugation_is_involutive_antihomomorphism(a):
    assert conjugate(conjugate(a)) == a


@given(series(), series())
def test_conjugation_reverses_products(a, b):
    assert conjugate(a * b) == conjugate(b) * conjugate(a)


@given(series(min_order=1))
def test_exp_log_roundtrip(x):
    assert (x.exp() - CFG.one()).log1p() == x


@given(series(min_order=1))
def test_inverse_and_sqrt(x):
    one = CFG.one()
    y = one + x
    assert y * y.inverse() == one
    assert y.inverse() * y == one
    r = y.sqrt()
    assert r * r == y


def test_inverse_needs_invertible_leading_part():
    with pytest.raises(AlgebraError):
        CFG.D().inverse()


def test_exp_of_order_zero_exponent_is_rejected():
    with pytest.raises((NonTerminatingSeries, AlgebraError)):
        CFG.D().exp()


@given(series())
def test_text_roundtrip(a):
    assert CFG.from_text(a.to_text(), 1) == a


def test_text_roundtrip_two_legs():
    t = coproduct(CFG.D() * CFG.P(1)) + CFG.P(0).tensor(CFG.D()).scale(I, 2)
    assert CFG.from_text(t.to_text(), 2) == t


def test_truncation_drops_high_orders():
    x = CFG.P(0, 1) + CFG.P(1, 3)
    assert x.truncate(2) == CFG.P(0, 1).truncate(2)
    assert (x * x).lowest_order() == 2


def test_flip_and_kappa_flip():
    t = CFG.P(0).tensor(CFG.D()).scale(1, 1)
    assert t.flip() == CFG.D().tensor(CFG.P(0)).scale(1, 1)
    assert t.kappa_flip() == -t


def test_gaussian_scalars():
    z = GaussianRational(1, 2)
    assert z * z.conjugate() == 5
    assert as_scalar(GaussianRational(3, 0)) == 3
    assert parse_scalar(format_scalar(GaussianRational(Fraction(1, 3), Fraction(-2, 5)))) == GaussianRational(
        Fraction(1, 3), Fraction(-2, 5)
    )


def test_config_rejects_bad_input():
    with pytest.raises(ValueError):
        Config(n=2, N=0)
    with pytest.raises(ValueError):
        Config(n=2, N=3, triple_order=4)
    with pytest.raises(ValueError):
        Config(n=2, v=(1, 1, 0))
    with pytest.raises(ValueError):
        Config(n=2, v=(2, 0))


def test_mismatched_legs_raise():
    with pytest.raises(AlgebraError):
        CFG.P(0) + CFG.P(0).tensor(CFG.one())


def test_series_is_immutable_under_arithmetic():
    a = CFG.P(0)
    before = dict(a.terms)
    _ = a * a + a
    assert a.terms == before
    assert isinstance(a, Series)
