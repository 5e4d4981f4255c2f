"""Independent oracles shared by the test modules.

Both rewriting oracles normal-order words letter by letter using only the
defining commutation relations, without the closed product formulas the
package uses.
"""

from fractions import Fraction

import pytest
from hypothesis import settings

from jordanian.ncalg import Config

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

# letters: ("x", mu), ("P", mu), ("D", 0); ranks give the normal order x < P < D
_RANK = {"x": 0, "P": 1, "D": 2}


def _swap(a, b):
    """Rewrite ``b a`` (out of order) as a list of (coefficient, word) pairs."""
    (ka, ia), (kb, ib) = a, b
    # b a with b ranked after a (or same kind with larger index)
    if kb == ka:
        return [(1, (a, b))]  # x's commute, P's commute
    if (kb, ka) == ("P", "x"):
        # P_mu x_nu = x_nu P_mu - i delta
        out = [(1, (a, b))]
        if ia == ib:
            out.append((-1j, ()))
        return out
    if (kb, ka) == ("D", "x"):
        return [(1, (a, b)), (1, (a,))]  # D x = x D + x
    if (kb, ka) == ("D", "P"):
        return [(1, (a, b)), (-1, (a,))]  # D P = P D - P
    raise AssertionError((a, b))


def _key(letter):
    return (_RANK[letter[0]], letter[1])


def rewrite(word, coef=1, acc=None):
    """Normal-order a word of letters into ``{sorted word: complex coefficient}``."""
    acc = {} if acc is None else acc
    word = tuple(word)
    for j in range(len(word) - 1):
        if _key(word[j]) > _key(word[j + 1]):
            for c, mid in _swap(word[j + 1], word[j]):
                rewrite(word[:j] + mid + word[j + 2 :], coef * c, acc)
            return acc
    acc[word] = acc.get(word, 0) + coef
    if acc[word] == 0:
        del acc[word]
    return acc


def word_to_ug_mono(word, n):
    p = [0] * n
    d = 0
    for kind, idx in word:
        if kind == "P":
            p[idx] += 1
        else:
            d += 1
    return tuple(p) + (d,)


def word_to_weyl_mono(word, n):
    x = [0] * n
    p = [0] * n
    d = 0
    for kind, idx in word:
        if kind == "x":
            x[idx] += 1
        elif kind == "P":
            p[idx] += 1
        else:
            d += 1
    return tuple(x) + tuple(p) + (d,)


def ug_word(mono, n):
    """The normal-ordered word of a U(g) monomial."""
    out = []
    for mu in range(n):
        out += [("P", mu)] * mono[mu]
    out += [("D", 0)] * mono[n]
    return out


def weyl_word(mono, n):
    out = []
    for mu in range(n):
        out += [("x", mu)] * mono[mu]
    for mu in range(n):
        out += [("P", mu)] * mono[n + mu]
    out += [("D", 0)] * mono[2 * n]
    return out


def as_complex_terms(series):
    """``{(kappa_pow, monos): complex}`` view of a series."""
    return {key: complex(c) for key, c in series.terms.items()}


@pytest.fixture(scope="session")
def cfg2():
    return Config(n=2, N=6, triple_order=4)


@pytest.fixture(scope="session")
def cfg2_low():
    return Config(n=2, N=4, triple_order=3)


TEST_U = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(2)]
