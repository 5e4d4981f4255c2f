"""The enveloping algebra of {P_mu, D} with [P_mu, D] = P_mu, and its tensor powers.

Monomials are normal ordered as ``P_0^a_0 ... P_{n-1}^a_{n-1} D^b`` and stored
as the tuple ``(a_0, ..., a_{n-1}, b)``. Moving D to the right uses the closed
form ``D^b P^c = P^c (D - |c|)^b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .scalars import as_scalar, parse_rational
from .series import GradeMismatch, LegAlgebra, Series

__all__ = [
    "UAlgebra",
    "Config",
    "coproduct",
    "counit",
    "antipode",
    "conjugate",
    "extend_to_triple",
    "eval_momentum",
    "mu",
]


class UAlgebra(LegAlgebra):
    """Leg algebra of U(g) for g = {P_0..P_{n-1}, D}."""

    def __init__(self, n: int):
        super().__init__()
        if n < 1:
            raise ValueError("dimension must be >= 1")
        self.n = n
        self.one = (0,) * (n + 1)

    @staticmethod
    @lru_cache(maxsize=None)
    def get(n: int) -> "UAlgebra":
        return UAlgebra(n)

    def _mul_monomials(self, a, b):
        da, db = a[-1], b[-1]
        pc = b[:-1]
        s = sum(pc)
        p = tuple(x + y for x, y in zip(a[:-1], pc))
        if da == 0 or s == 0:
            return ((p + (da + db,), 1),)
        # (D - s)^da D^db, expanded binomially
        return tuple((p + (j + db,), comb(da, j) * (-s) ** (da - j)) for j in range(da + 1))

    def format_monomial(self, m):
        ps = " ".join(f"P{j}^{e}" for j, e in enumerate(m[:-1]))
        return f"{ps} D^{m[-1]}"

    def parse_monomial(self, text):
        exps = [0] * (self.n + 1)
        for tok in text.split():
            mt = re.fullmatch(r"(P(\d+)|D)(?:\^(\d+))?", tok)
            if not mt:
                raise ValueError(f"bad monomial factor {tok!r}")
            e = int(mt.group(3) or 1)
            if mt.group(1) == "D":
                exps[-1] += e
            else:
                j = int(mt.group(2))
                if j >= self.n:
                    raise ValueError(f"P{j} out of range for n={self.n}")
                exps[j] += e
        return tuple(exps)

    def monomial_degree(self, m):
        return sum(m)


@dataclass(frozen=True)
class Config:
    """Dimension, truncation order and deformation direction ``v``.

    ``signature`` is only used to classify ``v^2``; contractions such as
    ``v.k`` and ``v.P`` pair an upper index with a lower one and need no
    metric.
    """

    n: int = 2
    N: int = 6
    v: tuple = None
    signature: tuple = None
    triple_order: int = 4

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("spacetime dimension n must be >= 1")
        if self.N < 1:
            raise ValueError("truncation order N must be >= 1")
        if self.triple_order < 1 or self.triple_order > self.N:
            raise ValueError("triple order must lie in [1, N]")
        v = self.v if self.v is not None else (1,) + (0,) * (self.n - 1)
        v = tuple(as_scalar(parse_rational(x) if isinstance(x, str) else x) for x in v)
        if len(v) != self.n:
            raise ValueError(f"v must have {self.n} components")
        sig = self.signature if self.signature is not None else (-1,) + (1,) * (self.n - 1)
        if len(sig) != self.n or any(s not in (-1, 1) for s in sig):
            raise ValueError("signature must be a tuple of +-1 of length n")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "signature", tuple(sig))
        if self.v_squared not in (-1, 0, 1):
            raise ValueError(f"v^2 = {self.v_squared} is not in {{-1, 0, 1}}")

    @property
    def v_squared(self):
        return sum(s * x * x for s, x in zip(self.signature, self.v))

    @property
    def algebra(self) -> UAlgebra:
        return UAlgebra.get(self.n)

    def with_order(self, N: int, triple_order: int | None = None) -> "Config":
        t = min(self.triple_order, N) if triple_order is None else triple_order
        return Config(self.n, N, self.v, self.signature, t)

    # -- element constructors -------------------------------------------
    def one(self, legs: int = 1) -> Series:
        return Series.one(self.algebra, legs, self.N)

    def zero(self, legs: int = 1) -> Series:
        return Series.zero(self.algebra, legs, self.N)

    def scalar(self, c, legs: int = 1, kappa_pow: int = 0) -> Series:
        return Series.scalar(self.algebra, legs, self.N, c, kappa_pow)

    def mono(self, p: Sequence[int] = None, d: int = 0, c=1, kappa_pow: int = 0) -> Series:
        p = tuple(p) if p is not None else (0,) * self.n
        return Series.monomial(self.algebra, [p + (d,)], self.N, c, kappa_pow)

    def P(self, mu: int, kappa_pow: int = 0, c=1) -> Series:
        p = [0] * self.n
        p[mu] = 1
        return self.mono(p, 0, c, kappa_pow)

    def D(self, kappa_pow: int = 0, c=1) -> Series:
        return self.mono(None, 1, c, kappa_pow)

    def Pv(self, kappa_pow: int = 0, c=1) -> Series:
        """The distinguished momentum ``P = v^alpha P_alpha``."""
        out = self.zero()
        for mu, vm in enumerate(self.v):
            if vm:
                out = out + self.P(mu, kappa_pow, c * vm)
        return out

    def generators(self):
        """``[(name, element)]`` for P_0..P_{n-1} and D."""
        return [(f"P{mu}", self.P(mu)) for mu in range(self.n)] + [("D", self.D())]

    def tensor(self, *factors: Series) -> Series:
        out = factors[0]
        for f in factors[1:]:
            out = out.tensor(f)
        return out

    def from_text(self, text: str, legs: int) -> Series:
        return Series.from_text(self.algebra, text, legs, self.N)


# ---------------------------------------------------------------- Hopf maps
@lru_cache(maxsize=None)
def _coproduct_mono(m):
    p, b = m[:-1], m[-1]
    out = []
    ranges = [range(a + 1) for a in p]

    def rec(i, left, k):
        if i == len(p):
            for l in range(b + 1):
                out.append(((tuple(left) + (l,), tuple(a - x for a, x in zip(p, left)) + (b - l,)), k * comb(b, l)))
            return
        for j in ranges[i]:
            rec(i + 1, left + [j], k * comb(p[i], j))

    rec(0, [], 1)
    return tuple(out)


def coproduct(x: Series, leg: int = 0) -> Series:
    """Primitive coproduct on one leg (``Delta (x) id`` style), homomorphically extended.

    ``Delta(P^a D^b) = sum C(a,j) C(b,l) P^j D^l ⊗ P^(a-j) D^(b-l)``, already in
    normal order because the legs commute.
    """
    return x.map_leg(leg, _coproduct_mono, width=2)


def counit(x: Series, leg: int = 0) -> Series:
    """Counit on one leg; for a one-leg input the result is a 0-leg (scalar) series."""
    one = x.algebra.one
    return x.map_leg(leg, lambda m: (((), 1),) if m == one else (), width=0)


@lru_cache(maxsize=None)
def _antipode_mono(m):
    # S(P^a D^b) = (-D)^b (-P)^a = (-1)^(|a|+b) P^a (D - |a|)^b
    p, b = m[:-1], m[-1]
    s = sum(p)
    sign = (-1) ** (s + b)
    return tuple(((p + (j,),), sign * comb(b, j) * (-s) ** (b - j)) for j in range(b + 1))


@lru_cache(maxsize=None)
def _conjugate_mono(m):
    # (P^a D^b)* = (D*)^b (P*)^a = (-D)^b P^a = (-1)^b P^a (D - |a|)^b
    p, b = m[:-1], m[-1]
    s = sum(p)
    sign = (-1) ** b
    return tuple((p + (j,), sign * comb(b, j) * (-s) ** (b - j)) for j in range(b + 1))


def antipode(x: Series, leg: int | None = None) -> Series:
    """Undeformed antipode S(P) = -P, S(D) = -D as an anti-homomorphism.

    With ``leg=None`` S is applied on every leg (``S ⊗ ... ⊗ S``).
    """
    if leg is not None:
        return x.map_leg(leg, _antipode_mono, width=1)
    out = x
    for j in range(x.legs):
        out = out.map_leg(j, _antipode_mono, width=1)
    return out


def conjugate(x: Series, shift: int = 0) -> Series:
    """The *-operation P* = P, D* = -D - shift, i* = -i, on every leg (unflipped).

    ``shift=0`` is the abstract conjugation; ``shift=n`` gives the variant
    compatible with the differential-operator action on functions.
    """
    if shift == 0:
        return x.map_legs(_conjugate_mono, antilinear=True)

    def fn(m):
        p, b = m[:-1], m[-1]
        s = sum(p)
        # (-D - shift)^b P^a = P^a (-(D - s) - shift)^b = P^a sum C(b,j) (-(D-s))^j (-shift)^(b-j)
        acc = {}
        for j in range(b + 1):
            cj = comb(b, j) * (-shift) ** (b - j) * (-1) ** j
            for i in range(j + 1):
                key = p + (i,)
                acc[key] = acc.get(key, 0) + cj * comb(j, i) * (-s) ** (j - i)
        return tuple((k, c) for k, c in acc.items() if c)

    return x.map_legs(fn, antilinear=True)


def mu(t: Series) -> Series:
    """Multiplication map: contract all legs into one."""
    return t.contract()


def extend_to_triple(t: Series, mode: str) -> Series:
    """Lift a two-leg tensor into the triple tensor power.

    ``mode`` is one of ``"D⊗id"``, ``"id⊗D"``, ``"t⊗1"``, ``"1⊗t"`` (ASCII
    spellings ``"delta_id"``, ``"id_delta"``, ``"t_1"``, ``"1_t"`` also work).
    """
    if t.legs != 2:
        raise GradeMismatch("extend_to_triple needs a two-leg tensor")
    mode = _MODES.get(mode, mode)
    if mode == "delta_id":
        return coproduct(t, 0)
    if mode == "id_delta":
        return coproduct(t, 1)
    if mode == "t_1":
        return t.embed(3, (0, 1))
    if mode == "1_t":
        return t.embed(3, (1, 2))
    raise ValueError(f"unknown extension mode {mode!r}")


_MODES = {"Δ⊗id": "delta_id", "D⊗id": "delta_id", "id⊗Δ": "id_delta", "id⊗D": "id_delta", "t⊗1": "t_1", "1⊗t": "1_t"}


def eval_momentum(t: Series, k: Sequence[float], q: Sequence[float] | None = None, kappa: float = 1.0) -> complex | float:
    """Numerically evaluate a D-free series at P -> k (leg 0), P -> q (leg 1).

    ``1/kappa`` is substituted numerically. Any D in any leg is an error.
    """
    legs_vals = [k, q]
    total = 0j
    for (m, mons), c in t.terms.items():
        val = complex(c) * (1.0 / kappa) ** m
        for j, mono in enumerate(mons):
            if mono[-1]:
                raise ValueError("eval_momentum: series contains D; only momentum series can be evaluated")
            vec = legs_vals[j]
            if vec is None:
                raise ValueError("eval_momentum: missing momentum for leg %d" % j)
            for a, x in zip(mono[:-1], vec):
                if a:
                    val *= float(x) ** a
        total += val
    return total.real if total.imag == 0 else total

