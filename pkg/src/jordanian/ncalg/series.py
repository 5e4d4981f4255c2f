"""Truncated formal series over tensor powers of a noncommutative algebra.

A :class:`Series` is a finite sum of terms ``c * kappa^-m * (w_1 ⊗ ... ⊗ w_L)``
where every ``w_j`` is a normal-ordered monomial of a *leg algebra*. The leg
algebra only has to know how to multiply two of its monomials and how to
print/parse them; everything else (tensor products, exponentials, leg maps,
truncation) lives here.

All series are immutable once built. Terms with ``m > order`` are dropped on
construction, so closure under truncation is automatic.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product as _cartesian
from typing import Callable, Iterable

from gmpy2 import mpq

from .scalars import as_scalar, conj, format_scalar, parse_scalar

__all__ = [
    "LegAlgebra",
    "Series",
    "AlgebraError",
    "GradeMismatch",
    "OrderMismatch",
    "NonTerminatingSeries",
]


class AlgebraError(ValueError):
    pass


class GradeMismatch(AlgebraError):
    """Operands live in different tensor powers or different algebras."""


class OrderMismatch(AlgebraError):
    """Operands were built with different truncation orders."""


class NonTerminatingSeries(AlgebraError):
    """An analytic function was applied to an argument with a kappa^0 part."""


class LegAlgebra:
    """Base class for the algebra a single tensor leg lives in.

    Subclasses set ``one`` (the unit monomial) and implement
    :meth:`_mul_monomials`, which returns ``((monomial, coeff), ...)`` for the
    normal-ordered product. Results are memoised per instance.
    """

    one: tuple = ()

    def __init__(self):
        self._cache: dict = {}

    def mul(self, a: tuple, b: tuple):
        key = (a, b)
        hit = self._cache.get(key)
        if hit is None:
            hit = tuple((m, c) for m, c in self._mul_monomials(a, b) if c)
            self._cache[key] = hit
        return hit

    def _mul_monomials(self, a, b):  # pragma: no cover - abstract
        raise NotImplementedError

    def format_monomial(self, m: tuple) -> str:  # pragma: no cover - abstract
        raise NotImplementedError

    def parse_monomial(self, text: str) -> tuple:  # pragma: no cover - abstract
        raise NotImplementedError

    def monomial_degree(self, m: tuple) -> int:
        """Total degree, used only for sorting output."""
        return sum(m)


def _add_into(acc: dict, key, c):
    old = acc.get(key)
    if old is None:
        acc[key] = c
    else:
        acc[key] = old + c


def _clean(acc: dict) -> dict:
    return {k: v for k, v in acc.items() if v}


class Series:
    """Sparse truncated series with ``legs`` tensor factors.

    ``terms`` maps ``(kappa_pow, (mono_1, ..., mono_L))`` to an exact scalar.
    """

    __slots__ = ("algebra", "legs", "order", "terms", "_by_order")

    def __init__(self, algebra: LegAlgebra, legs: int, order: int, terms=None, *, _trusted=False):
        self.algebra = algebra
        self.legs = legs
        self.order = order
        if terms is None:
            terms = {}
        elif not _trusted:
            clean = {}
            for (m, mons), c in dict(terms).items():
                if len(mons) != legs:
                    raise GradeMismatch(f"term {mons} does not have {legs} legs")
                if m > order or m < 0:
                    continue
                c = as_scalar(c)
                if c:
                    _add_into(clean, (m, tuple(mons)), c)
            terms = _clean(clean)
        self.terms = terms
        self._by_order = None

    # ------------------------------------------------------------------ basics
    @classmethod
    def zero(cls, algebra, legs, order):
        return cls(algebra, legs, order, {}, _trusted=True)

    @classmethod
    def one(cls, algebra, legs, order):
        return cls.scalar(algebra, legs, order, 1)

    @classmethod
    def scalar(cls, algebra, legs, order, c, kappa_pow: int = 0):
        c = as_scalar(c)
        if not c or kappa_pow > order:
            return cls.zero(algebra, legs, order)
        return cls(algebra, legs, order, {(kappa_pow, (algebra.one,) * legs): c}, _trusted=True)

    @classmethod
    def monomial(cls, algebra, mons, order, c=1, kappa_pow: int = 0):
        mons = tuple(mons)
        return cls(algebra, len(mons), order, {(kappa_pow, mons): c})

    def _new(self, terms, legs=None, order=None):
        return Series(
            self.algebra,
            self.legs if legs is None else legs,
            self.order if order is None else order,
            terms,
            _trusted=True,
        )

    def _check(self, other: "Series"):
        if not isinstance(other, Series):
            raise GradeMismatch(f"cannot combine Series with {type(other).__name__}")
        if other.algebra is not self.algebra and type(other.algebra) is not type(self.algebra):
            raise GradeMismatch("operands live in different algebras")
        if other.legs != self.legs:
            raise GradeMismatch(f"tensor grade mismatch: {self.legs} vs {other.legs}")
        if other.order != self.order:
            raise OrderMismatch(f"truncation order mismatch: {self.order} vs {other.order}")

    def _coerce(self, other):
        if isinstance(other, Series):
            self._check(other)
            return other
        return Series.scalar(self.algebra, self.legs, self.order, other)

    def by_order(self):
        if self._by_order is None:
            groups = defaultdict(list)
            for (m, mons), c in self.terms.items():
                groups[m].append((mons, c))
            self._by_order = dict(groups)
        return self._by_order

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def lowest_order(self):
        """Smallest kappa power carrying a nonzero term (``None`` for zero)."""
        return min((m for m, _ in self.terms), default=None)

    def part(self, kappa_pow: int) -> "Series":
        """Terms of exactly one kappa power."""
        return self._new({k: c for k, c in self.terms.items() if k[0] == kappa_pow})

    def coefficient(self, mons, kappa_pow: int = 0):
        return self.terms.get((kappa_pow, tuple(mons)), mpq(0))

    def min_kappa_pow(self):
        return self.lowest_order()

    def truncate(self, order: int) -> "Series":
        """Re-truncate at ``order`` (may only lower the order meaningfully)."""
        return self._new({k: c for k, c in self.terms.items() if k[0] <= order}, order=order)

    def with_order(self, order: int) -> "Series":
        return self.truncate(order)

    # -------------------------------------------------------------- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return self._new(_clean(acc))

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c, kappa_shift: int = 0) -> "Series":
        """Multiply by the scalar ``c * kappa^-kappa_shift``."""
        c = as_scalar(c)
        if not c:
            return self._new({})
        return self._new(
            {
                (m + kappa_shift, mons): v * c
                for (m, mons), v in self.terms.items()
                if m + kappa_shift <= self.order
            }
        )

    def __mul__(self, other):
        if isinstance(other, Series):
            self._check(other)
            return self._product(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Series):
            raise TypeError("divide by a Series via analytic('inv1p', ...)")
        return self.scale(1 / as_scalar(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers need analytic('inv1p', ...)")
        out = Series.one(self.algebra, self.legs, self.order)
        for _ in range(k):
            out = out * self
        return out

    def _product(self, other: "Series") -> "Series":
        N = self.order
        mul = self.algebra.mul
        right = other.by_order()
        acc: dict = {}
        legs = self.legs
        for (m1, mons1), c1 in self.terms.items():
            for m2 in range(0, N - m1 + 1):
                bucket = right.get(m2)
                if not bucket:
                    continue
                m = m1 + m2
                for mons2, c2 in bucket:
                    c = c1 * c2
                    if legs == 1:
                        for mono, k in mul(mons1[0], mons2[0]):
                            key = (m, (mono,))
                            v = c if k == 1 else c * k
                            old = acc.get(key)
                            acc[key] = v if old is None else old + v
                    elif legs == 0:
                        key = (m, ())
                        old = acc.get(key)
                        acc[key] = c if old is None else old + c
                    else:
                        expansions = [mul(a, b) for a, b in zip(mons1, mons2)]
                        if all(len(e) == 1 for e in expansions):
                            k = 1
                            monos = []
                            for e in expansions:
                                monos.append(e[0][0])
                                k = k * e[0][1] if e[0][1] != 1 else k
                            key = (m, tuple(monos))
                            v = c if k == 1 else c * k
                            old = acc.get(key)
                            acc[key] = v if old is None else old + v
                            continue
                        for combo in _cartesian(*expansions):
                            k = 1
                            for _, kk in combo:
                                if kk != 1:
                                    k = kk * k
                            key = (m, tuple(mono for mono, _ in combo))
                            v = c if k == 1 else c * k
                            old = acc.get(key)
                            acc[key] = v if old is None else old + v
        return self._new(_clean(acc))

    def commutator(self, other: "Series") -> "Series":
        return self * other - other * self

    # -------------------------------------------------------------- equality
    def __eq__(self, other):
        if isinstance(other, Series):
            if other.legs != self.legs:
                return False
            return self.terms == other.terms
        try:
            other = Series.scalar(self.algebra, self.legs, self.order, other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    # -------------------------------------------------------------- structure
    def conjugate_coefficients(self) -> "Series":
        return self._new({k: conj(c) for k, c in self.terms.items()})

    def kappa_flip(self) -> "Series":
        """Send ``kappa -> -kappa``: negate every odd-order coefficient."""
        return self._new({(m, mons): (-c if m % 2 else c) for (m, mons), c in self.terms.items()})

    def permute(self, perm) -> "Series":
        """Reorder legs: output leg ``j`` is input leg ``perm[j]``."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.legs)):
            raise GradeMismatch(f"{perm} is not a permutation of {self.legs} legs")
        return self._new({(m, tuple(mons[p] for p in perm)): c for (m, mons), c in self.terms.items()})

    def flip(self) -> "Series":
        if self.legs != 2:
            raise GradeMismatch("flip needs a two-leg tensor")
        return self.permute((1, 0))

    def map_leg(self, index: int, fn: Callable[[tuple], Iterable], width: int = 1, *, antilinear: bool = False) -> "Series":
        """Apply a linear map to one leg.

        ``fn(monomial)`` returns an iterable of ``(monomials, coeff)`` where
        ``monomials`` is a tuple of zero, one or more monomials replacing the
        leg; there must be exactly ``width`` of them.
        """
        acc: dict = {}
        for (m, mons), c in self.terms.items():
            if antilinear:
                c = conj(c)
            head, leg, tail = mons[:index], mons[index], mons[index + 1 :]
            for repl, k in fn(leg):
                repl = tuple(repl)
                if len(repl) != width:
                    raise GradeMismatch(f"leg map produced {len(repl)} legs, expected {width}")
                _add_into(acc, (m, head + repl + tail), c * k)
        return Series(self.algebra, self.legs - 1 + width, self.order, _clean(acc), _trusted=True)

    def map_legs(self, fn, *, antilinear: bool = False) -> "Series":
        """Apply the same monomial-to-monomials linear map on every leg.

        ``fn(monomial)`` yields ``(monomial, coeff)`` pairs. With
        ``antilinear=True`` the coefficients are complex-conjugated once.
        """
        out = self.conjugate_coefficients() if antilinear else self
        for j in range(self.legs):
            out = out.map_leg(j, lambda mono: (((m,), c) for m, c in fn(mono)), 1)
        return out

    def contract(self) -> "Series":
        """Multiply all legs together (``mu`` for two legs)."""
        if self.legs < 2:
            return self
        mul = self.algebra.mul
        acc: dict = {}
        for (m, mons), c in self.terms.items():
            partial = [(mons[0], 1)]
            for nxt in mons[1:]:
                step = []
                for mono, k in partial:
                    for mono2, k2 in mul(mono, nxt):
                        step.append((mono2, k * k2))
                partial = step
            for mono, k in partial:
                _add_into(acc, (m, (mono,)), c * k)
        return Series(self.algebra, 1, self.order, _clean(acc), _trusted=True)

    def embed(self, legs: int, positions) -> "Series":
        """Place this series' legs at ``positions`` of a ``legs``-fold tensor, units elsewhere."""
        positions = tuple(positions)
        if len(positions) != self.legs:
            raise GradeMismatch("one position per leg is required")
        one = self.algebra.one
        out = {}
        for (m, mons), c in self.terms.items():
            slots = [one] * legs
            for p, mono in zip(positions, mons):
                slots[p] = mono
            out[(m, tuple(slots))] = c
        return Series(self.algebra, legs, self.order, out, _trusted=True)

    def tensor(self, other: "Series") -> "Series":
        """Outer product ``self ⊗ other`` (kappa powers add)."""
        if other.order != self.order:
            raise OrderMismatch("truncation order mismatch")
        N = self.order
        right = other.by_order()
        acc = {}
        for (m1, mons1), c1 in self.terms.items():
            for m2 in range(0, N - m1 + 1):
                for mons2, c2 in right.get(m2, ()):
                    _add_into(acc, (m1 + m2, mons1 + mons2), c1 * c2)
        return Series(self.algebra, self.legs + other.legs, N, _clean(acc), _trusted=True)

    __matmul__ = tensor

    # -------------------------------------------------------------- analytic
    def analytic(self, kind: str) -> "Series":
        """Power-series functions of ``self``, truncated at the order.

        ``exp``: exp(A). ``log1p``: log(1 + A). ``inv1p``: 1/(1 + A).
        ``sqrt1p``: sqrt(1 + A). ``A`` must have no kappa^0 part.
        """
        if any(m == 0 for m, _ in self.terms):
            raise NonTerminatingSeries(f"{kind} needs an argument with every kappa power >= 1")
        N = self.order
        coeffs = _taylor(kind, N)
        one = Series.one(self.algebra, self.legs, N)
        out = one.scale(coeffs[0])
        power = one
        for k in range(1, N + 1):
            power = power * self
            if power.is_zero():
                break
            if coeffs[k]:
                out = out + power.scale(coeffs[k])
        return out

    def exp(self):
        return self.analytic("exp")

    def log1p(self):
        return self.analytic("log1p")

    def inv1p(self):
        return self.analytic("inv1p")

    def sqrt1p(self):
        return self.analytic("sqrt1p")

    def inverse(self) -> "Series":
        """Series inverse; the kappa^0 part must be a nonzero scalar."""
        c0 = self._scalar_leading()
        return (self.scale(1 / c0) - 1).inv1p().scale(1 / c0)

    def sqrt(self) -> "Series":
        c0 = self._scalar_leading()
        if c0 != 1:
            raise AlgebraError("sqrt is only defined here for unit leading term")
        return (self - 1).sqrt1p()

    def _scalar_leading(self):
        lead = self.part(0)
        unit = (self.algebra.one,) * self.legs
        c0 = lead.terms.get((0, unit))
        if not c0 or len(lead.terms) != 1:
            raise AlgebraError("leading (kappa^0) part must be a nonzero multiple of the unit")
        return c0

    # ---------------------------------------------------------------- text io
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0])

    def to_text(self) -> str:
        """Canonical one-term-per-line text form."""
        lines = []
        for (m, mons), c in self.sorted_terms():
            legs = " ⊗ ".join(self.algebra.format_monomial(x) for x in mons)
            lines.append(f"{format_scalar(c)} * kappa^-{m} * {legs}" if legs else f"{format_scalar(c)} * kappa^-{m}")
        return "\n".join(lines) if lines else "0"

    @classmethod
    def from_text(cls, algebra, text: str, legs: int, order: int) -> "Series":
        terms = {}
        for raw in text.strip().splitlines():
            line = raw.strip()
            if not line or line == "0":
                continue
            parts = [p.strip() for p in line.split("*", 2)]
            if len(parts) < 2 or not parts[1].startswith("kappa^-"):
                raise ValueError(f"malformed series line: {raw!r}")
            c = parse_scalar(parts[0])
            m = int(parts[1][len("kappa^-") :])
            mons = tuple(algebra.parse_monomial(x) for x in parts[2].split("⊗")) if len(parts) > 2 else ()
            if len(mons) != legs:
                raise GradeMismatch(f"line has {len(mons)} legs, expected {legs}: {raw!r}")
            _add_into(terms, (m, mons), c)
        return cls(algebra, legs, order, terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"<Series legs={self.legs} order={self.order} terms={len(self.terms)}>"


def _taylor(kind: str, N: int):
    """Exact Taylor coefficients c_0..c_N of the named function at 0."""
    if kind == "exp":
        out, f = [], mpq(1)
        for k in range(N + 1):
            out.append(f)
            f = f / (k + 1)
        return out
    if kind == "log1p":
        return [mpq(0)] + [mpq((-1) ** (k + 1), k) for k in range(1, N + 1)]
    if kind == "inv1p":
        return [mpq((-1) ** k) for k in range(N + 1)]
    if kind == "sqrt1p":
        out, b = [], mpq(1)
        for k in range(N + 1):
            out.append(b)
            b = b * (mpq(1, 2) - k) / (k + 1)
        return out
    raise ValueError(f"unknown analytic function {kind!r}")


def combine(terms: Iterable[tuple], algebra, legs, order) -> Series:
    """Build a series from ``(kappa_pow, monomials, coeff)`` triples."""
    acc = {}
    for m, mons, c in terms:
        _add_into(acc, (m, tuple(mons)), c)
    return Series(algebra, legs, order, acc)

