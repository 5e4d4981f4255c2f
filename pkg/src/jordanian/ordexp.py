"""Normal-ordered exponentials in the Weyl algebra with a formal momentum parameter.

Elements are sparse dicts over monomials ``k^c x^a p^b`` (multi-indices of
length ``n``), where ``[p_mu, x^nu] = -i delta`` and the ``k_mu`` are central.
Everything is truncated at total ``k`` degree ``M``; coefficients are exact.

Two families of identities are checked, order by order in ``k``:

* one dimension: ``exp(i k x phi(p)) = :exp(i x (J - p)):`` where
  ``dJ/dk = phi(J)``, ``J(0) = p``;
* ``n`` dimensions: ``exp(i k.xhat) = :exp(i x.(J - p)): exp(iQ)`` for
  ``xhat^mu = x^alpha phi_alpha^mu(p) + chi^mu(p)``, with
  ``dJ_alpha/dlam = phi_alpha^mu(J) k_mu`` and ``dQ/dlam = k_mu chi^mu(J)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb, factorial

from gmpy2 import mpq

from .ncalg.scalars import GaussianRational, I, as_scalar, format_scalar
from .report import Report, format_u

__all__ = [
    "WElement",
    "PhiSeries",
    "Realization",
    "brute_force_expand",
    "solve_j_series",
    "solve_jq_series",
    "normal_ordered_exp",
    "conjugated_momentum",
    "check_ordering_1d",
    "check_conjugation",
    "check_ordering_nd",
    "check_q_boundary",
    "family_realization",
    "g_log_series",
    "poly_from_coeffs",
]

_MINUS_I = [mpq(1), GaussianRational(0, -1), mpq(-1), I]


def _clean(terms: dict) -> dict:
    return {m: c for m, c in terms.items() if c != 0}


@lru_cache(maxsize=None)
def _pair(b: int, d: int):
    """Reordering ``p^b x^d = sum_j coef * x^{d-j} p^{b-j}`` in one dimension."""
    return tuple((j, _MINUS_I[j % 4] * factorial(j) * comb(b, j) * comb(d, j)) for j in range(min(b, d) + 1))


class WElement:
    """Truncated element of the ``n``-dimensional Weyl algebra over ``Q(i)[k]``.

    Keys are ``(kexp, xexp, pexp)`` tuples in normal order: ``k`` and ``x``
    to the left of ``p``.

    >>> x, p = WElement.x(0, 1, 4), WElement.p(0, 1, 4)
    >>> print(p * x)
    0/1-1/1i + x0 p0
    """

    __slots__ = ("n", "M", "terms")

    def __init__(self, n: int, M: int, terms=None):
        if n < 1 or M < 0:
            raise ValueError("need n >= 1 and M >= 0")
        self.n = n
        self.M = M
        self.terms = _clean({m: as_scalar(c) for m, c in (terms or {}).items() if sum(m[0]) <= M})

    # constructors
    @classmethod
    def zero(cls, n, M):
        return cls(n, M)

    @classmethod
    def one(cls, n, M, c=1):
        z = (0,) * n
        return cls(n, M, {(z, z, z): c})

    @classmethod
    def mono(cls, n, M, k=None, x=None, p=None, c=1):
        z = (0,) * n
        return cls(n, M, {(tuple(k or z), tuple(x or z), tuple(p or z)): c})

    @classmethod
    def _unit(cls, n, mu):
        return tuple(1 if j == mu else 0 for j in range(n))

    @classmethod
    def x(cls, mu, n, M):
        return cls.mono(n, M, x=cls._unit(n, mu))

    @classmethod
    def p(cls, mu, n, M):
        return cls.mono(n, M, p=cls._unit(n, mu))

    @classmethod
    def k(cls, mu, n, M):
        return cls.mono(n, M, k=cls._unit(n, mu))

    def _new(self, terms):
        out = WElement.__new__(WElement)
        out.n, out.M, out.terms = self.n, self.M, _clean(terms)
        return out

    def _coerce(self, other):
        if isinstance(other, WElement):
            if (other.n, other.M) != (self.n, self.M):
                raise ValueError("mismatched Weyl elements")
            return other
        return WElement.one(self.n, self.M, other)

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = as_scalar(c)
        return self._new({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, WElement):
            return self.scale(other)
        other = self._coerce(other)
        out: dict = {}
        for (k1, x1, p1), c1 in self.terms.items():
            d1 = sum(k1)
            for (k2, x2, p2), c2 in other.terms.items():
                if d1 + sum(k2) > self.M:
                    continue
                kk = tuple(a + b for a, b in zip(k1, k2))
                c = c1 * c2
                for js in product(*(_pair(b, d) for b, d in zip(p1, x2))):
                    coef = c
                    for _, w in js:
                        coef = coef * w
                    xx = tuple(a + d - j for a, d, (j, _) in zip(x1, x2, js))
                    pp = tuple(b - j + e for b, e, (j, _) in zip(p1, p2, js))
                    key = (kk, xx, pp)
                    out[key] = out.get(key, 0) + coef
        return self._new(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        out = WElement.one(self.n, self.M)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, WElement):
            return (self.n, self.M) == (other.n, other.M) and self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def k_degree_part(self, s: int) -> "WElement":
        return self._new({m: c for m, c in self.terms.items() if sum(m[0]) == s})

    def lowest_k_degree(self):
        return min((sum(m[0]) for m in self.terms), default=None)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (k, x, p), c in sorted(self.terms.items()):
            word = []
            for name, exps in (("k", k), ("x", x), ("p", p)):
                for j, e in enumerate(exps):
                    if e:
                        word.append(f"{name}{j}" + (f"^{e}" if e > 1 else ""))
            if not word:
                parts.append(format_scalar(c))
            elif c == 1:
                parts.append(" ".join(word))
            else:
                parts.append(f"{format_scalar(c)} " + " ".join(word))
        return " + ".join(parts)

    __repr__ = __str__


# ------------------------------------------------------------ one dimension
def poly_from_coeffs(coeffs, M: int, n: int = 1, var: int = 0) -> WElement:
    """``sum_j coeffs[j] p_var^j`` as an element (``coeffs`` lowest degree first)."""
    out = WElement.zero(n, M)
    pv = WElement.p(var, n, M)
    for j, c in enumerate(coeffs):
        if c:
            out = out + (pv**j).scale(c)
    return out


def _exp(z: WElement) -> WElement:
    """``sum_m z^m / m!``; ``z`` must have no ``k``-free part."""
    if z.lowest_k_degree() is not None and z.lowest_k_degree() == 0:
        raise ValueError("exponent must vanish at k = 0")
    out = WElement.one(z.n, z.M)
    term = WElement.one(z.n, z.M)
    for m in range(1, z.M + 1):
        term = (term * z).scale(mpq(1, m))
        out = out + term
    return out


def brute_force_expand(phi, M: int) -> WElement:
    """``exp(i k x phi(p))`` truncated at ``k^M`` with every word normal ordered.

    ``phi`` is a coefficient list (lowest degree first) or a one-dimensional ``WElement`` in ``p``.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    ph = phi if isinstance(phi, WElement) else poly_from_coeffs(phi, M)
    ikx = WElement.mono(1, M, k=(1,), x=(1,), c=I)
    return _exp(ikx * ph)


@dataclass(frozen=True)
class PhiSeries:
    """``J(k, p)`` and ``Phi = J - p`` as ``k``-graded series in ``p`` (x-free elements)."""

    J: WElement

    @property
    def Phi(self) -> WElement:
        return self.J - WElement.p(0, 1, self.J.M)

    def part(self, s: int) -> WElement:
        return self.J.k_degree_part(s)


def _compose(ph: WElement, J: WElement) -> WElement:
    """``phi(J)`` for x-free ``ph`` in one dimension."""
    out = WElement.zero(J.n, J.M)
    for (k, x, p), c in ph.terms.items():
        out = out + (J ** p[0]).scale(c) * WElement.mono(J.n, J.M, k=k)
    return out


def solve_j_series(phi, M: int) -> PhiSeries:
    """Solve ``dJ/dk = phi(J)``, ``J(0) = p`` order by order: ``(s+1) J_{s+1} = [phi(J)]_s``."""
    ph = phi if isinstance(phi, WElement) else poly_from_coeffs(phi, M)
    k = WElement.k(0, 1, M)
    J = WElement.p(0, 1, M)
    for s in range(M):
        rhs = _compose(ph, J).k_degree_part(s)
        J = J + (k * rhs).scale(mpq(1, s + 1))
    return PhiSeries(J)


def normal_ordered_exp(Phi, M: int | None = None, Q: WElement | None = None) -> WElement:
    """``:exp(i x.Phi):`` (all ``x`` left), optionally times ``exp(iQ)`` on the right.

    ``Phi`` is a :class:`PhiSeries` (one dimension) or a list of x-free
    elements ``Phi_alpha``.
    """
    if isinstance(Phi, PhiSeries):
        Phi = [Phi.Phi]
    n, M0 = Phi[0].n, Phi[0].M
    M = M0 if M is None else M
    tail = WElement.one(n, M) if Q is None else _exp(Q.scale(I))
    out = WElement.zero(n, M)
    for r in product(range(M + 1), repeat=n):
        if sum(r) > M:
            continue
        coef = WElement.mono(n, M, x=r, c=I ** sum(r) / math.prod(factorial(j) for j in r))
        body = WElement.one(n, M)
        for a, e in enumerate(r):
            body = body * Phi[a] ** e
        # the x-monomial is already leftmost, so this product is in normal order
        out = out + coef * (body * tail)
    return out


def conjugated_momentum(phi, M: int) -> WElement:
    """``e^{-ikx phi(p)} p e^{ikx phi(p)}`` by direct multiplication."""
    E = brute_force_expand(phi, M)
    ph = phi if isinstance(phi, WElement) else poly_from_coeffs(phi, M)
    Einv = _exp(WElement.mono(1, M, k=(1,), x=(1,), c=-I) * ph)
    return Einv * WElement.p(0, 1, M) * E


def _report(check, lhs, rhs, *, family="-", u=None, M=0, detail=""):
    diff = lhs - rhs
    order = diff.lowest_k_degree()
    return Report(check, family, format_u(u), M, order is None, order, max(len(lhs), len(rhs)), detail)


def check_ordering_1d(phi, M: int, label: str = "-") -> Report:
    """Brute-force expansion against the normal-ordered form built from the ODE series."""
    lhs = brute_force_expand(phi, M)
    rhs = normal_ordered_exp(solve_j_series(phi, M), M)
    return _report("ordering-1d", lhs, rhs, family=label, M=M)


def check_conjugation(phi, M: int, label: str = "-") -> Report:
    """``J = e^{-ikx phi} p e^{ikx phi}`` against the ODE series."""
    return _report("ordering-conjugation", conjugated_momentum(phi, M), solve_j_series(phi, M).J, family=label, M=M)


# ------------------------------------------------------------ n dimensions
@dataclass(frozen=True)
class Realization:
    """``xhat^mu = x^alpha phi[alpha][mu] + chi[mu]`` with x-free entries."""

    phi: tuple
    chi: tuple

    @property
    def n(self):
        return len(self.chi)

    def xhat(self, mu: int) -> WElement:
        n, M = self.chi[mu].n, self.chi[mu].M
        out = self.chi[mu]
        for a in range(n):
            out = out + WElement.x(a, n, M) * self.phi[a][mu]
        return out


def family_realization(family: str, u, n: int, M: int, kappa=1, v=None) -> Realization:
    """Realizations of the L and R families with ``kappa`` a fixed rational.

    ``phi_alpha^mu = (delta - ((1-u)/kappa) v^mu p_alpha)(1 + u v.p/kappa)``,
    ``chi^mu = i u(1-u) kappa^-2 v^mu v.p`` for R and 0 for L.
    """
    u, kappa = as_scalar(u), as_scalar(kappa)
    v = tuple(as_scalar(c) for c in (v or (1,) + (0,) * (n - 1)))
    ps = [WElement.p(a, n, M) for a in range(n)]
    vp = sum((p.scale(c) for p, c in zip(ps, v)), WElement.zero(n, M))
    lin = WElement.one(n, M) + vp.scale(u / kappa)
    phi = tuple(
        tuple(((WElement.one(n, M) if a == mu else WElement.zero(n, M)) - ps[a].scale((1 - u) * v[mu] / kappa)) * lin for mu in range(n))
        for a in range(n)
    )
    fam = family.upper()
    if fam == "L":
        chi = tuple(WElement.zero(n, M) for _ in range(n))
    elif fam == "R":
        chi = tuple(vp.scale(I * u * (1 - u) * v[mu] / kappa**2) for mu in range(n))
    else:
        raise ValueError(f"no realization for family {family!r}")
    return Realization(phi, chi)


def _substitute(f: WElement, J) -> WElement:
    """``f(J)`` for x-free ``f`` in ``p`` (``J`` a list of x-free elements)."""
    out = WElement.zero(f.n, f.M)
    for (k, x, p), c in f.terms.items():
        term = WElement.mono(f.n, f.M, k=k, c=c)
        for a, e in enumerate(p):
            term = term * J[a] ** e
        out = out + term
    return out


def solve_jq_series(real: Realization, M: int):
    """Formal solutions ``J_alpha(k, p)`` and ``Q(k, p)`` graded by ``k`` degree."""
    n = real.n
    ks = [WElement.k(mu, n, M) for mu in range(n)]
    J = [WElement.p(a, n, M) for a in range(n)]
    Q = WElement.zero(n, M)
    for s in range(M):
        phiJ = [[_substitute(real.phi[a][mu], J) for mu in range(n)] for a in range(n)]
        chiJ = [_substitute(real.chi[mu], J) for mu in range(n)]
        new = []
        for a in range(n):
            rhs = sum((ks[mu] * phiJ[a][mu] for mu in range(n)), WElement.zero(n, M)).k_degree_part(s + 1)
            new.append(J[a] + rhs.scale(mpq(1, s + 1)))
        rhs_q = sum((ks[mu] * chiJ[mu] for mu in range(n)), WElement.zero(n, M)).k_degree_part(s + 1)
        Q = Q + rhs_q.scale(mpq(1, s + 1))
        J = new
    return J, Q


def check_ordering_nd(real: Realization, M: int, family: str = "-", u=None):
    """``exp(i k.xhat)`` by brute force against ``:exp(i x.(J - p)): exp(iQ)``."""
    n = real.n
    kx = sum((WElement.k(mu, n, M) * real.xhat(mu) for mu in range(n)), WElement.zero(n, M))
    lhs = _exp(kx.scale(I))
    J, Q = solve_jq_series(real, M)
    Phi = [J[a] - WElement.p(a, n, M) for a in range(n)]
    rhs = normal_ordered_exp(Phi, M, Q)
    return _report("ordering-nd", lhs, rhs, family=family, u=u, M=M), Q


def _univariate_exp(c: list, M: int) -> list:
    """Exact ``exp`` of a power series with ``c[0] = 0`` up to degree ``M``."""
    out = [mpq(0)] * (M + 1)
    out[0] = mpq(1)
    # f' = c' f
    dc = [j * c[j] for j in range(1, M + 1)] + [mpq(0)]
    for s in range(1, M + 1):
        out[s] = sum(dc[j] * out[s - 1 - j] for j in range(s)) / s
    return out


def _univariate_log1p(c: list, M: int) -> list:
    """Exact ``ln(1 + c)`` with ``c[0] = 0``: ``L' = c' / (1 + c)``."""
    inv = [mpq(0)] * (M + 1)
    inv[0] = mpq(1)
    for s in range(1, M + 1):
        inv[s] = -sum(c[j] * inv[s - j] for j in range(1, s + 1))
    dc = [j * c[j] for j in range(1, M + 1)] + [mpq(0)]
    out = [mpq(0)] * (M + 1)
    for s in range(1, M + 1):
        out[s] = sum(dc[j] * inv[s - 1 - j] for j in range(s)) / s
    return out


def g_log_series(u, M: int) -> list:
    """Taylor coefficients in ``A`` of ``ln(u e^{-(1-u)A} + (1-u) e^{uA})``."""
    u = as_scalar(u)
    e1 = _univariate_exp([mpq(0), -(1 - u)] + [mpq(0)] * (M - 1), M)
    e2 = _univariate_exp([mpq(0), u] + [mpq(0)] * (M - 1), M)
    s = [u * a + (1 - u) * b for a, b in zip(e1, e2)]
    s[0] -= 1
    return _univariate_log1p(s, M)


def check_q_boundary(Q: WElement, u, M: int, kappa=1, v=None, family="R") -> Report:
    """``Q(k, 0) = g(k)`` with ``g = i ln(u e^{-(1-u)A} + (1-u) e^{uA})``, ``A = v.k/kappa``."""
    n = Q.n
    kappa = as_scalar(kappa)
    v = tuple(as_scalar(c) for c in (v or (1,) + (0,) * (n - 1)))
    at_zero = Q._new({m: c for m, c in Q.terms.items() if not any(m[2])})
    vk = sum((WElement.k(mu, n, M).scale(c / kappa) for mu, c in enumerate(v)), WElement.zero(n, M))
    coeffs = g_log_series(u, M)
    if family.upper() == "L":
        coeffs = [mpq(0)] * (M + 1)
    g = sum(((vk**s).scale(I * coeffs[s]) for s in range(1, M + 1)), WElement.zero(n, M))
    return _report("ordering-q-boundary", at_zero, g, family=family, u=u, M=M)
