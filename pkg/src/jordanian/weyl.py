"""Weyl algebra extended by dilatation, and noncommutative coordinate realizations.

Generators ``x^mu``, ``P_mu``, ``D`` with

* ``[P_mu, x^nu] = -i delta``
* ``D x^mu = x^mu (D + 1)``
* ``D P_mu = P_mu (D - 1)``

Monomials are normal ordered ``x^a P^b D^c`` and stored as
``(a_0..a_{n-1}, b_0..b_{n-1}, c)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb, factorial, prod

from .hopf.twists import Family, Twist, build_twist
from .ncalg import Config, Series, as_scalar
from .ncalg.scalars import GaussianRational, I
from .ncalg.series import AlgebraError, LegAlgebra
from .report import Report, combine_reports, compare

__all__ = [
    "WAlgebra",
    "WeylSpace",
    "Realization",
    "NonStabilizingRealization",
    "xhat_from_inverse",
    "xhat_from_twist",
    "closed_form_xhat",
    "closed_form_realization",
    "substitute_dilatation",
    "check_realization",
    "check_commutators",
    "check_chi_difference",
    "check_jacobi",
    "check_dilatation_substitution",
]

_MINUS_I_POWERS = (1, GaussianRational.make(0, -1), -1, I)


class NonStabilizingRealization(AlgebraError):
    """A realization changed between truncation orders N and N+1."""


class WAlgebra(LegAlgebra):
    def __init__(self, n: int):
        super().__init__()
        self.n = n
        self.one = (0,) * (2 * n + 1)

    _instances: dict = {}

    @classmethod
    def get(cls, n: int) -> "WAlgebra":
        if n not in cls._instances:
            cls._instances[n] = cls(n)
        return cls._instances[n]

    def _mul_monomials(self, a, b):
        n = self.n
        xa, pa, da = a[:n], a[n : 2 * n], a[-1]
        xb, pb, db = b[:n], b[n : 2 * n], b[-1]
        # D^da x^xb P^pb = x^xb P^pb (D + |xb| - |pb|)^da
        s = sum(xb) - sum(pb)
        dpoly = [(l + db, comb(da, l) * s ** (da - l)) for l in range(da + 1)] if s else [(da + db, 1)]
        out = []
        # P^pa x^xb = sum_j (-i)^|j| j! C(pa,j) C(xb,j) x^(xb-j) P^(pa-j)
        ranges = [range(min(p, x) + 1) for p, x in zip(pa, xb)]
        for j in _multi(ranges):
            k = prod(factorial(t) * comb(p, t) * comb(x, t) for t, p, x in zip(j, pa, xb))
            c = _MINUS_I_POWERS[sum(j) % 4] * k
            xs = tuple(u + v - t for u, v, t in zip(xa, xb, j))
            ps = tuple(u - t + v for u, t, v in zip(pa, j, pb))
            for dexp, dk in dpoly:
                out.append((xs + ps + (dexp,), c * dk))
        return _merge(out)

    def format_monomial(self, m):
        n = self.n
        xs = " ".join(f"x{j}^{e}" for j, e in enumerate(m[:n]))
        ps = " ".join(f"P{j}^{e}" for j, e in enumerate(m[n : 2 * n]))
        return f"{xs} {ps} D^{m[-1]}"

    def parse_monomial(self, text):
        n = self.n
        exps = [0] * (2 * n + 1)
        for tok in text.split():
            mt = re.fullmatch(r"(x(\d+)|P(\d+)|D)(?:\^(\d+))?", tok)
            if not mt:
                raise ValueError(f"bad monomial factor {tok!r}")
            e = int(mt.group(4) or 1)
            if mt.group(1) == "D":
                exps[-1] += e
                continue
            j = int(mt.group(2) or mt.group(3))
            if j >= n:
                raise ValueError(f"index {j} out of range for n={n}")
            exps[j if mt.group(2) is not None else n + j] += e
        return tuple(exps)


def _multi(ranges):
    if not ranges:
        yield ()
        return
    for head in ranges[0]:
        for tail in _multi(ranges[1:]):
            yield (head,) + tail


def _merge(pairs):
    acc = {}
    for m, c in pairs:
        acc[m] = acc.get(m, 0) + c
    return tuple((m, c) for m, c in acc.items() if c)


@dataclass(frozen=True)
class WeylSpace:
    """Element constructors for the Weyl algebra attached to a :class:`Config`."""

    cfg: Config

    @property
    def algebra(self) -> WAlgebra:
        return WAlgebra.get(self.cfg.n)

    @property
    def N(self) -> int:
        return self.cfg.N

    def mono(self, x=None, p=None, d=0, c=1, kappa_pow=0) -> Series:
        n = self.cfg.n
        x = tuple(x) if x is not None else (0,) * n
        p = tuple(p) if p is not None else (0,) * n
        return Series.monomial(self.algebra, [x + p + (d,)], self.N, c, kappa_pow)

    def one(self) -> Series:
        return Series.one(self.algebra, 1, self.N)

    def zero(self) -> Series:
        return Series.zero(self.algebra, 1, self.N)

    def x(self, mu: int, c=1, kappa_pow=0) -> Series:
        e = [0] * self.cfg.n
        e[mu] = 1
        return self.mono(x=e, c=c, kappa_pow=kappa_pow)

    def P(self, mu: int, c=1, kappa_pow=0) -> Series:
        e = [0] * self.cfg.n
        e[mu] = 1
        return self.mono(p=e, c=c, kappa_pow=kappa_pow)

    def D(self, c=1, kappa_pow=0) -> Series:
        return self.mono(d=1, c=c, kappa_pow=kappa_pow)

    def Pv(self, c=1, kappa_pow=0) -> Series:
        out = self.zero()
        for mu, vm in enumerate(self.cfg.v):
            if vm:
                out = out + self.P(mu, c * vm, kappa_pow)
        return out

    def embed(self, z: Series) -> Series:
        """Image of a one-leg U(g) series (``P^a D^b -> P^a D^b``)."""
        n = self.cfg.n
        zero_x = (0,) * n
        terms = {(m, (zero_x + mono,)): c for (m, (mono,)), c in z.terms.items()}
        return Series(self.algebra, 1, max(z.order, self.N), terms)

    def from_text(self, text: str) -> Series:
        return Series.from_text(self.algebra, text, 1, self.N)


# ------------------------------------------------------------ realizations
def _act_on_coordinate(mono, mu: int):
    """``P^a D^b |> x^mu``: ``x^mu`` if a = 0, ``-i`` if a = e_mu, else 0.

    Returns ``("x", 1)``, ``("1", -i)`` or ``None``.
    """
    p = mono[:-1]
    s = sum(p)
    if s == 0:
        return ("x", 1)
    if s == 1 and p[mu] == 1:
        return ("1", GaussianRational.make(0, -1))
    return None


def xhat_from_inverse(inverse: Series, mu: int, cfg: Config) -> Series:
    """``m[F^-1 (|> ⊗ 1)(x^mu ⊗ 1)] = sum (f1 |> x^mu) f2`` for ``F^-1 = sum f1 ⊗ f2``."""
    W = WeylSpace(cfg.with_order(inverse.order))
    n = cfg.n
    ex = tuple(1 if j == mu else 0 for j in range(n))
    zero_x = (0,) * n
    acc = {}
    for (m, (f1, f2)), c in inverse.terms.items():
        hit = _act_on_coordinate(f1, mu)
        if hit is None:
            continue
        kind, k = hit
        mono = (ex if kind == "x" else zero_x) + f2
        key = (m, (mono,))
        acc[key] = acc.get(key, 0) + c * k
    return Series(W.algebra, 1, inverse.order, acc)


def _rebuild(F: Twist, order: int) -> Twist:
    if F.family in (Family.COBOUNDARY, Family.CUSTOM):
        raise NonStabilizingRealization("cannot rebuild a custom twist at a higher order for the stabilization check")
    return build_twist(F.family, F.u if F.family.parametric else None, F.cfg.with_order(order))


def xhat_from_twist(F: Twist, mu: int, stabilize: bool = True) -> Series:
    """Realization of ``x-hat^mu`` from a twist, checked for stabilization at order N+1."""
    out = xhat_from_inverse(F.inverse, mu, F.cfg)
    if stabilize:
        higher = xhat_from_inverse(_rebuild(F, F.order + 1).inverse, mu, F.cfg)
        if higher.terms != out.terms:
            extra = (higher - out.with_order(higher.order)).lowest_order()
            raise NonStabilizingRealization(f"realization changes at order {extra} between N={F.order} and N+1")
    return out


def _family_u(family, u):
    fam = Family.parse(family)
    if fam is Family.F0:
        return Family.L, as_scalar(0)
    if fam is Family.F1:
        return Family.L, as_scalar(1)
    if fam not in (Family.L, Family.R):
        raise ValueError(f"no closed-form realization for family {fam.value}")
    return fam, as_scalar(u)


def closed_form_xhat(family, u, mu: int, cfg: Config) -> Series:
    """``(x^mu + (i/kappa) v^mu (1-u) D)(1 + (u/kappa) P)``, plus ``i u(1-u) kappa^-2 v^mu P`` for R."""
    fam, u = _family_u(family, u)
    W = WeylSpace(cfg)
    vm = cfg.v[mu]
    left = W.x(mu) + W.D(I * vm * (1 - u), 1)
    out = left * (W.one() + W.Pv(u, 1))
    if fam is Family.R:
        out = out + W.Pv(I * u * (1 - u) * vm, 2)
    return out


@dataclass(frozen=True, eq=False)
class Realization:
    """``x-hat^mu = x^alpha phi_alpha^mu(P) + chi^mu(P)`` with D eliminated.

    ``phi[alpha][mu]`` and ``chi[mu]`` are one-leg U(g) series in P only.
    """

    phi: tuple
    chi: tuple
    cfg: Config

    def xhat(self, mu: int) -> Series:
        W = WeylSpace(self.cfg)
        out = W.embed(self.chi[mu])
        for alpha in range(self.cfg.n):
            out = out + W.x(alpha) * W.embed(self.phi[alpha][mu])
        return out


def closed_form_realization(family, u, cfg: Config) -> Realization:
    """``phi_alpha^mu = (delta - ((1-u)/kappa) v^mu P_alpha)(1 + (u/kappa) P)``; ``chi`` nonzero only for R."""
    fam, u = _family_u(family, u)
    n = cfg.n
    a = cfg.one() + cfg.Pv(1, u)
    phi = tuple(
        tuple(((cfg.one() if alpha == mu else cfg.zero()) - cfg.P(alpha, 1, (1 - u) * cfg.v[mu])) * a for mu in range(n))
        for alpha in range(n)
    )
    if fam is Family.R:
        chi = tuple(cfg.Pv(2, I * u * (1 - u) * cfg.v[mu]) for mu in range(n))
    else:
        chi = tuple(cfg.zero() for _ in range(n))
    return Realization(phi, chi, cfg)


def substitute_dilatation(w: Series, cfg: Config) -> Series:
    """Replace ``D`` by ``i x^alpha P_alpha`` (the differential-operator identification).

    This is an algebra homomorphism into the plain Weyl algebra; it changes the
    normal-ordered basis, so it is kept apart from the abstract-D computations.
    """
    W = WeylSpace(cfg.with_order(w.order))
    d_image = W.zero()
    for alpha in range(cfg.n):
        d_image = d_image + W.x(alpha, I) * W.P(alpha)
    n = cfg.n
    out = W.zero()
    powers = [W.one()]
    for (m, (mono,)), c in w.terms.items():
        b = mono[-1]
        while len(powers) <= b:
            powers.append(powers[-1] * d_image)
        head = W.mono(mono[:n], mono[n : 2 * n], 0, c, m)
        out = out + head * powers[b]
    return out


# ------------------------------------------------------------ checks
def _label(family, u):
    fam = Family.parse(family)
    return fam.value, (u if fam.parametric else None)


def check_realization(F: Twist) -> Report:
    """Twist-derived realization equals the closed form (with stabilization at N+1)."""
    fam, u = _label(F.family, F.u)
    parts = []
    for mu in range(F.cfg.n):
        try:
            got = xhat_from_twist(F, mu)
        except NonStabilizingRealization as exc:
            return Report("realization", fam, _fmt(u), F.order, False, None, 0, str(exc))
        parts.append(compare(f"x{mu}", got, closed_form_xhat(F.family, F.u, mu, F.cfg)))
    return combine_reports("realization", parts, family=fam, u=u, N=F.order, detail="stable at N+1")


def _fmt(u):
    from .report import format_u

    return format_u(u)


def check_commutators(xhats, u, cfg: Config, family="-") -> list[Report]:
    """kappa-Minkowski and deformed Heisenberg commutators as exact identities."""
    u = as_scalar(u)
    W = WeylSpace(cfg)
    n = cfg.n
    v = cfg.v
    mink = []
    for mu in range(n):
        for nu in range(n):
            lhs = xhats[mu].commutator(xhats[nu])
            rhs = (xhats[nu].scale(v[mu]) - xhats[mu].scale(v[nu])).scale(I, 1)
            mink.append(compare(f"{mu}{nu}", lhs, rhs))
    heis = []
    a = W.one() + W.Pv(u, 1)
    for mu in range(n):
        for nu in range(n):
            lhs = W.P(mu).commutator(xhats[nu])
            delta = W.one().scale(GaussianRational.make(0, -1)) if mu == nu else W.zero()
            rhs = (delta + W.P(mu, I * v[nu] * (1 - u), 1)) * a
            heis.append(compare(f"{mu}{nu}", lhs, rhs))
    return [
        combine_reports("kappa-minkowski", mink, family=family, u=u, N=cfg.N),
        combine_reports("deformed-heisenberg", heis, family=family, u=u, N=cfg.N),
    ]


def check_chi_difference(u, cfg: Config) -> Report:
    """``x-hat_R - x-hat_L = i u(1-u) kappa^-2 v^mu P`` for twist-derived realizations."""
    u = as_scalar(u)
    W = WeylSpace(cfg)
    FL, FR = build_twist("L", u, cfg), build_twist("R", u, cfg)
    parts = []
    for mu in range(cfg.n):
        diff = xhat_from_twist(FR, mu) - xhat_from_twist(FL, mu)
        parts.append(compare(f"x{mu}", diff, W.Pv(I * u * (1 - u) * cfg.v[mu], 2)))
    return combine_reports("chi-difference", parts, family="L|R", u=u, N=cfg.N)


def check_jacobi(xhats, cfg: Config, family="-", u=None) -> Report:
    """Jacobi identity for ``(x-hat^mu, x-hat^nu, P_rho)``."""
    W = WeylSpace(cfg)
    parts = []
    n = cfg.n
    for mu in range(n):
        for nu in range(n):
            for rho in range(n):
                a, b, c = xhats[mu], xhats[nu], W.P(rho)
                total = a.commutator(b.commutator(c)) + b.commutator(c.commutator(a)) + c.commutator(a.commutator(b))
                parts.append(compare(f"{mu}{nu}{rho}", total, W.zero()))
    return combine_reports("jacobi", parts, family=family, u=u, N=cfg.N)


def check_dilatation_substitution(family, u, cfg: Config) -> Report:
    """With ``D = i x.P`` the closed-form x-hat equals ``x^alpha phi_alpha^mu + chi^mu``."""
    fam, uu = _label(family, u)
    real = closed_form_realization(family, u, cfg)
    parts = [
        compare(f"x{mu}", substitute_dilatation(closed_form_xhat(family, u, mu, cfg), cfg), real.xhat(mu))
        for mu in range(cfg.n)
    ]
    return combine_reports("realization-phi-chi", parts, family=fam, u=uu, N=cfg.N)
