"""Jordanian twists of U(g) and their coboundary deformations.

Series are graded by powers of ``1/kappa``; in terms of ``gamma = -1/kappa``,
``h = -D`` and ``e = P = v.P`` the base twist is the Jordanian
``exp(ln(1 + gamma e) ⊗ h)``.

Families (``u`` rational):

* ``F0 = exp(-ln(1 - P/kappa) ⊗ D)``
* ``F1 = (F0)^flip`` at ``kappa -> -kappa`` ``= exp(-D ⊗ ln(1 + P/kappa))``
* ``L(u)``: coboundary of F0 by ``omega_L = exp(-(u/kappa) D P)``
* ``R(u)``: coboundary of F0 by ``omega_R = exp(-(u/kappa) P D)``
* ``LR(u)``: coboundary of F0 by ``omega_LR = exp(-(u/2kappa)(DP + PD))``

A coboundary of ``F`` by ``omega`` is ``(omega^-1 ⊗ omega^-1) F Delta(omega)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from gmpy2 import mpq

from ..ncalg import Config, Series, as_scalar, coproduct
from ..ncalg.series import AlgebraError

__all__ = ["Family", "Twist", "build_twist", "coboundary_conjugate", "omega_exponent", "identity_twist"]


class Family(str, Enum):
    F0 = "F0"
    F1 = "F1"
    L = "L"
    R = "R"
    LR = "LR"
    COBOUNDARY = "coboundary"
    CUSTOM = "custom"

    @classmethod
    def parse(cls, name) -> "Family":
        if isinstance(name, Family):
            return name
        aliases = {"FL": "L", "FR": "R", "FLR": "LR", "f0": "F0", "f1": "F1"}
        key = aliases.get(str(name), str(name))
        for fam in cls:
            if fam.value.lower() == key.lower():
                return fam
        raise ValueError(f"unknown twist family {name!r}")

    @property
    def parametric(self) -> bool:
        return self in (Family.L, Family.R, Family.LR)


@dataclass(frozen=True, eq=False)
class Twist:
    """A twist element together with its exact inverse."""

    element: Series
    inverse: Series
    family: Family
    cfg: Config
    u: object = None

    @property
    def order(self) -> int:
        return self.element.order

    @cached_property
    def u_matrix(self) -> Series:
        """``U = mu((1 ⊗ S) F)``, the element conjugating S into S^F."""
        from ..ncalg import antipode, mu

        return mu(antipode(self.element, leg=1))

    @cached_property
    def u_matrix_inverse(self) -> Series:
        """``U^-1 = mu((S ⊗ 1) F^-1)``."""
        from ..ncalg import antipode, mu

        return mu(antipode(self.inverse, leg=0))

    def label(self) -> str:
        return self.family.value if self.u is None else f"{self.family.value}(u={self.u})"

    def truncate(self, order: int) -> "Twist":
        return Twist(self.element.truncate(order), self.inverse.truncate(order), self.family, self.cfg.with_order(order), self.u)


def omega_exponent(family, u, cfg: Config) -> Series:
    """The exponent ``X`` with ``omega = exp(X)`` for the L, R and LR families."""
    fam = Family.parse(family)
    u = as_scalar(u)
    P, D = cfg.Pv(), cfg.D()
    if fam is Family.L:
        return (D * P).scale(-u, 1)
    if fam is Family.R:
        return (P * D).scale(-u, 1)
    if fam is Family.LR:
        return (D * P + P * D).scale(-u / 2, 1)
    raise ValueError(f"{fam.value} is not a coboundary family")


def f0_exponent(cfg: Config) -> Series:
    """``-ln(1 - P/kappa) ⊗ D``."""
    sigma = -(cfg.Pv().scale(-1, 1).log1p())
    return sigma.tensor(cfg.D())


def identity_twist(cfg: Config) -> Twist:
    one = cfg.one(2)
    return Twist(one, one, Family.CUSTOM, cfg)


def _f0(cfg: Config) -> Twist:
    A = f0_exponent(cfg)
    return Twist(A.exp(), (-A).exp(), Family.F0, cfg, mpq(0))


def _coboundary_from_exponent(F: Twist, X: Series, family: Family, u) -> Twist:
    # (w^-1 ⊗ w^-1) F Delta(w) with w = exp(X); inverses factor by factor
    leg = X.tensor(F.cfg.one()) + F.cfg.one().tensor(X)
    dX = coproduct(X)
    elem = (-leg).exp() * F.element * dX.exp()
    inv = (-dX).exp() * F.inverse * leg.exp()
    return Twist(elem, inv, family, F.cfg, u)


def build_twist(family, u=None, cfg: Config | None = None) -> Twist:
    """Construct one of the twist families at the configuration's order."""
    cfg = cfg or Config()
    fam = Family.parse(family)
    if fam.parametric and u is None:
        raise ValueError(f"family {fam.value} needs a parameter u")
    F0 = _f0(cfg)
    if fam is Family.F0:
        return F0
    if fam is Family.F1:
        return Twist(
            F0.element.flip().kappa_flip(),
            F0.inverse.flip().kappa_flip(),
            Family.F1,
            cfg,
            mpq(1),
        )
    if fam.parametric:
        u = as_scalar(u)
        return _coboundary_from_exponent(F0, omega_exponent(fam, u, cfg), fam, u)
    raise ValueError(f"build_twist does not construct {fam.value} twists; use coboundary_conjugate")


def coboundary_conjugate(F: Twist, omega: Series) -> Twist:
    """Gauge transform ``F_omega = (omega^-1 ⊗ omega^-1) F Delta(omega)``.

    ``omega`` must be invertible as a series: its kappa^0 part a nonzero
    multiple of the unit.
    """
    try:
        omega_inv = omega.inverse()
    except AlgebraError as exc:
        raise AlgebraError(f"omega is not invertible as a series: {exc}") from exc
    legs_inv = omega_inv.tensor(omega_inv)
    legs = omega.tensor(omega)
    d = coproduct(omega)
    d_inv = coproduct(omega_inv)
    elem = legs_inv * F.element * d
    inv = d_inv * F.inverse * legs
    return Twist(elem, inv, Family.COBOUNDARY, F.cfg, F.u)
