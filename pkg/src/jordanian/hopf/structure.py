"""Twisted Hopf data: coproducts and antipodes by conjugation, and their closed forms."""

from __future__ import annotations

from dataclasses import dataclass

from ..ncalg import Config, Series, antipode, as_scalar, coproduct
from .twists import Family, Twist

__all__ = [
    "twisted_coproduct",
    "twisted_antipode",
    "hopf_data",
    "HopfData",
    "closed_form_coproduct",
    "closed_form_antipode",
    "closed_form_hopf",
    "omega_pp",
]


def twisted_coproduct(F: Twist, z: Series) -> Series:
    """``Delta^F(z) = F Delta(z) F^-1``."""
    return F.element * coproduct(z) * F.inverse


def twisted_antipode(F: Twist, z: Series) -> Series:
    """``S^F(z) = U S(z) U^-1`` with ``U = mu((1 ⊗ S)F)``."""
    return F.u_matrix * antipode(z) * F.u_matrix_inverse


@dataclass(frozen=True, eq=False)
class HopfData:
    twist: Twist
    coproducts: dict
    antipodes: dict


def hopf_data(F: Twist) -> HopfData:
    gens = F.cfg.generators()
    return HopfData(
        F,
        {name: twisted_coproduct(F, z) for name, z in gens},
        {name: twisted_antipode(F, z) for name, z in gens},
    )


# ------------------------------------------------------------ closed forms
def _family_u(family, u):
    fam = Family.parse(family)
    if fam is Family.F0:
        return Family.L, as_scalar(0)
    if fam is Family.F1:
        return Family.L, as_scalar(1)
    if not fam.parametric:
        raise ValueError(f"no closed form for family {fam.value}")
    if u is None:
        raise ValueError(f"family {fam.value} needs a parameter u")
    return fam, as_scalar(u)


def _lin(cfg: Config, c) -> Series:
    """``1 + c P/kappa``."""
    return cfg.one() + cfg.Pv(1, c)


def omega_pp(cfg: Config, u) -> Series:
    """``Omega = 1⊗1 + u(1-u) kappa^-2 P⊗P``."""
    u = as_scalar(u)
    return cfg.one(2) + cfg.Pv().tensor(cfg.Pv()).scale(u * (1 - u), 2)


def closed_form_coproduct(family, u, z: str, cfg: Config) -> Series:
    """Closed-form ``Delta^F(z)`` for ``z`` one of ``"P0".."P{n-1}"``, ``"D"``."""
    fam, u = _family_u(family, u)
    a = _lin(cfg, u)
    b = _lin(cfg, u - 1)
    om = omega_pp(cfg, u)
    if z.startswith("P"):
        Pm = cfg.P(_index(z, cfg))
        return (Pm.tensor(a) + b.tensor(Pm)) * om.inverse()
    if z != "D":
        raise ValueError(f"unsupported generator {z!r}")
    D = cfg.D()
    core = D.tensor(a.inverse()) + b.inverse().tensor(D)
    if fam is Family.L:
        return core * om
    if fam is Family.R:
        return om * core
    root = om.sqrt()
    return root * core * root


def closed_form_antipode(family, u, z: str, cfg: Config) -> Series:
    """Closed-form ``S^F(z)``."""
    fam, u = _family_u(family, u)
    a = _lin(cfg, u)
    b = _lin(cfg, u - 1)
    c = _lin(cfg, 2 * u - 1)
    if z.startswith("P"):
        return -(cfg.P(_index(z, cfg)) * c.inverse())
    if z != "D":
        raise ValueError(f"unsupported generator {z!r}")
    D = cfg.D()
    if fam is Family.L:
        return -(c * a.inverse() * D * a)
    if fam is Family.R:
        return -(b * D * c * b.inverse())
    left = (b * a.inverse() * c).sqrt()
    right = (a * b.inverse() * c).sqrt()
    return -(left * D * right)


def closed_form_hopf(family, u, z: str, cfg: Config, which: str = "coproduct") -> Series:
    if which == "coproduct":
        return closed_form_coproduct(family, u, z, cfg)
    if which == "antipode":
        return closed_form_antipode(family, u, z, cfg)
    raise ValueError(f"unknown Hopf map {which!r}")


def _index(name: str, cfg: Config) -> int:
    try:
        mu = int(name[1:])
    except ValueError:
        raise ValueError(f"unsupported generator {name!r}") from None
    if not 0 <= mu < cfg.n:
        raise ValueError(f"{name} out of range for n={cfg.n}")
    return mu
