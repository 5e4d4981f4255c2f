"""Exact verifications of twist, Hopf, R-matrix and *-structure identities.

Every check returns a :class:`~jordanian.report.Report`; a failure is a report
outcome carrying the lowest kappa power of the residual, never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..ncalg import Config, Series, antipode, as_scalar, conjugate, coproduct, counit, mu
from ..report import Report, combine_reports, compare, format_u
from .structure import closed_form_antipode, closed_form_coproduct, omega_pp, twisted_antipode, twisted_coproduct
from .twists import Family, Twist, build_twist, coboundary_conjugate, omega_exponent

__all__ = [
    "RMatrix",
    "r_matrix",
    "check_inverse",
    "check_normalization",
    "check_cocycle",
    "check_reductions",
    "check_closed_forms",
    "check_lr_momenta_agree",
    "check_lr_dilatation_differs",
    "check_coassociativity",
    "check_counit",
    "check_antipode_axiom",
    "check_family_relation",
    "check_exponential_identity",
    "check_r_relations",
    "check_qybe",
    "check_classical_part",
    "cybe_check",
    "check_star_structures",
    "check_majid",
    "check_r_symmetry",
    "check_dagger",
    "check_gauge_isomorphism",
]


def _fam(F: Twist) -> str:
    return F.family.value


def _u(F: Twist):
    return F.u if F.family.parametric else None


# ------------------------------------------------------------------ twists
def check_inverse(F: Twist) -> Report:
    one = F.cfg.one(2)
    return combine_reports(
        "inverse",
        [compare("l", F.element * F.inverse, one), compare("r", F.inverse * F.element, one)],
        family=_fam(F),
        u=_u(F),
        N=F.order,
    )


def check_normalization(F: Twist | Series, cfg: Config | None = None) -> Report:
    """``(eps ⊗ id)F = (id ⊗ eps)F = 1``."""
    elem = F.element if isinstance(F, Twist) else F
    cfg = cfg or F.cfg
    one = cfg.one()
    parts = [compare("l", counit(elem, 0), one), compare("r", counit(elem, 1), one)]
    fam = _fam(F) if isinstance(F, Twist) else "custom"
    return combine_reports("normalization", parts, family=fam, u=_u(F) if isinstance(F, Twist) else None, N=elem.order)


def cocycle_sides(elem: Series, triple_order: int):
    """``(F ⊗ 1)(Delta ⊗ id)F`` and ``(1 ⊗ F)(id ⊗ Delta)F`` at the given order."""
    f = elem.truncate(triple_order)
    lhs = f.embed(3, (0, 1)) * coproduct(f, 0)
    rhs = f.embed(3, (1, 2)) * coproduct(f, 1)
    return lhs, rhs


def check_cocycle(F: Twist | Series, triple_order: int | None = None) -> Report:
    elem = F.element if isinstance(F, Twist) else F
    if triple_order is None:
        triple_order = F.cfg.triple_order if isinstance(F, Twist) else elem.order
    if triple_order > elem.order:
        raise ValueError("triple order exceeds the truncation order")
    lhs, rhs = cocycle_sides(elem, triple_order)
    fam = _fam(F) if isinstance(F, Twist) else "custom"
    return compare("cocycle", lhs, rhs, family=fam, u=_u(F) if isinstance(F, Twist) else None, N=triple_order)


def check_reductions(cfg: Config) -> list[Report]:
    """``F_L,0 = F_R,0 = F0`` and ``F_L,1 = F_R,1 = F1``."""
    F0 = build_twist("F0", cfg=cfg)
    F1 = build_twist("F1", cfg=cfg)
    out = []
    for fam in (Family.L, Family.R):
        for u, base in ((0, F0), (1, F1)):
            F = build_twist(fam, u, cfg)
            out.append(
                combine_reports(
                    f"reduction-to-{base.family.value}",
                    [compare("F", F.element, base.element), compare("F^-1", F.inverse, base.inverse)],
                    family=fam.value,
                    u=u,
                    N=cfg.N,
                )
            )
    return out


# ------------------------------------------------------------ Hopf data
def check_closed_forms(F: Twist) -> list[Report]:
    """Conjugation coproducts/antipodes against the closed forms, per generator."""
    cfg = F.cfg
    out = []
    for name, z in cfg.generators():
        out.append(
            compare(
                f"closed-form-coproduct-{name}",
                twisted_coproduct(F, z),
                closed_form_coproduct(F.family, F.u, name, cfg),
                family=_fam(F),
                u=_u(F),
            )
        )
        out.append(
            compare(
                f"closed-form-antipode-{name}",
                twisted_antipode(F, z),
                closed_form_antipode(F.family, F.u, name, cfg),
                family=_fam(F),
                u=_u(F),
            )
        )
    return out


def check_lr_momenta_agree(u, cfg: Config) -> list[Report]:
    FL, FR = build_twist("L", u, cfg), build_twist("R", u, cfg)
    out = []
    for mu_ in range(cfg.n):
        z = cfg.P(mu_)
        out.append(compare(f"L-R-coproduct-P{mu_}", twisted_coproduct(FL, z), twisted_coproduct(FR, z), family="L|R", u=u))
        out.append(compare(f"L-R-antipode-P{mu_}", twisted_antipode(FL, z), twisted_antipode(FR, z), family="L|R", u=u))
    return out


def check_lr_dilatation_differs(u, cfg: Config) -> list[Report]:
    """Negative claim: ``Delta_L(D) != Delta_R(D)`` and ``S_L(D) != S_R(D)``.

    Each report passes when the difference is nonzero and records the lowest
    kappa power at which it appears.
    """
    FL, FR = build_twist("L", u, cfg), build_twist("R", u, cfg)
    D = cfg.D()
    cop = compare("L-R-coproduct-D", twisted_coproduct(FL, D), twisted_coproduct(FR, D), family="L|R", u=u)
    ant = compare("L-R-antipode-D", twisted_antipode(FL, D), twisted_antipode(FR, D), family="L|R", u=u)
    return [cop.expect_failure("L-R-coproduct-D-differs"), ant.expect_failure("L-R-antipode-D-differs")]


def _twisted_on_leg(F: Twist, T: Series, leg: int) -> Series:
    """``Delta^F`` applied to one leg of a two-leg tensor, by conjugation."""
    if leg == 0:
        return F.element.embed(3, (0, 1)) * coproduct(T, 0) * F.inverse.embed(3, (0, 1))
    return F.element.embed(3, (1, 2)) * coproduct(T, 1) * F.inverse.embed(3, (1, 2))


def check_coassociativity(F: Twist, triple_order: int | None = None) -> Report:
    t = triple_order or F.cfg.triple_order
    G = F.truncate(t)
    parts = []
    for name, z in G.cfg.generators():
        d = twisted_coproduct(G, z)
        parts.append(compare(name, _twisted_on_leg(G, d, 0), _twisted_on_leg(G, d, 1)))
    return combine_reports("coassociativity", parts, family=_fam(F), u=_u(F), N=t)


def check_counit(F: Twist) -> Report:
    parts = []
    for name, z in F.cfg.generators():
        d = twisted_coproduct(F, z)
        parts += [compare(name, counit(d, 0), z), compare(name, counit(d, 1), z)]
    return combine_reports("counit-axiom", parts, family=_fam(F), u=_u(F), N=F.order)


def _twisted_antipode_on_leg(F: Twist, T: Series, leg: int) -> Series:
    one = F.cfg.one()
    U, Ui = F.u_matrix, F.u_matrix_inverse
    if leg == 0:
        return U.tensor(one) * antipode(T, 0) * Ui.tensor(one)
    return one.tensor(U) * antipode(T, 1) * one.tensor(Ui)


def check_antipode_axiom(F: Twist) -> Report:
    """``mu(S^F ⊗ id)Delta^F(Z) = mu(id ⊗ S^F)Delta^F(Z) = eps(Z) 1`` on generators and 1."""
    cfg = F.cfg
    parts = []
    for name, z in cfg.generators() + [("1", cfg.one())]:
        d = twisted_coproduct(F, z)
        eps = cfg.one().scale(counit(z).coefficient(()))
        parts.append(compare(name, mu(_twisted_antipode_on_leg(F, d, 0)), eps))
        parts.append(compare(name, mu(_twisted_antipode_on_leg(F, d, 1)), eps))
    return combine_reports("antipode-axiom", parts, family=_fam(F), u=_u(F), N=F.order)


# ------------------------------------------------------------ relations
def check_family_relation(u, cfg: Config) -> list[Report]:
    """Relations between the L, R and LR twists through ``Omega``."""
    FL, FR, FLR = (build_twist(f, u, cfg) for f in ("L", "R", "LR"))
    om = omega_pp(cfg, u)
    root = om.sqrt()
    return [
        compare("twist-relation-R-L", FR.inverse, FL.inverse * om.inverse(), family="L|R", u=u),
        combine_reports(
            "twist-relation-LR",
            [
                compare("L", FLR.inverse, FL.inverse * root.inverse()),
                compare("R", FLR.inverse, FR.inverse * root),
            ],
            family="LR",
            u=u,
            N=cfg.N,
        ),
    ]


def check_exponential_identity(u, cfg: Config) -> Report:
    """``exp((u/kappa) PD) exp(-(u/kappa) DP) = 1 + (u/kappa) P``."""
    u = as_scalar(u)
    P, D = cfg.Pv(), cfg.D()
    lhs = (P * D).scale(u, 1).exp() * (D * P).scale(-u, 1).exp()
    return compare("exponential-identity", lhs, cfg.one() + P.scale(u, 1), u=u)


@dataclass(frozen=True, eq=False)
class RMatrix:
    element: Series
    classical_part: Series
    family: str = "-"
    u: object = None


def r_matrix(F: Twist) -> RMatrix:
    """``R = F^flip F^-1`` and its kappa^-1 coefficient."""
    R = F.element.flip() * F.inverse
    return RMatrix(R, R.part(1), _fam(F), _u(F))


def check_r_relations(u, cfg: Config) -> list[Report]:
    """``R_L = Omega^-1 R_R Omega`` and ``R_LR = sqrt(Omega) R_L sqrt(Omega)^-1``."""
    RL, RR, RLR = (r_matrix(build_twist(f, u, cfg)).element for f in ("L", "R", "LR"))
    om = omega_pp(cfg, u)
    root = om.sqrt()
    return [
        compare("r-relation-L-R", RL, om.inverse() * RR * om, family="L|R", u=u),
        compare("r-relation-LR-L", RLR, root * RL * root.inverse(), family="LR", u=u),
    ]


def check_qybe(R: RMatrix | Series, triple_order: int = 3, family="-", u=None) -> Report:
    el = R.element if isinstance(R, RMatrix) else R
    if isinstance(R, RMatrix):
        family, u = R.family, R.u
    r = el.truncate(triple_order)
    r12, r13, r23 = r.embed(3, (0, 1)), r.embed(3, (0, 2)), r.embed(3, (1, 2))
    return compare("qybe", r12 * r13 * r23, r23 * r13 * r12, family=family, u=u, N=triple_order)


def _unshift(x: Series, by: int) -> Series:
    """Lower every kappa power by ``by`` (the terms must all have order >= by)."""
    return Series(x.algebra, x.legs, x.order, {(m - by, mons): c for (m, mons), c in x.terms.items()})


def cybe_check(r: Series) -> Report:
    """``[r12, r13] + [r12, r23] + [r13, r23] = 0`` for a two-leg ``r``."""
    lo = r.lowest_order() or 0
    r = _unshift(r, lo)
    r12, r13, r23 = r.embed(3, (0, 1)), r.embed(3, (0, 2)), r.embed(3, (1, 2))
    total = r12.commutator(r13) + r12.commutator(r23) + r13.commutator(r23)
    return compare("cybe", total, total.scale(0), N=r.order)


def check_classical_part(F: Twist) -> list[Report]:
    R = r_matrix(F)
    cfg = F.cfg
    P, D = cfg.Pv(), cfg.D()
    expected = (D.tensor(P) - P.tensor(D)).scale(1, 1)
    r = R.classical_part
    return [
        compare("r-matrix-unit", R.element.part(0), cfg.one(2), family=_fam(F), u=_u(F)),
        compare("classical-r", r, expected, family=_fam(F), u=_u(F)),
        compare("classical-r-antisymmetric", r.flip(), -r, family=_fam(F), u=_u(F)),
        _relabel(cybe_check(r), family=_fam(F), u=_u(F)),
    ]


def _relabel(rep: Report, **kw) -> Report:
    from dataclasses import replace

    if "u" in kw:
        kw["u"] = format_u(kw["u"])
    return replace(rep, **kw)


# ------------------------------------------------------------ real forms
def check_star_structures(u, cfg: Config) -> list[Report]:
    """*-unitarity of F0, F1, F_LR; and the conjugation relations between L and R."""
    u = as_scalar(u)
    out = []
    for fam in ("F0", "F1"):
        F = build_twist(fam, cfg=cfg)
        out.append(compare("unitary", conjugate(F.element), F.inverse, family=fam))
    FLR = build_twist("LR", u, cfg)
    out.append(compare("unitary", conjugate(FLR.element), FLR.inverse, family="LR", u=u))
    FL, FR = build_twist("L", u, cfg), build_twist("R", u, cfg)
    out.append(compare("star-L-is-R-inverse", conjugate(FL.element), FR.inverse, family="L|R", u=u))
    FR_dual = build_twist("R", 1 - u, cfg)
    cop, ant = [], []
    for name, z in cfg.generators():
        zs = conjugate(z)
        cop.append(compare(name, conjugate(twisted_coproduct(FL, z)), twisted_coproduct(FR, zs)))
        ant.append(compare(name, conjugate(twisted_antipode(FL, z)), twisted_antipode(FR_dual, zs).kappa_flip()))
    out.append(combine_reports("star-coproduct-L-R", cop, family="L|R", u=u, N=cfg.N))
    out.append(combine_reports("star-antipode-L-R", ant, family="L|R", u=u, N=cfg.N))
    return out


def majid_lhs(F: Twist) -> Series:
    """``(S ⊗ S)(F^{*⊗*})``."""
    return antipode(conjugate(F.element))


def check_majid(F: Twist) -> Report:
    """``(S ⊗ S)(F^{*⊗*}) = F^flip``."""
    lhs = majid_lhs(F)
    rep = compare("majid", lhs, F.element.flip(), family=_fam(F), u=_u(F))
    same_as_kflip = lhs == F.element.kappa_flip()
    return _relabel(rep, detail=f"equals F at -kappa: {'yes' if same_as_kflip else 'no'}")


def check_r_symmetry(F: Twist) -> Report:
    """The kappa^-1 coefficient of F is antisymmetric under the flip."""
    f1 = F.element.part(1)
    return compare("r-symmetric", f1.flip(), -f1, family=_fam(F), u=_u(F))


# ------------------------------------------------------------ dagger
def _dagger_generators(F: Twist):
    """``Z^dagger = -S^F(Z^*)`` for each generator."""
    return {name: -twisted_antipode(F, conjugate(z)) for name, z in F.cfg.generators()}


def dagger(F: Twist, x: Series, gens=None) -> Series:
    """Antilinear anti-multiplicative extension of ``Z -> -S^F(Z^*)``."""
    cfg = F.cfg
    gens = gens or _dagger_generators(F)
    images = [gens[f"P{j}"] for j in range(cfg.n)] + [gens["D"]]
    cache = {}

    def word_image(mono):
        hit = cache.get(mono)
        if hit is None:
            hit = cfg.one()
            # (P_0^a0 ... D^b)^dagger = (D^dagger)^b ... (P_0^dagger)^a0
            for j in reversed(range(cfg.n + 1)):
                for _ in range(mono[j]):
                    hit = hit * images[j]
            cache[mono] = hit
        return hit

    out = cfg.zero()
    for (m, (mono,)), c in x.conjugate_coefficients().terms.items():
        out = out + word_image(mono).scale(c, m)
    return out


def check_dagger(F: Twist, max_word: int = 3) -> list[Report]:
    """Dagger ``Z -> -S^F(Z^*)``: compatibility with the relations, involutivity on short words."""
    cfg = F.cfg
    gens = _dagger_generators(F)
    Ps = [gens[f"P{j}"] for j in range(cfg.n)]
    Dd = gens["D"]
    rel = [compare(f"P{j}", Dd * Ps[j] - Ps[j] * Dd, Ps[j]) for j in range(cfg.n)]
    rel += [compare(f"P{i}P{j}", Ps[i] * Ps[j], Ps[j] * Ps[i]) for i in range(cfg.n) for j in range(i + 1, cfg.n)]
    invol = []
    letters = cfg.generators()
    for length in range(1, max_word + 1):
        for word in product(letters, repeat=length):
            w = cfg.one()
            for _, z in word:
                w = w * z
            invol.append(compare("".join(n for n, _ in word), dagger(F, dagger(F, w, gens), gens), w))
    kw = dict(family=_fam(F), u=_u(F), N=cfg.N)
    return [
        combine_reports("dagger-relations", rel, **kw),
        combine_reports("dagger-involutive", invol, **kw),
    ]


# ------------------------------------------------------------ gauge
def check_gauge_isomorphism(F: Twist, omega: Series, label: str = "omega") -> Report:
    """``(alpha ⊗ alpha)(Delta^{F_omega}(alpha^-1(Z))) = Delta^F(Z)``, ``alpha(Z) = omega Z omega^-1``."""
    Fw = coboundary_conjugate(F, omega)
    wi = omega.inverse()
    ww, wwi = omega.tensor(omega), wi.tensor(wi)
    parts = []
    for name, z in F.cfg.generators():
        pulled = wi * z * omega
        lhs = ww * twisted_coproduct(Fw, pulled) * wwi
        parts.append(compare(name, lhs, twisted_coproduct(F, z)))
    return combine_reports(f"gauge-isomorphism-{label}", parts, family=_fam(F), u=_u(F), N=F.order)


def coboundary_omega(family, u, cfg: Config) -> Series:
    return omega_exponent(family, u, cfg).exp()
