"""Named groups of checks run by the command line and the acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .hopf import (
    build_twist,
    check_antipode_axiom,
    check_classical_part,
    check_closed_forms,
    check_coassociativity,
    check_cocycle,
    check_counit,
    check_dagger,
    check_exponential_identity,
    check_family_relation,
    check_gauge_isomorphism,
    check_inverse,
    check_lr_dilatation_differs,
    check_lr_momenta_agree,
    check_majid,
    check_normalization,
    check_qybe,
    check_r_relations,
    check_r_symmetry,
    check_reductions,
    check_star_structures,
    coboundary_omega,
    r_matrix,
)
from .ncalg import Config, as_scalar
from .report import Report, format_u

__all__ = ["Settings", "GROUPS", "DEFAULT_U", "run", "group_names"]

DEFAULT_U = tuple(Fraction(x) for x in ("0", "1/4", "1/2", "3/4", "1", "2"))


@dataclass
class Settings:
    n: int = 2
    N: int = 6
    triple_order: int = 4
    u: tuple = DEFAULT_U
    u_given: bool = False
    families: tuple = ("F0", "F1", "L", "R", "LR")
    kappa: float = 1.0
    v: tuple | None = None
    seed: int = 42
    samples: int = 100
    tol: float = 1e-9
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def cfg(self) -> Config:
        key = ("cfg",)
        if key not in self._cache:
            self._cache[key] = Config(n=self.n, N=self.N, v=self.v, triple_order=self.triple_order)
        return self._cache[key]

    def twist(self, family, u=None):
        key = ("twist", family, None if family in ("F0", "F1") else u)
        if key not in self._cache:
            self._cache[key] = build_twist(family, key[2], self.cfg)
        return self._cache[key]

    def twists(self):
        """Every selected (family, u) twist; F0 and F1 once."""
        for fam in self.families:
            if fam in ("F0", "F1"):
                yield self.twist(fam)
            else:
                for u in self.u:
                    yield self.twist(fam, u)

    def u_or(self, default):
        return self.u if self.u_given else tuple(Fraction(x) for x in default)

    def float_v(self):
        v = self.cfg.v
        return tuple(float(x) for x in v)


def _twists(s: Settings):
    out = []
    for F in s.twists():
        out += [check_inverse(F), check_normalization(F), check_cocycle(F, s.triple_order)]
    return out


def _reductions(s: Settings):
    return check_reductions(s.cfg)


def _closed_forms(s: Settings):
    out = []
    for F in s.twists():
        out += check_closed_forms(F)
    return out


def _lr(s: Settings):
    out = []
    for u in s.u:
        out += check_lr_momenta_agree(u, s.cfg)
        if u not in (0, 1):
            out += check_lr_dilatation_differs(u, s.cfg)
    return out


def _axioms(s: Settings):
    out = []
    for F in s.twists():
        out += [check_coassociativity(F, s.triple_order), check_counit(F), check_antipode_axiom(F)]
    return out


def _relations(s: Settings):
    out = []
    for u in s.u:
        out += check_family_relation(u, s.cfg)
        out.append(check_exponential_identity(u, s.cfg))
        out += check_r_relations(u, s.cfg)
    return out


def _rmatrix(s: Settings):
    out = []
    for F in s.twists():
        out.append(check_qybe(r_matrix(F), min(3, s.N)))
        out += check_classical_part(F)
    return out


def _real_forms(s: Settings):
    out = []
    for u in s.u:
        out += check_star_structures(u, s.cfg)
    return out


def _parametric(s: Settings):
    return [f for f in s.families if f in ("L", "R", "LR")] or ["L", "R", "LR"]


def _majid(s: Settings):
    return [check_majid(s.twist(f, u)) for f in _parametric(s) for u in s.u_or(["1/2"])]


def _majid_fails(s: Settings):
    out = []
    for f in _parametric(s):
        for u in s.u_or(["1/4", "3/4"]):
            rep = check_majid(s.twist(f, u))
            out.append(rep.expect_failure("majid-fails", rep.detail))
    return out


def _r_symmetry(s: Settings):
    out = [check_r_symmetry(s.twist(f, u)) for f in _parametric(s) for u in s.u_or(["1/2"])]
    for f in _parametric(s):
        for u in s.u_or(["1/4", "3/4"]):
            out.append(check_r_symmetry(s.twist(f, u)).expect_failure("r-symmetric-fails"))
    return out


def _dagger(s: Settings):
    out = []
    for f in ("L", "R"):
        for u in s.u_or(["1/4", "1/2"]):
            reps = check_dagger(s.twist(f, u), max_word=2)
            out.append(reps[0])
            out.append(reps[1] if u == Fraction(1, 2) else reps[1].expect_failure("dagger-involutive-fails"))
    return out


def _gauge(s: Settings):
    F0 = s.twist("F0")
    out = []
    for f in ("L", "R", "LR"):
        for u in s.u_or(["1/2"]):
            out.append(check_gauge_isomorphism(F0, coboundary_omega(f, u, s.cfg), f"{f}-{format_u(u)}"))
    return out


def _weyl(s: Settings):
    from .weyl import (
        check_chi_difference,
        check_commutators,
        check_dilatation_substitution,
        check_jacobi,
        check_realization,
        xhat_from_twist,
    )

    cfg = s.cfg
    out = []
    for F in s.twists():
        if F.family.value == "LR":
            continue
        out.append(check_realization(F))
        xh = [xhat_from_twist(F, mu, stabilize=False) for mu in range(cfg.n)]
        u = {"F0": 0, "F1": 1}.get(F.family.value, F.u)
        out += check_commutators(xh, u, cfg, F.family.value)
        out.append(check_jacobi(xh, cfg, F.family.value, F.u))
        out.append(check_dilatation_substitution(F.family, F.u, cfg))
    for u in s.u:
        out.append(check_chi_difference(u, cfg))
    return out


def _float_points(s: Settings, default):
    pts = [float(u) for u in s.u_or(default)]
    return pts


def _starlab(s: Settings):
    from .starlab import StarParams, check_ode_oracle, check_star_properties, star_kernel

    out = []
    v = s.float_v()
    for u in _float_points(s, ["0", "1/4", "1/2", "3/4", "1", "2"]):
        p = StarParams(u, s.kappa, v)
        out += check_ode_oracle(p, s.samples, s.seed, s.tol)
        out += check_star_properties(p, s.samples, s.seed, s.tol)
    p = StarParams(0.5, 1.0, (1.0,) + (0.0,) * (s.n - 1))
    e = [1.0] + [0.0] * (s.n - 1)
    amp = star_kernel(p, e, e, "R").amplitude
    out.append(Report("amplitude", "R", "1/2", 0, abs(amp - 0.8) <= 1e-12, None, 0, f"amplitude {amp!r}"))
    return out


def _bridge(s: Settings):
    from .starlab import StarParams, coproduct_consistency

    out = []
    v = s.float_v()
    k = [0.7, 0.3] + [0.2] * (s.n - 2)
    q = [-0.4, 0.5] + [-0.1] * (s.n - 2)
    for fam in ("L", "R"):
        for u in s.u_or(["1/4", "1/2", "3/4"]):
            for N in sorted({4, s.N}):
                p = StarParams(float(u), 4.0, v)
                out.append(coproduct_consistency(p, fam, N, k[: s.n], q[: s.n]))
    return out


def _ordexp(s: Settings):
    from .ordexp import check_conjugation, check_ordering_1d, check_ordering_nd, check_q_boundary, family_realization

    out = []
    for u in s.u_or(["1/4", "1/2", "3/4"]):
        u = as_scalar(u)
        phi = [1, 2 * u - 1, -u * (1 - u)]
        out.append(replace(check_ordering_1d(phi, 8, "1d-family"), u=format_u(u)))
    rng = random.Random(s.seed)
    for j in range(10):
        phi = [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(4)]
        out.append(check_ordering_1d(phi, 8, f"cubic-{j}"))
    out.append(check_conjugation([1, 0, Fraction(-1, 4)], 6, "1d-family"))
    for fam in ("L", "R"):
        for u in s.u_or(["1/2"]):
            real = family_realization(fam, u, s.n, 5, v=s.cfg.v)
            rep, Q = check_ordering_nd(real, 5, fam, u)
            out += [rep, check_q_boundary(Q, u, 5, v=s.cfg.v, family=fam)]
    return out


GROUPS = {
    "reductions": _reductions,
    "twists": _twists,
    "closed-forms": _closed_forms,
    "lr": _lr,
    "axioms": _axioms,
    "relations": _relations,
    "rmatrix": _rmatrix,
    "real-forms": _real_forms,
    "majid": _majid,
    "majid-fails": _majid_fails,
    "r-symmetry": _r_symmetry,
    "dagger": _dagger,
    "gauge": _gauge,
    "weyl": _weyl,
    "starlab": _starlab,
    "bridge": _bridge,
    "ordexp": _ordexp,
}

# groups whose expected outcome depends on u: a user-supplied u list only
# applies to them when they are selected by name
_U_SENSITIVE = {"majid", "majid-fails", "r-symmetry", "dagger", "gauge", "ordexp", "bridge"}


def group_names():
    return list(GROUPS)


def run(s: Settings, groups=None) -> list[Report]:
    names = list(groups) if groups else list(GROUPS)
    unknown = [g for g in names if g not in GROUPS]
    if unknown:
        raise KeyError(", ".join(unknown))
    fixed = replace(s, u_given=False)
    out = []
    for g in names:
        use = fixed if (not groups and g in _U_SENSITIVE) else s
        out += GROUPS[g](use)
    return out
