"""Jordanian twists, the twisted Hopf structures they induce, and exact checks."""

from .checks import (
    RMatrix,
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
    cybe_check,
    dagger,
    majid_lhs,
    r_matrix,
)
from .structure import (
    HopfData,
    closed_form_antipode,
    closed_form_coproduct,
    closed_form_hopf,
    hopf_data,
    omega_pp,
    twisted_antipode,
    twisted_coproduct,
)
from .twists import Family, Twist, build_twist, coboundary_conjugate, identity_twist, omega_exponent

__all__ = [
    "Family",
    "HopfData",
    "RMatrix",
    "Twist",
    "build_twist",
    "check_antipode_axiom",
    "check_classical_part",
    "check_closed_forms",
    "check_coassociativity",
    "check_cocycle",
    "check_counit",
    "check_dagger",
    "check_exponential_identity",
    "check_family_relation",
    "check_gauge_isomorphism",
    "check_inverse",
    "check_lr_dilatation_differs",
    "check_lr_momenta_agree",
    "check_majid",
    "check_normalization",
    "check_qybe",
    "check_r_relations",
    "check_r_symmetry",
    "check_reductions",
    "check_star_structures",
    "closed_form_antipode",
    "closed_form_coproduct",
    "closed_form_hopf",
    "coboundary_conjugate",
    "coboundary_omega",
    "cybe_check",
    "dagger",
    "hopf_data",
    "identity_twist",
    "majid_lhs",
    "omega_exponent",
    "omega_pp",
    "r_matrix",
    "twisted_antipode",
    "twisted_coproduct",
]
