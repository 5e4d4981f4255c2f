"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import random
import time
from fractions import Fraction

import pytest

from jordanian.hopf import (
    build_twist,
    check_antipode_axiom,
    check_classical_part,
    check_closed_forms,
    check_coassociativity,
    check_cocycle,
    check_counit,
    check_exponential_identity,
    check_family_relation,
    check_lr_dilatation_differs,
    check_lr_momenta_agree,
    check_majid,
    check_normalization,
    check_qybe,
    check_r_relations,
    check_reductions,
    check_star_structures,
    r_matrix,
)
from jordanian.ncalg import Config
from jordanian.ordexp import check_ordering_1d, check_ordering_nd, check_q_boundary, family_realization
from jordanian.starlab import StarParams, check_ode_oracle, check_star_properties, coproduct_consistency, star_kernel
from jordanian.weyl import check_chi_difference, check_commutators, check_realization, xhat_from_twist

U_GRID = [Fraction(x) for x in ("0", "1/4", "1/2", "3/4", "1", "2")]
CFG = Config(n=2, N=6, triple_order=4)


@pytest.fixture
def say(capsys):
    def emit(number, title, reports, elapsed, limit=None, extra=""):
        failed = [r for r in reports if not r.passed]
        in_time = limit is None or elapsed < limit
        ok = not failed and in_time and bool(reports)
        budget = f" (limit {limit:.0f}s)" if limit else ""
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}: {len(reports) - len(failed)}/{len(reports)} checks, {elapsed:.1f}s{budget}{extra}"
        with capsys.disabled():
            print("\n" + line)
        assert not failed, [r.line() for r in failed]
        assert in_time, line
        return ok

    return emit


def _parametric_twists():
    for fam in ("L", "R", "LR"):
        for u in U_GRID:
            yield build_twist(fam, u, CFG)


def test_criterion_01_twist_reductions(say):
    t = time.perf_counter()
    reps = check_reductions(CFG)
    say(1, "F_L,0 = F_R,0 = F0 and F_L,1 = F_R,1 = F1 at N=6", reps, time.perf_counter() - t, 10)


def test_criterion_02_cocycle_and_normalization(say):
    t = time.perf_counter()
    reps = []
    for F in [build_twist("F0", cfg=CFG), build_twist("F1", cfg=CFG), *_parametric_twists()]:
        reps += [check_normalization(F), check_cocycle(F, 4)]
    say(2, "cocycle and normalization, five families, triple order 4", reps, time.perf_counter() - t, 60)


def test_criterion_03_family_and_r_matrix_relations(say):
    t = time.perf_counter()
    reps = []
    for u in U_GRID:
        reps += check_family_relation(u, CFG)
        reps.append(check_exponential_identity(u, CFG))
        reps += check_r_relations(u, CFG)
    say(3, "F_R^-1 = F_L^-1 Omega^-1, exponential identity, R-matrix relations", reps, time.perf_counter() - t)


def test_criterion_04_hopf_closed_forms(say):
    t = time.perf_counter()
    reps = []
    for F in [build_twist("F0", cfg=CFG), build_twist("F1", cfg=CFG), *_parametric_twists()]:
        reps += check_closed_forms(F)
    orders = []
    for u in U_GRID:
        reps += check_lr_momenta_agree(u, CFG)
        if 0 < u < 1:
            diff = check_lr_dilatation_differs(u, CFG)
            reps += diff
            orders += [r.first_residual_order for r in diff]
    say(4, "twisted coproducts/antipodes equal closed forms; L/R differ on D", reps, time.perf_counter() - t, extra=f"; L/R D-difference orders {sorted(set(orders))}")
    assert orders and all(o is not None for o in orders)


def test_criterion_05_hopf_axioms_and_yang_baxter(say):
    t = time.perf_counter()
    reps = []
    for F in [build_twist("F0", cfg=CFG), build_twist("F1", cfg=CFG), *_parametric_twists()]:
        reps += [check_coassociativity(F, 4), check_counit(F), check_antipode_axiom(F)]
        reps += check_classical_part(F)
        if F.family.value in ("L", "R", "LR"):
            reps.append(check_qybe(r_matrix(F), 3))
    say(5, "coassociativity, counit, antipode, QYBE, classical r and CYBE", reps, time.perf_counter() - t)


def test_criterion_06_real_forms(say):
    t = time.perf_counter()
    reps = []
    for u in U_GRID:
        reps += check_star_structures(u, CFG)
    for fam in ("L", "R"):
        reps.append(check_majid(build_twist(fam, Fraction(1, 2), CFG)))
        for u in (Fraction(1, 4), Fraction(3, 4)):
            rep = check_majid(build_twist(fam, u, CFG))
            reps.append(rep.expect_failure("majid-fails"))
    fail_orders = sorted({r.first_residual_order for r in reps if r.check == "majid-fails"})
    say(6, "unitarity, F_L* = F_R^-1, Majid at 1/2 holds and at 1/4, 3/4 fails", reps, time.perf_counter() - t, extra=f"; failure residual orders {fail_orders}")


def test_criterion_07_realizations(say):
    t = time.perf_counter()
    reps = []
    for F in [build_twist("F0", cfg=CFG), build_twist("F1", cfg=CFG)] + [build_twist(f, u, CFG) for f in ("L", "R") for u in U_GRID]:
        reps.append(check_realization(F))
        xh = [xhat_from_twist(F, mu, stabilize=False) for mu in range(CFG.n)]
        u = {"F0": 0, "F1": 1}.get(F.family.value, F.u)
        reps += check_commutators(xh, u, CFG, F.family.value)
    for u in U_GRID:
        reps.append(check_chi_difference(u, CFG))
    say(7, "realizations (stable N=6 to 7), commutators, L/R difference", reps, time.perf_counter() - t)


def test_criterion_08_numeric_oracles(say):
    t = time.perf_counter()
    reps = []
    for u in (0.0, 0.25, 0.5, 0.75, 1.0, 2.0):
        p = StarParams(u, 1.0, (1.0, 0.0))
        reps += check_ode_oracle(p, samples=100, seed=42, tol=1e-9)
        reps += check_star_properties(p, samples=100, seed=42, tol=1e-9)
    amp = star_kernel(StarParams(0.5, 1.0, (1.0, 0.0)), [1.0, 0.0], [1.0, 0.0], "R").amplitude
    from jordanian.report import Report

    reps.append(Report("amplitude", "R", "1/2", 0, abs(amp - 0.8) <= 1e-12, None, 0))
    say(8, "closed forms vs RK4 to 1e-9, D/gLog identities, amplitude 0.8", reps, time.perf_counter() - t, 30, extra=f"; amplitude {amp!r}")


def test_criterion_09_symbolic_numeric_bridge(say):
    t = time.perf_counter()
    reps = []
    for fam in ("L", "R"):
        for u in (0.25, 0.5, 0.75):
            for N in (4, 6):
                reps.append(coproduct_consistency(StarParams(u, 4.0, (1.0, 0.0)), fam, N, [0.7, 0.3], [-0.4, 0.5]))
    say(9, "truncated coproduct residual scales as kappa^-(N+1)", reps, time.perf_counter() - t)


def test_criterion_10_normal_ordering(say):
    t = time.perf_counter()
    reps = []
    u = Fraction(1, 2)
    reps.append(check_ordering_1d([1, 2 * u - 1, -u * (1 - u)], 8, "family"))
    rng = random.Random(2024)
    for j in range(10):
        phi = [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(3)] + [Fraction(rng.choice([-2, -1, 1, 2]), rng.randint(1, 4))]
        reps.append(check_ordering_1d(phi, 8, f"cubic-{j}"))
    rep, Q = check_ordering_nd(family_realization("R", u, 2, 5), 5, "R", u)
    reps += [rep, check_q_boundary(Q, u, 5, family="R")]
    say(10, "one-dimensional ordering (family + 10 cubics, M=8) and n=2 ordering with Q, M=5", reps, time.perf_counter() - t, 60)
