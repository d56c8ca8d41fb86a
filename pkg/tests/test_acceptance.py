"""Acceptance criteria 1-9: exact checks, each with a wall-clock bound."""

import time
from fractions import Fraction as F

import pytest

from cbmw.admissibility import (
    apply_morphism,
    check_all,
    check_ground_ring,
    check_u_admissible,
    check_weak_admissible,
    check_wy_admissible,
    corollary_identity_residual,
    eta_closed_form,
    eta_from_gamma,
    eta_table_from_series,
    eta_weak_residual,
    gamma_closed_form,
    gamma_system_residual,
    generate_instance,
)
from cbmw.admissibility.equivalence import draw_samples, perturbations
from cbmw.admissibility.instance import default_neg_depth, default_truncation
from cbmw.admissibility.universal import W, legal_rho_choices, ring_membership_violations, xi0_formula

SEED = 20241016
SAMPLE_COUNTS = {1: 25, 2: 25, 3: 10}


class Timer:
    def __init__(self, bound: float):
        self.bound = bound

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.bound, f"took {self.elapsed:.1f}s, bound {self.bound}s"


@pytest.fixture(scope="module")
def instances():
    """The u-admissibly generated instances of criterion 6, with their generation time."""
    start = time.perf_counter()
    out = []
    for r, count in SAMPLE_COUNTS.items():
        for u, q in draw_samples(r, count, SEED):
            out.append(generate_instance(r, u, q))
    return out, time.perf_counter() - start


@pytest.mark.criterion(1, "xi series = closed form, xi_0 formula, r<=4, a<=2r+8, <60s")
def test_criterion_1_xi_series_closed_form(cold_caches):
    with Timer(60):
        for r in range(1, 5):
            n = default_truncation(r)
            xi = eta_table_from_series(r, n)
            for a in range(n + 1):
                assert xi[a] == eta_closed_form(r, a), (r, a)
            assert xi[0] == xi0_formula(r)


@pytest.mark.criterion(2, "xi denominator-free, symmetric, rho^-1 only, through q-q^-1, <30s")
def test_criterion_2_ring_membership(cold_caches):
    with Timer(30):
        for r in range(1, 5):
            n = default_truncation(r)
            xi = eta_table_from_series(r, n)
            assert len(xi.xi) == n + 1
            for a in range(n + 1):
                assert ring_membership_violations(xi[a], r) == [], (r, a)


@pytest.mark.criterion(3, "corollary residuals vanish, r=2..4, both rho substitutions, <120s")
def test_criterion_3_corollary(cold_caches):
    with Timer(120):
        for r in (2, 3, 4):
            choices = legal_rho_choices(r)
            assert len(choices) == 2
            for choice in choices:
                for ell in range(1, r):
                    assert corollary_identity_residual(r, ell, choice).is_zero(), (r, ell, choice)


@pytest.mark.criterion(4, "eta weak admissibility, r=1..4, r<=m<=r+6, <60s")
def test_criterion_4_eta_weak(cold_caches):
    with Timer(60):
        for r in range(1, 5):
            for m in range(r, r + 7):
                assert eta_weak_residual(r, m, default_truncation(r)).is_zero(), (r, m)


@pytest.mark.criterion(5, "gamma system and (q-q^-1) eta_from_gamma = xi, r<=3, a<=8, <180s")
def test_criterion_5_gamma(cold_caches):
    with Timer(180):
        for r in (1, 2, 3):
            residuals = gamma_system_residual(r, gamma_closed_form(r))
            assert len(residuals) == r and all(res.is_zero() for res in residuals)
            xi = eta_table_from_series(r, 8)
            for a, eta in enumerate(eta_from_gamma(r, 8)):
                assert eta * W == xi[a], (r, a)


@pytest.mark.criterion(6, "forward: 25/25/10 u-admissible instances pass WY, weak, ground ring, <120s")
def test_criterion_6_forward(cold_caches, instances):
    insts, gen_time = instances
    assert len(insts) == 60
    with Timer(120 - gen_time):
        for inst in insts:
            r = inst.r
            assert inst.max_a == 2 * r + 8 and inst.neg_depth == default_neg_depth(r) == r + 6
            wy = check_wy_admissible(inst)
            assert wy.passed and all(wy.conditions.values()), inst
            weak = check_weak_admissible(inst, range(-(r + 6), r + 9))
            assert weak.passed and weak.checked == 2 * r + 15
            assert check_ground_ring(inst).passed
            assert check_u_admissible(inst).passed


@pytest.mark.criterion(7, "uniqueness: every single +1 delta perturbation rejected, <180s")
def test_criterion_7_uniqueness(instances):
    insts, _ = instances
    with Timer(180):
        total = 0
        for inst in insts:
            indices = []
            for a, bad in perturbations(inst, amount=1):
                indices.append(a)
                report = check_all(bad)
                assert not report.passed, (inst, a)
                # the WY conditions alone already reject the perturbed sequence
                assert not (report.wilcox_yu.passed and report.ground_ring.passed), (inst, a)
                total += 1
            assert indices == list(range(1, 2 * inst.r + 9))
        assert total == 25 * 10 + 25 * 12 + 10 * 14


@pytest.mark.criterion(8, "reference instance r=1, u1=2, q=3, rho=2")
def test_criterion_8_reference_instance():
    inst = generate_instance(1, [2], 3, "minus-a0")
    assert inst.rho == 2
    assert inst.delta[:3] == (F(25, 16), F(25, 8), F(25, 4))
    assert inst.delta_neg[:2] == (F(25, 32), F(25, 64))
    # independent oracle: delta_0 from the ground-ring relation, then the recursion by hand
    rho, q = F(2), F(3)
    d0 = 1 + (1 / rho - rho) / (1 / q - q)
    d1, d2 = 2 * d0, 4 * d0
    dm1 = d1 / rho**2
    dm2 = d2 / rho**2 + (1 / q - q) / rho * (d1 * dm1 - d0)
    assert (d0, d1, d2, dm1, dm2) == (F(25, 16), F(25, 8), F(25, 4), F(25, 32), F(25, 64))
    assert inst.delta_neg[1] == dm2


@pytest.mark.criterion(9, "verdicts invariant under q->-q^-1 and (rho,q)->(-rho,-q), <30s")
def test_criterion_9_morphisms(instances):
    insts, _ = instances
    with Timer(30):
        for inst in insts:
            samples = [inst, inst.with_delta(1, inst.delta[1] + 1)]
            for base in samples:
                before = {k: v.passed for k, v in check_all(base).verdicts.items()}
                for kind in ("q-to-negqinv", "negate-rho-and-q"):
                    after = {k: v.passed for k, v in check_all(apply_morphism(base, kind)).verdicts.items()}
                    assert after == before, (base, kind)
