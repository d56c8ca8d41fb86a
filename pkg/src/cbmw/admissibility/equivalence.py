"""Mechanical checks that Wilcox-Yu admissibility and u-admissibility agree.

Two halves:

* a numeric half on random rational instances (forward direction, plus
  rejection of every single-delta perturbation), and
* a symbolic half for a fixed rank ``r`` that verifies the universal
  identities behind the equivalence as exact polynomial identities.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from ..series import ASCENDING, DESCENDING, Series, expand_geometric_factor
from .checks import (
    check_ground_ring,
    check_u_admissible,
    check_weak_admissible,
    check_wy_admissible,
)
from .instance import (
    GroundRingInstance,
    default_neg_depth,
    default_truncation,
    generate_instance,
    sample_parameters,
)
from .universal import (
    W,
    corollary_identity_residual,
    eta_closed_form,
    eta_from_gamma,
    eta_table_from_series,
    eta_weak_residual,
    gamma_closed_form,
    gamma_system_residual,
    legal_rho_choices,
    eta_identity_residual,
    ring_membership_violations,
    xi0_formula,
)

SYMBOLIC_MAX_RANK = 4
GAMMA_MAX_RANK = 3
GAMMA_MAX_INDEX = 8
NO_WINDOWS = "vacuous (r-1 = 0 windows)"


@dataclass(frozen=True)
class SampleResult:
    index: int
    u: tuple[Fraction, ...]
    q: Fraction
    rho: Fraction
    forward: dict[str, bool]
    perturbations: int
    caught_by_wy_or_ground_ring: int
    caught_by_any: int
    missed: tuple[int, ...] = ()

    @property
    def forward_ok(self) -> bool:
        return all(self.forward.values())

    @property
    def uniqueness_ok(self) -> bool:
        return self.caught_by_wy_or_ground_ring == self.perturbations


@dataclass(frozen=True)
class FamilyResult:
    name: str
    status: str  # pass | fail | vacuous | skipped
    checked: int = 0
    failed: int = 0
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclass
class EquivalenceReport:
    r: int
    max_a: int
    neg_depth: int
    seed: int
    samples: list[SampleResult] = field(default_factory=list)
    families: list[FamilyResult] = field(default_factory=list)

    @property
    def forward_ok(self) -> bool:
        return all(s.forward_ok for s in self.samples)

    @property
    def uniqueness_ok(self) -> bool:
        return all(s.uniqueness_ok for s in self.samples)

    @property
    def symbolic_ok(self) -> bool:
        return all(f.ok for f in self.families)

    @property
    def passed(self) -> bool:
        return self.forward_ok and self.uniqueness_ok and self.symbolic_ok


def _rejected_by_wy_or_ground_ring(inst: GroundRingInstance) -> bool:
    return not (check_wy_admissible(inst).passed and check_ground_ring(inst).passed)


def forward_verdicts(inst: GroundRingInstance) -> dict[str, bool]:
    return {
        "ground-ring": check_ground_ring(inst).passed,
        "wilcox-yu": check_wy_admissible(inst).passed,
        "weak": check_weak_admissible(inst).passed,
        "u-admissible": check_u_admissible(inst).passed,
    }


def perturbations(inst: GroundRingInstance, amount: int = 1):
    """Instances with exactly one ``delta_a`` (``a >= 1``) shifted by ``amount``."""
    for a in range(1, inst.max_a + 1):
        yield a, inst.with_delta(a, inst.delta[a] + amount)


def _run_sample(args) -> SampleResult:
    index, r, u, q, max_a, neg_depth = args
    inst = generate_instance(r, u, q, max_a=max_a, neg_depth=neg_depth)
    fwd = forward_verdicts(inst)
    total = strong = anyc = 0
    missed = []
    for a, bad in perturbations(inst):
        total += 1
        hit = _rejected_by_wy_or_ground_ring(bad)
        strong += hit
        if hit or not check_u_admissible(bad).passed or not check_weak_admissible(bad).passed:
            anyc += 1
        else:
            missed.append(a)
    return SampleResult(index, inst.u, inst.q, inst.rho, fwd, total, strong, anyc, tuple(missed))


def draw_samples(r: int, samples: int, seed: int) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    rng = random.Random(seed)
    return [sample_parameters(rng, r) for _ in range(samples)]


def verify_instances(
    r: int, samples: int, max_a: int | None = None, neg_depth: int | None = None, seed: int = 0, workers: int = 1
) -> list[SampleResult]:
    n = default_truncation(r) if max_a is None else max_a
    d = default_neg_depth(r) if neg_depth is None else neg_depth
    jobs = [(i, r, u, q, n, d) for i, (u, q) in enumerate(draw_samples(r, samples, seed))]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_sample, jobs))
    else:
        results = [_run_sample(j) for j in jobs]
    return sorted(results, key=lambda s: s.index)


def _family(name: str, residual_checks, vacuous_note: str = "empty index range") -> FamilyResult:
    checked = failed = 0
    bad = []
    for label, ok in residual_checks:
        checked += 1
        if not ok:
            failed += 1
            bad.append(label)
    if checked == 0:
        return FamilyResult(name, "vacuous", note=vacuous_note)
    note = "" if not bad else "failing: " + ", ".join(map(str, bad[:5]))
    return FamilyResult(name, "fail" if failed else "pass", checked, failed, note)


def g_inverse_residuals(r: int, truncation: int):
    """Compare G(t)^-1 (series inverse of the descending factors) with the mu-series of G(t^-1)."""
    from ..symfun import mu_table

    prod = Series.constant(1, truncation, DESCENDING)
    inv = Series.constant(1, truncation, DESCENDING)
    for ell in range(1, r + 1):
        f = expand_geometric_factor("g", DESCENDING, truncation, ell)
        prod = prod * f
        inv = inv * f.invert()
    one = prod * inv
    mu = mu_table(r, truncation)
    for a in range(truncation + 1):
        yield ("product", a), one[a] == (1 if a == 0 else 0)
        yield ("mu", a), inv[a] == mu[a]
    asc = Series.constant(1, truncation, ASCENDING)
    for ell in range(1, r + 1):
        asc = asc * expand_geometric_factor("g", ASCENDING, truncation, ell)
    for a in range(truncation + 1):
        yield ("ascending", a), asc[a] == mu[a]


def symbolic_suite(r: int, max_a: int | None = None) -> list[FamilyResult]:
    """Exact polynomial identities for rank ``r`` (``r <= 4``)."""
    if not 1 <= r <= SYMBOLIC_MAX_RANK:
        raise ValueError(f"symbolic suite supports 1 <= r <= {SYMBOLIC_MAX_RANK}, got {r}")
    n = default_truncation(r) if max_a is None else max_a
    xi = eta_table_from_series(r, n)
    fams = [
        _family("G(t^-1) = G(t)^-1", g_inverse_residuals(r, n)),
        _family("xi: series = closed form", ((a, xi[a] == eta_closed_form(r, a)) for a in range(n + 1))),
        _family("xi_0 formula", [(0, xi[0] == xi0_formula(r))]),
        _family(
            "xi in Z[u, q-q^-1, rho^-1], symmetric",
            ((a, not ring_membership_violations(xi[a], r)) for a in range(n + 1)),
        ),
        _family(
            "eta identity (full ring)",
            ((ell, eta_identity_residual(r, ell).is_zero()) for ell in range(1, r)),
            NO_WINDOWS,
        ),
    ]
    for choice in legal_rho_choices(r):
        fams.append(
            _family(
                f"corollary (rho: {choice})",
                ((ell, corollary_identity_residual(r, ell, choice).is_zero()) for ell in range(1, r)),
                NO_WINDOWS,
            )
        )
    m_hi = min(r + 6, n)
    fams.append(_family("eta weak admissibility", ((m, eta_weak_residual(r, m, n).is_zero()) for m in range(r, m_hi + 1))))
    if r <= GAMMA_MAX_RANK:
        gammas = gamma_closed_form(r)
        fams.append(
            _family("gamma linear system", ((i, res.is_zero()) for i, res in enumerate(gamma_system_residual(r, gammas), 1)))
        )
        k = min(GAMMA_MAX_INDEX, n)
        etas = eta_from_gamma(r, k)
        fams.append(_family("gamma: (q-q^-1) eta = xi", ((a, etas[a] * W == xi[a]) for a in range(k + 1))))
    else:
        note = f"gamma families run for r <= {GAMMA_MAX_RANK}"
        fams.append(FamilyResult("gamma linear system", "skipped", note=note))
        fams.append(FamilyResult("gamma: (q-q^-1) eta = xi", "skipped", note=note))
    return fams


def verify_equivalence(
    r: int,
    samples: int,
    max_a: int | None = None,
    neg_depth: int | None = None,
    seed: int = 0,
    *,
    workers: int = 1,
    symbolic: bool = True,
) -> EquivalenceReport:
    n = default_truncation(r) if max_a is None else max_a
    d = default_neg_depth(r) if neg_depth is None else neg_depth
    report = EquivalenceReport(r, n, d, seed)
    report.samples = verify_instances(r, samples, n, d, seed, workers)
    if symbolic:
        report.families = symbolic_suite(r, n)
    return report
