"""Exact admissibility checkers for numeric ground-ring instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..exact import Q, RHO, U

from .instance import GroundRingInstance
from .universal import condition1_windows, eta_table_from_series


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Failure:
    condition: str
    index: int | None
    lhs: Fraction
    rhs: Fraction

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "index": self.index,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
        }

    def __str__(self) -> str:
        where = "" if self.index is None else f" at index {self.index}"
        return f"{self.condition}{where}: {format_rational(self.lhs)} != {format_rational(self.rhs)}"


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    checked: int
    failures: tuple[Failure, ...] = ()
    conditions: dict[str, bool] = field(default_factory=dict)

    @property
    def first_failure(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    def __bool__(self) -> bool:
        return self.passed


def _verdict(name: str, comparisons: list[tuple[str, int | None, Fraction, Fraction]], conditions=None) -> Verdict:
    failures = tuple(Failure(c, i, lhs, rhs) for c, i, lhs, rhs in comparisons if lhs != rhs)
    if conditions is None:
        conditions = {}
    else:
        conditions = {c: not any(f.condition == c for f in failures) for c in conditions}
    return Verdict(name, not failures, len(comparisons), failures, conditions)


def check_ground_ring(inst: GroundRingInstance) -> Verdict:
    """``rho^-1 - rho = (q^-1 - q)(delta_0 - 1)``."""
    lhs = 1 / inst.rho - inst.rho
    rhs = (1 / inst.q - inst.q) * (inst.delta[0] - 1)
    return _verdict("ground-ring", [("ground-ring", None, lhs, rhs)])


def check_weak_admissible(inst: GroundRingInstance, a_range: range | None = None) -> Verdict:
    """``sum_k a_k delta_{k+a} = 0`` over a finite window of integers ``a``."""
    r = inst.r
    if a_range is None:
        a_range = range(-inst.neg_depth, inst.max_a - r + 1)
    if a_range and (a_range.start < -inst.neg_depth or a_range[-1] + r > inst.max_a):
        raise ValueError(
            f"window {a_range.start}..{a_range[-1]} needs deltas outside "
            f"-{inst.neg_depth}..{inst.max_a}"
        )
    a = inst.signed_coeffs()
    rows = []
    for shift in a_range:
        total = sum(a[k] * inst.delta_at(k + shift) for k in range(r + 1))
        rows.append(("weak", shift, total, Fraction(0)))
    return _verdict("weak", rows)


def check_wy_admissible(inst: GroundRingInstance, max_a: int | None = None) -> Verdict:
    """The three Wilcox-Yu relations on ``(rho, q, delta, u)``.

    Condition 1 for ``1 <= l <= r-1``, condition 2, and the recursion
    (condition 3) for ``r <= a <= max_a``.
    """
    r, n = inst.r, inst.max_a if max_a is None else max_a
    if n > inst.max_a:
        raise ValueError(f"truncation {n} exceeds the available deltas")
    w = inst.w
    if w == 0:
        raise ValueError("q - q^-1 vanishes")
    a = inst.signed_coeffs()

    def a_(k: int) -> Fraction:
        return a[k] if 0 <= k <= r else Fraction(0)

    rows = []
    for ell in range(1, r):
        minus, plus = condition1_windows(r, ell)
        bracket = sum(a_(j + ell) * inst.delta[j] for j in range(1, r - ell + 1))
        bracket += -sum(a_(k) for k in minus) + sum(a_(k) for k in plus)
        lhs = inst.rho * (a_(ell) - a_(r - ell) / a[0]) + w * bracket
        rows.append(("condition-1", ell, lhs, Fraction(0)))
    lhs2 = a[0] / inst.rho - inst.rho / a[0]
    rows.append(("condition-2", None, lhs2, w if r % 2 == 0 else Fraction(0)))
    for idx in range(r, n + 1):
        rhs = -sum(a[j] * inst.delta[idx - r + j] for j in range(r))
        rows.append(("condition-3", idx, inst.delta[idx], rhs))
    return _verdict("wilcox-yu", rows, conditions=("condition-1", "condition-2", "condition-3"))


def check_u_admissible(inst: GroundRingInstance, max_a: int | None = None) -> Verdict:
    """``(q - q^-1) delta_a = xi_a(u, rho, q)`` for ``0 <= a <= max_a``."""
    n = inst.max_a if max_a is None else max_a
    if n > inst.max_a:
        raise ValueError(f"truncation {n} exceeds the available deltas")
    w = inst.w
    if w == 0:
        raise ValueError("q - q^-1 vanishes")
    values = xi_values(inst.r, n, inst.u, inst.rho, inst.q)
    rows = [("u-admissible", i, w * inst.delta[i], values[i]) for i in range(n + 1)]
    return _verdict("u-admissible", rows)


@lru_cache(maxsize=256)
def xi_values(r: int, max_a: int, u: tuple[Fraction, ...], rho: Fraction, q: Fraction) -> tuple[Fraction, ...]:
    """``xi_0..xi_max_a`` evaluated at a parameter point (perturbations reuse the same point)."""
    pt = {U(i): x for i, x in enumerate(u, 1)}
    pt[RHO], pt[Q] = rho, q
    xi = eta_table_from_series(r, max_a)
    return tuple(xi[a].evaluate(pt) for a in range(max_a + 1))


@dataclass(frozen=True)
class AdmissibilityReport:
    ground_ring: Verdict
    weak: Verdict
    wilcox_yu: Verdict
    u_admissible: Verdict
    r: int
    max_a: int
    neg_depth: int

    @property
    def verdicts(self) -> dict[str, Verdict]:
        return {
            "groundRing": self.ground_ring,
            "weak": self.weak,
            "wilcoxYu": self.wilcox_yu,
            "uAdmissible": self.u_admissible,
        }

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts.values())

    def to_dict(self) -> dict:
        failures = []
        for key, v in self.verdicts.items():
            for f in v.failures:
                failures.append({"verdict": key, **f.to_dict()})
        return {
            "verdicts": {k: "pass" if v.passed else "fail" for k, v in self.verdicts.items()},
            "wilcoxYuConditions": {k: "pass" if ok else "fail" for k, ok in self.wilcox_yu.conditions.items()},
            "failures": failures,
            "truncation": {
                "maxA": self.max_a,
                "negDepth": self.neg_depth,
                "note": f"u-admissibility certified for coefficients 0..{self.max_a}; "
                f"weak admissibility checked for a in -{self.neg_depth}..{self.max_a - self.r}",
            },
        }


def check_all(inst: GroundRingInstance) -> AdmissibilityReport:
    return AdmissibilityReport(
        ground_ring=check_ground_ring(inst),
        weak=check_weak_admissible(inst),
        wilcox_yu=check_wy_admissible(inst),
        u_admissible=check_u_admissible(inst),
        r=inst.r,
        max_a=inst.max_a,
        neg_depth=inst.neg_depth,
    )
