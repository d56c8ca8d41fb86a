"""Numeric ground-ring parameter sets over the rationals."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from ..exact import Q, RHO, U, Variable
from ..symfun import signed_coeffs
from .universal import RHO_CHOICES, default_rho_choice, eta_table_from_series, rho_value


class ExcludedConfigurationError(ValueError):
    """Parameters fall in a configuration the tools refuse (zero u, q^2 = 1, u_i u_j = 1, ...)."""


def default_truncation(r: int) -> int:
    return 2 * r + 8


def default_neg_depth(r: int) -> int:
    return r + 6


def delta_negative(rho: Fraction, q: Fraction, delta: Sequence[Fraction], depth: int) -> tuple[Fraction, ...]:
    """``delta_-1 .. delta_-depth`` from the recursion in rho, q and the nonnegative deltas."""
    if depth > len(delta) - 1:
        raise ValueError(f"depth {depth} needs delta_0..delta_{depth}, only {len(delta)} given")
    rho, q = Fraction(rho), Fraction(q)
    neg: list[Fraction] = []

    def d(i: int) -> Fraction:
        return delta[i] if i >= 0 else neg[-i - 1]

    rho_inv = 1 / rho
    coef = (1 / q - q) * rho_inv
    for j in range(1, depth + 1):
        val = rho_inv * rho_inv * d(j)
        if j >= 2:
            val += coef * sum(d(k) * d(k - j) - d(2 * k - j) for k in range(1, j))
        neg.append(val)
    return tuple(neg)


@dataclass(frozen=True)
class GroundRingInstance:
    """Rational parameters ``r, u, rho, q, delta_0..delta_N`` and derived ``delta_-1..delta_-D``.

    The ground-ring relation is not enforced here so that violating
    parameter files can still be loaded and reported on.
    """

    r: int
    u: tuple[Fraction, ...]
    rho: Fraction
    q: Fraction
    delta: tuple[Fraction, ...]
    delta_neg: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"rank must be >= 1, got {self.r}")
        if len(self.u) != self.r:
            raise ValueError(f"expected {self.r} u-values, got {len(self.u)}")
        if not self.delta:
            raise ValueError("at least delta_0 is required")
        for i, x in enumerate(self.u, 1):
            if x == 0:
                raise ExcludedConfigurationError(f"u{i} must be invertible")
        if self.rho == 0:
            raise ExcludedConfigurationError("rho must be invertible")
        if self.q == 0 or self.q * self.q == 1:
            raise ExcludedConfigurationError("q - q^-1 vanishes")

    @classmethod
    def build(cls, r: int, u, rho, q, delta, neg_depth: int | None = None) -> GroundRingInstance:
        delta = tuple(Fraction(x) for x in delta)
        depth = min(default_neg_depth(r), len(delta) - 1) if neg_depth is None else neg_depth
        rho, q = Fraction(rho), Fraction(q)
        u = tuple(Fraction(x) for x in u)
        inst = cls(r, u, rho, q, delta)
        return replace(inst, delta_neg=delta_negative(rho, q, delta, depth))

    @property
    def max_a(self) -> int:
        return len(self.delta) - 1

    @property
    def neg_depth(self) -> int:
        return len(self.delta_neg)

    @property
    def w(self) -> Fraction:
        """``q - q^-1``."""
        return self.q - 1 / self.q

    @property
    def point(self) -> dict[Variable, Fraction]:
        pt: dict[Variable, Fraction] = {U(i): x for i, x in enumerate(self.u, 1)}
        pt[RHO] = self.rho
        pt[Q] = self.q
        return pt

    def delta_at(self, i: int) -> Fraction:
        if i >= 0:
            return self.delta[i]
        return self.delta_neg[-i - 1]

    def signed_coeffs(self) -> tuple[Fraction, ...]:
        pt = self.point
        return tuple(c.evaluate(pt) for c in signed_coeffs(self.r).a)

    def with_delta(self, a: int, value) -> GroundRingInstance:
        delta = list(self.delta)
        delta[a] = Fraction(value)
        return GroundRingInstance.build(self.r, self.u, self.rho, self.q, delta, self.neg_depth)

    def restricted(self, max_a: int | None = None, neg_depth: int | None = None) -> GroundRingInstance:
        n = self.max_a if max_a is None else max_a
        if n > self.max_a:
            raise ValueError(f"truncation {n} exceeds the {self.max_a + 1} available deltas")
        depth = min(self.neg_depth, n) if neg_depth is None else neg_depth
        return GroundRingInstance.build(self.r, self.u, self.rho, self.q, self.delta[: n + 1], depth)


def validate_u(u: Sequence[Fraction], *, policy: str = "sampler") -> None:
    """Reject excluded u-configurations.

    ``policy="sampler"`` rejects u_i = 0, u_i = u_j (i != j) and u_i u_j = 1
    for all i, j including i = j. ``policy="minimal"`` only rejects zeros.
    """
    for i, x in enumerate(u, 1):
        if x == 0:
            raise ExcludedConfigurationError(f"u{i} = 0 is not invertible")
    if policy == "minimal":
        return
    for i, x in enumerate(u, 1):
        for j, y in enumerate(u, 1):
            if i < j and x == y:
                raise ExcludedConfigurationError(f"u{i} = u{j} (u's must be distinct)")
            if i <= j and x * y == 1:
                raise ExcludedConfigurationError(f"u{i}*u{j} = 1 is excluded")


def generate_instance(
    r: int,
    u: Sequence,
    q,
    rho_choice: str | None = None,
    max_a: int | None = None,
    neg_depth: int | None = None,
    *,
    strict: bool = True,
    policy: str = "minimal",
) -> GroundRingInstance:
    """Build the u-admissible instance: ``delta_a = xi_a(u, rho, q) / (q - q^-1)``.

    ``rho`` is fixed by ``rho_choice`` (``minus-a0``/``plus-a0`` for odd r,
    ``q-inv-a0``/``minus-q-a0`` for even r).
    """
    u = tuple(Fraction(x) for x in u)
    q = Fraction(q)
    if len(u) != r:
        raise ValueError(f"expected {r} u-values, got {len(u)}")
    validate_u(u, policy=policy)
    if q == 0 or q * q == 1:
        raise ExcludedConfigurationError("q - q^-1 vanishes")
    rho_choice = rho_choice or default_rho_choice(r)
    if rho_choice not in RHO_CHOICES:
        raise ValueError(f"unknown rho choice {rho_choice!r}")
    n = default_truncation(r) if max_a is None else max_a
    depth = min(default_neg_depth(r), n) if neg_depth is None else neg_depth
    if depth > n:
        raise ValueError(f"negative depth {depth} exceeds truncation {n}")
    point = {U(i): x for i, x in enumerate(u, 1)}
    point[Q] = q
    rho = rho_value(r, rho_choice, strict=strict).evaluate(point)
    point[RHO] = rho
    w = q - 1 / q
    xi = eta_table_from_series(r, n)
    delta = [xi[a].evaluate(point) / w for a in range(n + 1)]
    return GroundRingInstance.build(r, u, rho, q, delta, depth)


MORPHISMS = ("identity", "q-to-negqinv", "negate-rho-and-q")


def apply_morphism(instance: GroundRingInstance, kind: str) -> GroundRingInstance:
    """Parameter-preserving change of ``(rho, q)``; u's and deltas are untouched."""
    if kind == "identity":
        return instance
    if kind == "q-to-negqinv":
        rho, q = instance.rho, -1 / instance.q
    elif kind == "negate-rho-and-q":
        rho, q = -instance.rho, -instance.q
    else:
        raise ValueError(f"unknown morphism {kind!r}; expected one of {MORPHISMS}")
    return GroundRingInstance.build(instance.r, instance.u, rho, q, instance.delta, instance.neg_depth)


def _small_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 9))


def sample_parameters(rng: random.Random, r: int) -> tuple[tuple[Fraction, ...], Fraction]:
    """Draw ``(u, q)`` with numerators/denominators in 1..9 outside the excluded set."""
    while True:
        u = tuple(_small_rational(rng) for _ in range(r))
        q = _small_rational(rng)
        if q * q == 1:
            continue
        try:
            validate_u(u, policy="sampler")
        except ExcludedConfigurationError:
            continue
        return u, q
