"""Elementary and complete symmetric polynomials, the signed coefficients
``a_j`` and the coefficients ``mu_a`` of ``G(t) = prod (t - u_l)/(t u_l - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exact import LaurentPolynomial, u

# Adopted reading of the signed coefficients; with it prod(y - u_i) = sum a_j y^j.
A_CONVENTION = "a_j = (-1)^(r-j) * e_(r-j)(u_1..u_r)"


@lru_cache(maxsize=None)
def _elementary_all(r: int) -> tuple[LaurentPolynomial, ...]:
    # coefficients of prod_i (1 + u_i z)
    e = [LaurentPolynomial(1)]
    for i in range(1, r + 1):
        ui = u(i)
        e = [e[0]] + [e[k] + ui * e[k - 1] for k in range(1, len(e))] + [ui * e[-1]]
    return tuple(e)


def elementary_symmetric(r: int, k: int) -> LaurentPolynomial:
    """``e_k(u_1, ..., u_r)``."""
    if r < 0 or not 0 <= k <= r:
        raise ValueError(f"need 0 <= k <= r, got r={r}, k={k}")
    return _elementary_all(r)[k]


@lru_cache(maxsize=None)
def complete_homogeneous(r: int, k: int) -> LaurentPolynomial:
    """``h_k(u_1, ..., u_r)``, via h_k(u_1..u_i) = h_k(u_1..u_{i-1}) + u_i h_{k-1}(u_1..u_i)."""
    if k < 0:
        return LaurentPolynomial(0)
    if k == 0:
        return LaurentPolynomial(1)
    if r == 0:
        return LaurentPolynomial(0)
    return complete_homogeneous(r - 1, k) + u(r) * complete_homogeneous(r, k - 1)


@dataclass(frozen=True)
class SymCoeffs:
    r: int
    a: tuple[LaurentPolynomial, ...]
    convention: str = A_CONVENTION

    def __getitem__(self, j: int) -> LaurentPolynomial:
        # a_j = 0 outside 0..r
        if 0 <= j <= self.r:
            return self.a[j]
        return LaurentPolynomial(0)


@lru_cache(maxsize=None)
def signed_coeffs(r: int) -> SymCoeffs:
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    a = tuple(elementary_symmetric(r, r - j) * (-1) ** (r - j) for j in range(r + 1))
    return SymCoeffs(r, a)


@dataclass(frozen=True)
class MuTable:
    r: int
    truncation: int
    mu: tuple[LaurentPolynomial, ...]

    def __getitem__(self, a: int) -> LaurentPolynomial:
        # mu_a = 0 for a < 0
        if a < 0:
            return LaurentPolynomial(0)
        return self.mu[a]


@lru_cache(maxsize=None)
def mu_table(r: int, truncation: int) -> MuTable:
    """Coefficients of ``G(t)`` in ascending powers of ``t``.

    ``G(t) = prod(u_l - t) * prod 1/(1 - u_l t) = (-1)^r (sum_j a_j t^j)(sum_k h_k t^k)``.
    """
    if truncation < 0:
        raise ValueError("truncation must be >= 0")
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    a = signed_coeffs(r)
    sign = (-1) ** r
    mu = []
    for n in range(truncation + 1):
        acc = LaurentPolynomial(0)
        for j in range(min(n, r) + 1):
            acc = acc + a[j] * complete_homogeneous(r, n - j)
        mu.append(acc * sign)
    return MuTable(r, truncation, tuple(mu))
