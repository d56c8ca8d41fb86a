"""Universal (symbolic) parameter sequences.

Everything here lives over the Laurent ring in ``u1..ur, rho, q``. The
sequence ``xi_a = (q - q^-1) eta_a`` is read off from the expansion of
``Z(t)`` in powers of ``t^-1``; the scaled form keeps every identity inside
the Laurent ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..exact import Q, RHO, U, LaurentPolynomial, RationalFunction, q, rho, u
from ..series import DESCENDING, Series, expand_geometric_factor
from ..symfun import mu_table, signed_coeffs

# q - q^-1
W = q() - q() ** -1

RHO_CHOICES = {
    "minus-a0": 1,  # odd r: rho = -a0
    "plus-a0": 1,  # odd r: rho = a0
    "q-inv-a0": 0,  # even r: rho = q^-1 a0
    "minus-q-a0": 0,  # even r: rho = -q a0
}


class NotLaurentError(ArithmeticError):
    """A coefficient that must be a Laurent polynomial is not one."""


def default_rho_choice(r: int) -> str:
    return "minus-a0" if r % 2 else "q-inv-a0"


def legal_rho_choices(r: int) -> tuple[str, ...]:
    return tuple(c for c, parity in RHO_CHOICES.items() if parity == r % 2)


def rho_value(r: int, choice: str | None = None, *, strict: bool = True) -> LaurentPolynomial:
    """Symbolic value of rho solving condition 2 for the given branch."""
    choice = choice or default_rho_choice(r)
    if choice not in RHO_CHOICES:
        raise ValueError(f"unknown rho choice {choice!r}; expected one of {sorted(RHO_CHOICES)}")
    if strict and RHO_CHOICES[choice] != r % 2:
        raise ValueError(f"rho choice {choice!r} does not match the parity of r={r}")
    a0 = signed_coeffs(r)[0]
    return {
        "minus-a0": -a0,
        "plus-a0": a0,
        "q-inv-a0": q() ** -1 * a0,
        "minus-q-a0": -(q() * a0),
    }[choice]


def _descending_g_inverse(r: int, truncation: int) -> Series:
    # G(t^-1) in powers of t^-1 has the same coefficients as G(t) in powers of t.
    return Series(mu_table(r, truncation).mu, DESCENDING)


@lru_cache(maxsize=None)
def z_series(r: int, truncation: int, rho_mode: str = "symbolic", rho_choice: str | None = None) -> Series:
    """``Z(t)`` expanded in powers of ``t^-1`` up to ``t^-truncation``."""
    if truncation < 0:
        raise ValueError("truncation must be >= 0")
    if rho_mode not in ("symbolic", "substituted"):
        raise ValueError(f"rho_mode must be 'symbolic' or 'substituted', got {rho_mode!r}")
    n = truncation
    a0 = signed_coeffs(r)[0]
    rinv = rho() ** -1
    even_tail = expand_geometric_factor("even-tail", DESCENDING, n)
    if r % 2:
        a_t = Series.constant(-(rinv * a0), n) + expand_geometric_factor("odd-tail", DESCENDING, n) * W
    else:
        a_t = Series.constant(rinv * a0, n) - even_tail * W
    z = Series.constant(-rinv, n) + even_tail * W + a_t * _descending_g_inverse(r, n)
    if rho_mode == "substituted":
        binding = {RHO: rho_value(r, rho_choice)}
        z = Series([c.subs(binding) for c in z.coeffs], DESCENDING)
    return z


@dataclass(frozen=True)
class EtaTable:
    r: int
    truncation: int
    xi: tuple[LaurentPolynomial, ...]

    def __getitem__(self, a: int) -> LaurentPolynomial:
        return self.xi[a]

    def eta(self, a: int) -> RationalFunction:
        return RationalFunction(self.xi[a]) / W


@lru_cache(maxsize=None)
def eta_table_from_series(
    r: int, truncation: int, rho_mode: str = "symbolic", rho_choice: str | None = None
) -> EtaTable:
    z = z_series(r, truncation, rho_mode, rho_choice)
    xi = []
    for a, c in enumerate(z.coeffs):
        if not isinstance(c, LaurentPolynomial):
            raise NotLaurentError(f"coefficient {a} of Z(t) is not a Laurent polynomial: {c}")
        xi.append(c)
    return EtaTable(r, truncation, tuple(xi))


def eta_closed_form(r: int, a: int) -> LaurentPolynomial:
    """Closed form of ``(q - q^-1) eta_a`` split by the parity of ``r``."""
    if a < 0:
        raise ValueError("index must be >= 0")
    mu = mu_table(r, a)
    a0 = signed_coeffs(r)[0]
    rinv = rho() ** -1
    out = LaurentPolynomial(0)
    if a == 0:
        out = out - rinv
    if a % 2 == 0:
        out = out + W
    if r % 2:
        tail = sum((mu[a - k] for k in range(1, a + 1, 2)), LaurentPolynomial(0))
        return out - mu[a] * rinv * a0 + W * tail
    tail = sum((mu[a - k] for k in range(0, a + 1, 2)), LaurentPolynomial(0))
    return out + mu[a] * rinv * a0 - W * tail


def xi0_formula(r: int) -> LaurentPolynomial:
    """``(a0^2 - 1) rho^-1 + (q - q^-1)(1 - [r even] a0)``."""
    a0 = signed_coeffs(r)[0]
    tail = 1 - a0 if r % 2 == 0 else LaurentPolynomial(1)
    return (a0 * a0 - 1) * rho() ** -1 + W * tail


# -- membership in Z[u, q - q^-1, rho^-1] ------------------------------------


def w_expansion(p: LaurentPolynomial) -> dict[int, LaurentPolynomial]:
    """Write ``p`` as ``sum_k c_k (q - q^-1)^k`` with q-free ``c_k``.

    Raises ValueError if ``p`` is not a polynomial in ``q - q^-1``.
    """
    rest = p
    out: dict[int, LaurentPolynomial] = {}
    while True:
        lo, hi = rest.exponent_range(Q)
        if hi <= 0 and lo >= 0:
            if rest:
                out[0] = out.get(0, LaurentPolynomial(0)) + rest
            return {k: c for k, c in out.items() if c}
        if hi <= 0 or -lo > hi:
            raise ValueError(f"not expressible through q - q^-1: {p}")
        # coefficient of q^hi
        lead = rest.coeff_in(Q, hi)
        out[hi] = out.get(hi, LaurentPolynomial(0)) + lead
        rest = rest - lead * W**hi


def is_symmetric_in_u(p: LaurentPolynomial, r: int) -> bool:
    # adjacent transpositions generate the symmetric group
    return all(p.permute_u({i: i + 1, i + 1: i}) == p for i in range(1, r))


def ring_membership_violations(p: LaurentPolynomial, r: int) -> list[str]:
    """Reasons ``p`` fails to be a symmetric element of Z[u, q - q^-1, rho^-1]."""
    problems = []
    for i in range(1, r + 1):
        lo, _ = p.exponent_range(U(i))
        if lo < 0:
            problems.append(f"negative power of u{i}")
    if p.exponent_range(RHO)[1] > 0:
        problems.append("positive power of rho")
    try:
        w_expansion(p)
    except ValueError:
        problems.append("q enters other than through q - q^-1")
    if not is_symmetric_in_u(p, r):
        problems.append("not symmetric in u")
    return problems


# -- gamma coefficients -------------------------------------------------------


@dataclass(frozen=True)
class GammaTable:
    r: int
    gamma: tuple[RationalFunction, ...]

    def __getitem__(self, j: int) -> RationalFunction:
        # 1-based, as the u's
        return self.gamma[j - 1]


def _qinv_minus_q() -> LaurentPolynomial:
    return q() ** -1 - q()


@lru_cache(maxsize=None)
def gamma_closed_form(r: int) -> GammaTable:
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    denom_common = rho() * _qinv_minus_q()
    gammas = []
    for j in range(1, r + 1):
        uj = u(j)
        pre_num, pre_den, others = LaurentPolynomial(1), LaurentPolynomial(1), LaurentPolynomial(1)
        for ell in range(1, r + 1):
            if ell == j:
                continue
            pre_num = pre_num * (u(ell) * uj - 1)
            pre_den = pre_den * (uj - u(ell))
            others = others * u(ell)
        branch = LaurentPolynomial(1) if r % 2 else -uj
        inner_num = (1 - uj * uj) * others + branch * denom_common
        gammas.append(RationalFunction(pre_num * inner_num, pre_den * denom_common))
    return GammaTable(r, tuple(gammas))


def gamma_system_residual(r: int, gammas: GammaTable) -> list[RationalFunction]:
    """LHS - RHS of ``sum_j gamma_j/(1 - u_i u_j) = 1/(1 - u_i^2) + 1/(rho(q^-1 - q))``."""
    rhs_const = RationalFunction(1, rho() * _qinv_minus_q())
    out = []
    for i in range(1, r + 1):
        lhs = RationalFunction(0)
        for j in range(1, r + 1):
            lhs = lhs + gammas[j] / (1 - u(i) * u(j))
        out.append(lhs - RationalFunction(1, 1 - u(i) * u(i)) - rhs_const)
    return out


def eta_from_gamma(r: int, truncation: int) -> tuple[RationalFunction, ...]:
    """``eta_a = sum_j gamma_j u_j^a`` for ``0 <= a <= truncation``."""
    g = gamma_closed_form(r)
    out = []
    for a in range(truncation + 1):
        total = RationalFunction(0)
        for j in range(1, r + 1):
            total = total + g[j] * u(j) ** a
        out.append(total)
    return tuple(out)


# -- condition-1 style identities --------------------------------------------


def _ceil_half(n: int) -> int:
    return -(-n // 2)


def condition1_windows(r: int, ell: int) -> tuple[list[int], list[int]]:
    """Indices ``2j - ell`` of the subtracted and added a-sums for row ``ell``.

    Windows are taken exactly as printed; an empty range contributes nothing.
    """
    minus = range(max(ell + 1, _ceil_half(r)), (ell + r) // 2 + 1)
    plus = range(_ceil_half(ell), min(ell, _ceil_half(r) - 1) + 1)
    return [2 * j - ell for j in minus], [2 * j - ell for j in plus]


def _check_ell(r: int, ell: int) -> None:
    if not 1 <= ell <= r - 1:
        raise ValueError(f"need 1 <= l <= r-1, got l={ell}, r={r}")


def _bracket(r: int, ell: int, xi: EtaTable) -> LaurentPolynomial:
    """``(q - q^-1) * (sum_j eta_j a_{j+l} - sum a_{2j-l} + sum a_{2j-l})`` using xi."""
    a = signed_coeffs(r)
    minus, plus = condition1_windows(r, ell)
    out = LaurentPolynomial(0)
    for j in range(1, r - ell + 1):
        out = out + xi[j] * a[j + ell]
    window = LaurentPolynomial(0)
    for k in minus:
        window = window - a[k]
    for k in plus:
        window = window + a[k]
    return out + W * window


def eta_identity_residual(r: int, ell: int) -> LaurentPolynomial:
    """Residual of the identity for the eta's over the full Laurent ring (no quotient)."""
    _check_ell(r, ell)
    a = signed_coeffs(r)
    xi = eta_table_from_series(r, r)
    lead = a[0] * rho() ** -1
    if r % 2 == 0:
        lead = lead - W
    return lead * (a[0] * a[ell] - a[r - ell]) + _bracket(r, ell, xi)


def corollary_identity_residual(r: int, ell: int, rho_choice: str | None = None) -> LaurentPolynomial:
    """Residual of the condition-1 identity for the eta's after eliminating rho."""
    _check_ell(r, ell)
    a = signed_coeffs(r)
    xi = eta_table_from_series(r, r, "substituted", rho_choice)
    rho_sub = rho_value(r, rho_choice)
    return rho_sub * (a[ell] - a[r - ell] * a[0].inverse()) + _bracket(r, ell, xi)


def eta_weak_residual(r: int, m: int, truncation: int | None = None) -> LaurentPolynomial:
    """``sum_{j=0}^{r} a_j xi_{j+m-r}`` for ``m >= r``."""
    n = m if truncation is None else truncation
    if m < r or m > n:
        raise ValueError(f"need r <= m <= truncation, got r={r}, m={m}, truncation={n}")
    a = signed_coeffs(r)
    xi = eta_table_from_series(r, n)
    out = LaurentPolynomial(0)
    for j in range(r + 1):
        out = out + a[j] * xi[j + m - r]
    return out
