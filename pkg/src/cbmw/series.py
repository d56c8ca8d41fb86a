"""Truncated formal power series in ``t`` (ascending) or ``t^-1`` (descending).

Coefficients are exact ring elements: :class:`LaurentPolynomial` where
possible, :class:`RationalFunction` once a division forces it.
"""

from __future__ import annotations

from typing import Sequence

from .exact import LaurentPolynomial, RationalFunction, U

ASCENDING = "ascending"
DESCENDING = "descending"
_DIRECTIONS = (ASCENDING, DESCENDING)

Coefficient = LaurentPolynomial | RationalFunction


def _coerce_coeff(c) -> Coefficient:
    if isinstance(c, (LaurentPolynomial, RationalFunction)):
        return c
    if isinstance(c, int):
        return LaurentPolynomial(c)
    raise TypeError(f"unsupported series coefficient {type(c).__name__}")


def _simplify(c: Coefficient) -> Coefficient:
    if isinstance(c, RationalFunction) and c.is_polynomial():
        return c.num
    return c


class Series:
    """``sum_{a=0}^{N} c_a x^a + O(x^{N+1})`` with ``x = t`` or ``x = t^-1``."""

    __slots__ = ("direction", "coeffs")

    def __init__(self, coeffs: Sequence, direction: str = DESCENDING):
        if direction not in _DIRECTIONS:
            raise ValueError(f"direction must be one of {_DIRECTIONS}")
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "coeffs", tuple(_simplify(_coerce_coeff(c)) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @classmethod
    def constant(cls, c, truncation: int, direction: str = DESCENDING) -> Series:
        return cls([c] + [0] * truncation, direction)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, a: int) -> Coefficient:
        return self.coeffs[a]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, n: int) -> Series:
        if n > self.truncation:
            raise ValueError(f"cannot extend truncation {self.truncation} to {n}")
        return Series(self.coeffs[: n + 1], self.direction)

    def _align(self, other) -> tuple[Series, int]:
        if not isinstance(other, Series):
            other = Series.constant(other, self.truncation, self.direction)
        if other.direction != self.direction:
            raise ValueError("cannot combine ascending and descending series")
        return other, min(self.truncation, other.truncation)

    def __add__(self, other):
        o, n = self._align(other)
        return Series([self.coeffs[i] + o.coeffs[i] for i in range(n + 1)], self.direction)

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series([-c for c in self.coeffs], self.direction)

    def __sub__(self, other):
        o, n = self._align(other)
        return Series([self.coeffs[i] - o.coeffs[i] for i in range(n + 1)], self.direction)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPolynomial, RationalFunction)):
            return Series([c * other for c in self.coeffs], self.direction)
        o, n = self._align(other)
        out = []
        for k in range(n + 1):
            acc = LaurentPolynomial(0)
            for i in range(k + 1):
                a, b = self.coeffs[i], o.coeffs[k - i]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return Series(out, self.direction)

    __rmul__ = __mul__

    def invert(self) -> Series:
        return series_invert(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.direction == other.direction and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.direction, self.coeffs))

    def __str__(self) -> str:
        sign = 1 if self.direction == ASCENDING else -1

        def power(a: int) -> str:
            return "t" if a * sign == 1 else f"t^{a * sign}"

        parts = [f"({c})" if a == 0 else f"({c})*{power(a)}" for a, c in enumerate(self.coeffs) if c]
        body = " + ".join(parts) or "0"
        return f"{body} + O({power(self.truncation + 1)})"

    def __repr__(self) -> str:
        return f"Series({self.direction}, N={self.truncation})"


def series_arith(a: Series, b: Series, op: str) -> Series:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown series operation {op!r}")


def _reciprocal(c: Coefficient) -> Coefficient:
    if isinstance(c, LaurentPolynomial) and c.is_unit():
        return c.inverse()
    return RationalFunction.coerce(c).reciprocal()


def series_invert(s: Series) -> Series:
    """Multiplicative inverse up to the same truncation."""
    c0 = s.coeffs[0]
    if not c0:
        raise ZeroDivisionError("non-unit constant term")
    inv0 = _reciprocal(c0)
    out = [inv0]
    for n in range(1, s.truncation + 1):
        acc = LaurentPolynomial(0)
        for k in range(1, n + 1):
            ck = s.coeffs[k]
            if ck:
                acc = acc + ck * out[n - k]
        out.append(_simplify(-(acc * inv0)))
    return Series(out, s.direction)


def expand_geometric_factor(kind: str, direction: str, truncation: int, index: int | None = None) -> Series:
    """Expansions of the rational factors that build ``G``, ``A`` and ``Z``.

    ``kind`` is one of ``"g"`` (the factor ``(t - u_index)/(t u_index - 1)``),
    ``"even-tail"`` (``t^2/(t^2 - 1)``) or ``"odd-tail"`` (``t/(t^2 - 1)``).
    """
    if truncation < 0:
        raise ValueError("truncation must be >= 0")
    n = truncation
    if kind == "even-tail":
        if direction == DESCENDING:
            return Series([1 if a % 2 == 0 else 0 for a in range(n + 1)], direction)
        return Series([-1 if a % 2 == 0 and a > 0 else 0 for a in range(n + 1)], direction)
    if kind == "odd-tail":
        if direction == DESCENDING:
            return Series([1 if a % 2 == 1 else 0 for a in range(n + 1)], direction)
        return Series([-1 if a % 2 == 1 else 0 for a in range(n + 1)], direction)
    if kind != "g":
        raise ValueError(f"unknown factor kind {kind!r}")
    if index is None:
        raise ValueError("the g-factor needs a u-index")
    x = LaurentPolynomial.var(U(index))
    if direction == ASCENDING:
        # (u - t) * sum_k u^k t^k
        coeffs = [x] + [x ** (m + 1) - x ** (m - 1) for m in range(1, n + 1)]
    else:
        coeffs = [x ** -1] + [x ** (-m - 1) - x ** (1 - m) for m in range(1, n + 1)]
    return Series(coeffs, direction)
