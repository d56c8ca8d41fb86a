"""Exact arithmetic kernel.

Multivariate Laurent polynomials with integer coefficients in the variables
``u1 .. ur, rho, q``, normalized rational functions over them, and exact
evaluation at rational points (``fractions.Fraction``).

All values are immutable after construction.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

__all__ = [
    "Variable",
    "U",
    "RHO",
    "Q",
    "LaurentPolynomial",
    "RationalFunction",
    "SingularPointError",
    "ratfun_normalize",
    "substitute",
    "evaluate",
    "parse_poly",
    "u",
    "rho",
    "q",
]


class Variable(NamedTuple):
    """A ring variable. Tuple order gives u1 < u2 < ... < ur < rho < q."""

    kind: int  # 0 = u, 1 = rho, 2 = q
    index: int = 0

    def __str__(self) -> str:
        if self.kind == 0:
            return f"u{self.index}"
        return "rho" if self.kind == 1 else "q"


def U(i: int) -> Variable:
    if i < 1:
        raise ValueError(f"u-index must be >= 1, got {i}")
    return Variable(0, i)


RHO = Variable(1)
Q = Variable(2)

# Monomials are packed into one int: a 32-bit slot per variable holding
# exponent + 2^31. Slots follow the variable order u1..u14, rho, q, so
# multiplying monomials is integer addition minus a constant bias.
_SLOT_BITS = 32
_HALF = 1 << (_SLOT_BITS - 1)
_MASK = (1 << _SLOT_BITS) - 1
MAX_U = 14
_NSLOTS = MAX_U + 2
_SLOT_VARS = tuple(Variable(0, i) for i in range(1, MAX_U + 1)) + (Variable(1), Variable(2))
_BIAS = sum(_HALF << (_SLOT_BITS * k) for k in range(_NSLOTS))

Monomial = int
ONE_MONO: Monomial = _BIAS

Scalar = Union[int, Fraction]


class SingularPointError(ZeroDivisionError):
    """A denominator vanishes (identically, or at an evaluation point)."""

    def __init__(self, message: str, denominator: object = None):
        super().__init__(message)
        self.denominator = denominator


def _slot(v: Variable) -> int:
    if v.kind == 0:
        if not 1 <= v.index <= MAX_U:
            raise ValueError(f"u-index {v.index} outside supported range 1..{MAX_U}")
        return v.index - 1
    return MAX_U + v.kind - 1


def _pack(exponents: Iterable[tuple[Variable, int]]) -> Monomial:
    m = _BIAS
    for v, e in exponents:
        if not -_HALF < e < _HALF:
            raise OverflowError(f"exponent {e} out of range")
        m += e << (_SLOT_BITS * _slot(v))
    return m


@lru_cache(maxsize=1 << 16)
def _unpack(m: Monomial) -> tuple[tuple[Variable, int], ...]:
    out = []
    for k in range(_NSLOTS):
        e = (m & _MASK) - _HALF
        if e:
            out.append((_SLOT_VARS[k], e))
        m >>= _SLOT_BITS
    return tuple(out)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return a + b - _BIAS


def _mono_pow(m: Monomial, k: int) -> Monomial:
    return (m - _BIAS) * k + _BIAS


def monomial_exponents(m: Monomial) -> dict[Variable, int]:
    return dict(_unpack(m))


class LaurentPolynomial:
    """Sparse Laurent polynomial: ``{monomial: nonzero int}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | int | None = None):
        if terms is None:
            terms = {}
        elif isinstance(terms, int):
            terms = {ONE_MONO: terms} if terms else {}
        else:
            terms = {m: int(c) for m, c in terms.items() if c}
        self._terms: dict = terms
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> LaurentPolynomial:
        # terms must already be clean (no zero coefficients)
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, v: Variable, exponent: int = 1) -> LaurentPolynomial:
        return cls._raw({_pack([(v, exponent)]): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[Variable, int], coeff: int = 1) -> LaurentPolynomial:
        return cls._raw({_pack(exponents.items()): coeff} if coeff else {})

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def exponent_items(self) -> Iterator[tuple[dict[Variable, int], int]]:
        for m, c in self._terms.items():
            yield monomial_exponents(m), c

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self._terms.get(ONE_MONO, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> set[Variable]:
        return {v for m in self._terms for v, _ in _unpack(m)}

    def exponent_range(self, v: Variable) -> tuple[int, int]:
        """(min, max) exponent of ``v`` over all terms (0 for absent)."""
        if not self._terms:
            return (0, 0)
        shift = _SLOT_BITS * _slot(v)
        exps = [((m >> shift) & _MASK) - _HALF for m in self._terms]
        return min(exps), max(exps)

    def coeff_in(self, v: Variable, k: int) -> LaurentPolynomial:
        """Coefficient of ``v^k``, as a polynomial free of ``v``."""
        shift = _SLOT_BITS * _slot(v)
        drop = k << shift
        return LaurentPolynomial._raw(
            {m - drop: c for m, c in self._terms.items() if ((m >> shift) & _MASK) - _HALF == k}
        )

    def content(self) -> int:
        return reduce(gcd, self._terms.values(), 0)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> LaurentPolynomial | None:
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o._terms) > len(self._terms):
            big, small = o._terms, self._terms
        else:
            big, small = self._terms, o._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return LaurentPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> LaurentPolynomial:
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            s = out.get(m, 0) - c
            if s:
                out[m] = s
            else:
                del out[m]
        return LaurentPolynomial._raw(out)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPolynomial._raw({})
            return LaurentPolynomial._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        out: dict = {}
        bias = _BIAS
        get = out.get
        for m1, c1 in self._terms.items():
            m1 -= bias
            for m2, c2 in other._terms.items():
                m = m1 + m2
                s = get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return LaurentPolynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPolynomial:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if len(self._terms) == 1:
            ((m, c),) = self._terms.items()
            return LaurentPolynomial._raw({_mono_pow(m, k): c**k})
        result = LaurentPolynomial(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and next(iter(self._terms.values())) in (1, -1)

    def inverse(self) -> LaurentPolynomial:
        """Inverse of a unit (``+-`` a monomial)."""
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit of the Laurent ring")
        ((m, c),) = self._terms.items()
        return LaurentPolynomial._raw({_mono_pow(m, -1): c})

    def exact_div(self, other: LaurentPolynomial | int) -> LaurentPolynomial:
        """Divide by a monomial with a coefficient dividing every coefficient."""
        o = self._coerce(other)
        if o is None or len(o._terms) != 1:
            raise ValueError("exact_div needs a single-term divisor")
        ((m, c),) = o._terms.items()
        inv = _mono_pow(m, -1)
        out = {}
        for mm, cc in self._terms.items():
            qq, rr = divmod(cc, c)
            if rr:
                raise ValueError(f"{c} does not divide coefficient {cc}")
            out[_mono_mul(mm, inv)] = qq
        return LaurentPolynomial._raw(out)

    def __truediv__(self, other):
        if isinstance(other, (int, LaurentPolynomial)):
            return RationalFunction(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return RationalFunction(LaurentPolynomial(other), self)
        return NotImplemented

    # -- equality / hashing -------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({ONE_MONO: other} if other else {})
        if isinstance(other, RationalFunction):
            return other == self
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution / evaluation -----------------------------------------
    def subs(self, bindings: Mapping[Variable, LaurentPolynomial | int]) -> LaurentPolynomial:
        """Substitute Laurent polynomials for variables.

        A variable occurring with a negative exponent must be bound to a unit.
        Use :func:`substitute` for general rational substitutions.
        """
        if not bindings:
            return self
        pow_cache: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in pow_cache:
                pow_cache[key] = LaurentPolynomial._coerce(bindings[v]) ** e
            return pow_cache[key]

        out = LaurentPolynomial(0)
        for m, c in self._terms.items():
            kept = []
            term = LaurentPolynomial(c)
            for v, e in _unpack(m):
                if v in bindings:
                    term = term * power(v, e)
                else:
                    kept.append((v, e))
            if kept:
                term = term * LaurentPolynomial._raw({_pack(kept): 1})
            out = out + term
        return out

    def evaluate(self, point: Mapping[Variable, Scalar]) -> Fraction:
        # With x = n/d and exponents in [lo, hi] (lo <= 0 <= hi), x^e * n^-lo * d^hi
        # equals n^(e-lo) * d^(hi-e), so the sum runs over integers with one final division.
        factors = {}
        scale = Fraction(1)
        for v in self.variables():
            try:
                x = Fraction(point[v])
            except KeyError:
                raise KeyError(f"no value for variable {v}") from None
            lo, hi = self.exponent_range(v)
            lo, hi = min(lo, 0), max(hi, 0)
            if lo < 0 and x == 0:
                raise SingularPointError(f"{v} = 0 raised to negative power {lo}", str(v))
            n, d = x.numerator, x.denominator
            factors[v] = (n, d, lo, hi)
            scale *= Fraction(n**-lo * d**hi)
        pow_cache: dict = {}
        total = 0
        for m, c in self._terms.items():
            exps = dict(_unpack(m))
            val = c
            for v, (n, d, lo, hi) in factors.items():
                e = exps.get(v, 0)
                p = pow_cache.get((v, e))
                if p is None:
                    p = pow_cache[(v, e)] = n ** (e - lo) * d ** (hi - e)
                val *= p
            total += val
        return Fraction(total) / scale

    def permute_u(self, perm: Mapping[int, int]) -> LaurentPolynomial:
        """Rename u-variables: u_i -> u_perm[i]."""
        out = {}
        for m, c in self._terms.items():
            out[_pack(((Variable(0, perm.get(v.index, v.index)) if v.kind == 0 else v), e) for v, e in _unpack(m))] = c
        return LaurentPolynomial._raw(out)

    # -- rendering ----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in graded-lex order (highest total degree first, then lex on u1 < ... < q)."""
        vs = sorted(self.variables())

        def key(item):
            m = dict(_unpack(item[0]))
            return (-sum(m.values()), tuple(-m.get(v, 0) for v in vs))

        return sorted(self._terms.items(), key=key)

    def leading_coefficient(self) -> int:
        if not self._terms:
            return 0
        return self.sorted_terms()[0][1]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            factors = [str(v) if e == 1 else f"{v}^{e}" for v, e in _unpack(m)]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"


def u(i: int) -> LaurentPolynomial:
    return LaurentPolynomial.var(U(i))


def rho() -> LaurentPolynomial:
    return LaurentPolynomial.var(RHO)


def q() -> LaurentPolynomial:
    return LaurentPolynomial.var(Q)


def _as_poly(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial(x)
    raise TypeError(f"expected a Laurent polynomial, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# rational functions


def _split_shift(p: LaurentPolynomial) -> tuple[LaurentPolynomial, Monomial]:
    """Write p = x^shift * p0 with p0 an ordinary polynomial not divisible by any variable."""
    if not p._terms:
        return p, ONE_MONO
    dicts = [dict(_unpack(m)) for m in p._terms]
    vs = set().union(*dicts)
    shift = _pack((v, min(d.get(v, 0) for d in dicts)) for v in vs)
    if shift == ONE_MONO:
        return p, ONE_MONO
    inv = _mono_pow(shift, -1)
    return LaurentPolynomial._raw({_mono_mul(m, inv): c for m, c in p._terms.items()}), shift


def _poly_cancel(a: LaurentPolynomial, b: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """Cancel the polynomial gcd of two ordinary polynomials (sympy backend)."""
    from sympy import ZZ
    from sympy.polys.rings import ring

    vs = sorted(a.variables() | b.variables())
    if not vs:
        return a, b
    index = {v: i for i, v in enumerate(vs)}
    R, *_ = ring(",".join(f"x{i}" for i in range(len(vs))), ZZ)
    n = len(vs)

    def to_sympy(p: LaurentPolynomial):
        out = {}
        for m, c in p._terms.items():
            exps = [0] * n
            for v, e in _unpack(m):
                exps[index[v]] = e
            out[tuple(exps)] = c
        return R(out)

    def from_sympy(f) -> LaurentPolynomial:
        out = {}
        for exps, c in f.items():
            out[_pack((vs[i], e) for i, e in enumerate(exps) if e)] = int(c)
        return LaurentPolynomial._raw(out)

    g = to_sympy(a).gcd(to_sympy(b))
    if g == R.one or g == -R.one:
        return a, b
    fa, fb = to_sympy(a).exquo(g), to_sympy(b).exquo(g)
    return from_sympy(fa), from_sympy(fb)


class RationalFunction:
    """Reduced quotient ``num / den`` of Laurent polynomials.

    Canonical form: ``den`` is an ordinary polynomial divisible by no variable
    (monomial factors live in ``num`` as Laurent exponents), ``num`` and ``den``
    share no common factor, integer content is cancelled, and the leading
    term of ``den`` in graded-lex order is positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPolynomial | int, den: LaurentPolynomial | int = 1):
        n, d = _normalize_pair(_as_poly(num), _as_poly(den))
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _raw(cls, num: LaurentPolynomial, den: LaurentPolynomial) -> RationalFunction:
        obj = cls.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def coerce(cls, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, LaurentPolynomial)):
            return cls._raw(_as_poly(x), LaurentPolynomial(1))
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")

    def is_polynomial(self) -> bool:
        return self.den == 1

    def as_polynomial(self) -> LaurentPolynomial:
        if not self.is_polynomial():
            raise ValueError(f"not a Laurent polynomial: {self}")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __add__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            if self.den == 1:
                return RationalFunction._raw(self.num + o.num, self.den)
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == 1 and o.den == 1:
            return RationalFunction._raw(self.num * o.num, self.den)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def reciprocal(self) -> RationalFunction:
        if self.num.is_zero():
            raise SingularPointError("division by zero", "0")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.reciprocal()

    def __pow__(self, k: int) -> RationalFunction:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.reciprocal() ** (-k)
        return RationalFunction._raw(self.num**k, self.den**k)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentPolynomial)):
            return self.den == 1 and self.num == other
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        if self.den == 1:
            return hash(self.num)
        return hash((self.num, self.den))

    def evaluate(self, point: Mapping[Variable, Scalar]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise SingularPointError(f"denominator {self.den} vanishes at the point", str(self.den))
        return self.num.evaluate(point) / d

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"


def _normalize_pair(num: LaurentPolynomial, den: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    if den.is_zero():
        raise SingularPointError("division by zero", "0")
    if num.is_zero():
        return num, LaurentPolynomial(1)
    d0, dshift = _split_shift(den)
    if d0.is_constant():
        num = LaurentPolynomial._raw({_mono_mul(m, _mono_pow(dshift, -1)): c for m, c in num._terms.items()})
        c = d0.constant_value()
        g = gcd(num.content(), c)
        if c < 0:
            g = -g
        if g != 1:
            num = LaurentPolynomial._raw({m: cc // g for m, cc in num._terms.items()})
        return num, LaurentPolynomial(c // g)
    n0, nshift = _split_shift(num)
    n0, d0 = _poly_cancel(n0, d0)
    g = gcd(n0.content(), d0.content())
    if d0.leading_coefficient() < 0:
        g = -g
    if g != 1:
        n0 = LaurentPolynomial._raw({m: c // g for m, c in n0._terms.items()})
        d0 = LaurentPolynomial._raw({m: c // g for m, c in d0._terms.items()})
    shift = _mono_mul(nshift, _mono_pow(dshift, -1))
    if shift != ONE_MONO:
        n0 = LaurentPolynomial._raw({_mono_mul(m, shift): c for m, c in n0._terms.items()})
    return n0, d0


def ratfun_normalize(num: LaurentPolynomial | int, den: LaurentPolynomial | int) -> RationalFunction:
    return RationalFunction(num, den)


def substitute(f, bindings: Mapping[Variable, object]) -> RationalFunction:
    """Substitute rational functions for variables and renormalize."""
    f = RationalFunction.coerce(f)
    rb = {v: RationalFunction.coerce(x) for v, x in bindings.items()}

    def sub_poly(p: LaurentPolynomial) -> RationalFunction:
        # group by substituted part so each binding power is computed once
        total = RationalFunction(0)
        cache: dict = {}
        for m, c in p.items():
            kept = []
            factor = RationalFunction(c)
            for v, e in _unpack(m):
                if v in rb:
                    key = (v, e)
                    if key not in cache:
                        base = rb[v]
                        if e < 0 and base.is_zero():
                            raise SingularPointError(
                                f"denominator vanishes identically after substituting {v} := 0", str(v)
                            )
                        cache[key] = base**e
                    factor = factor * cache[key]
                else:
                    kept.append((v, e))
            if kept:
                factor = factor * LaurentPolynomial._raw({_pack(kept): 1})
            total = total + factor
        return total

    num = sub_poly(f.num)
    den = sub_poly(f.den)
    if den.is_zero():
        raise SingularPointError(f"denominator {f.den} vanishes identically after substitution", str(f.den))
    return num / den


def evaluate(f, point: Mapping[Variable, Scalar]) -> Fraction:
    if isinstance(f, int):
        return Fraction(f)
    return f.evaluate(point)


# ---------------------------------------------------------------------------
# parsing of the canonical text form

_TOKEN = re.compile(r"\s*(?:(\d+)|(u\d+|rho|q)|(\*\*|[-+*^()/]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at {pos}: {text[pos:]!r}")
        out.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_poly(text: str):
    """Parse ``u1^2 - 1 + (q - q^-1)*rho^-1`` style expressions.

    Returns a LaurentPolynomial, or a RationalFunction when ``/`` is used
    with a non-unit divisor.
    """
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'token'} in {text!r}")
        pos += 1
        return tok

    def expr():
        val = term()
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in ("*", "/"):
            op = take()
            rhs = unary()
            if op == "*":
                val = val * rhs
            elif isinstance(rhs, LaurentPolynomial) and rhs.is_unit():
                val = val * rhs.inverse()
            else:
                val = RationalFunction.coerce(val) / rhs
        return val

    def unary():
        if peek() == "-":
            take()
            return -unary()
        if peek() == "+":
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() in ("^", "**"):
            take()
            sign = 1
            if peek() == "-":
                take()
                sign = -1
            tok = take()
            if not tok.isdigit():
                raise ValueError(f"integer exponent expected in {text!r}")
            return base ** (sign * int(tok))
        return base

    def atom():
        tok = take()
        if tok.isdigit():
            return LaurentPolynomial(int(tok))
        if tok == "(":
            val = expr()
            take(")")
            return val
        if tok == "rho":
            return rho()
        if tok == "q":
            return q()
        if tok.startswith("u"):
            return u(int(tok[1:]))
        raise ValueError(f"unexpected token {tok!r} in {text!r}")

    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return result


def poly_sum(items: Iterable[LaurentPolynomial]) -> LaurentPolynomial:
    total = LaurentPolynomial(0)
    for x in items:
        total = total + x
    return total
