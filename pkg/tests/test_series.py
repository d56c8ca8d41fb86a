import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbmw.exact import U, LaurentPolynomial, RationalFunction, q, u
from cbmw.series import (
    ASCENDING,
    DESCENDING,
    Series,
    expand_geometric_factor,
    series_arith,
    series_invert,
)

from strategies import laurent_polys


def desc(*coeffs):
    return Series(list(coeffs), DESCENDING)


def test_product_of_binomials():
    assert series_arith(desc(1, 1, 0), desc(1, -1, 0), "mul") == desc(1, 0, -1)


def test_add_zero():
    s = desc(u(1), q(), 3)
    assert series_arith(s, Series.constant(0, 2, DESCENDING), "add") == s


def test_geometric_inverse():
    even = expand_geometric_factor("even-tail", DESCENDING, 6)
    assert even * desc(1, 0, -1, 0, 0, 0, 0) == Series.constant(1, 6, DESCENDING)


def test_invert_geometric():
    assert series_invert(desc(1, -1, 0, 0)) == desc(1, 1, 1, 1)


def test_invert_zero_constant():
    with pytest.raises(ZeroDivisionError, match="non-unit constant term"):
        series_invert(desc(0, 1))


def test_truncation_mismatch_uses_minimum():
    s = desc(1, 2, 3, 4) + desc(1, 1)
    assert s.truncation == 1 and s == desc(2, 3)
    assert (desc(1, 2, 3) * desc(1, 1)).truncation == 1


def test_directions_do_not_mix():
    with pytest.raises(ValueError):
        desc(1, 2) + Series([1, 2], ASCENDING)


def test_unknown_op():
    with pytest.raises(ValueError):
        series_arith(desc(1), desc(1), "div")


def test_even_tail():
    assert expand_geometric_factor("even-tail", DESCENDING, 4) == desc(1, 0, 1, 0, 1)


def test_odd_tail_is_t_inverse_times_even_tail():
    odd = expand_geometric_factor("odd-tail", DESCENDING, 5)
    even = expand_geometric_factor("even-tail", DESCENDING, 5)
    assert odd == desc(0, *even.coeffs[:5])


def test_ascending_tails():
    # t^2/(t^2 - 1) and t/(t^2 - 1) as power series in t
    assert expand_geometric_factor("even-tail", ASCENDING, 4).coeffs == (0, 0, -1, 0, -1)
    assert expand_geometric_factor("odd-tail", ASCENDING, 4).coeffs == (0, -1, 0, -1, 0)


def test_g_factor_ascending():
    g = expand_geometric_factor("g", ASCENDING, 2, 1)
    assert g.coeffs == (u(1), u(1) ** 2 - 1, u(1) ** 3 - u(1))


def test_g_factor_descending():
    g = expand_geometric_factor("g", DESCENDING, 2, 1)
    x = u(1) ** -1
    assert g.coeffs == (x, x**2 - 1, x**3 - x)


def _expand_reciprocal_g(index, n):
    # (t u - 1)/(t - u) = (1 - t u) * sum_k t^k u^(-k-1) in ascending powers of t
    x = u(index)
    c = [x ** (-k - 1) for k in range(n + 1)]
    return Series([c[0]] + [c[k] - x * c[k - 1] for k in range(1, n + 1)], ASCENDING)


def test_invert_ascending_g_factor_r1():
    g = expand_geometric_factor("g", ASCENDING, 6, 1)
    assert g.invert() == _expand_reciprocal_g(1, 6)


def test_ascending_g_factor_is_polynomial():
    for a, c in enumerate(expand_geometric_factor("g", ASCENDING, 10, 2).coeffs):
        assert isinstance(c, LaurentPolynomial)
        for exps, _ in c.exponent_items():
            assert all(e >= 0 for e in exps.values())


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_g_inverse_identity(r):
    n = 12
    prod = Series.constant(1, n, DESCENDING)
    inv = Series.constant(1, n, DESCENDING)
    for ell in range(1, r + 1):
        f = expand_geometric_factor("g", DESCENDING, n, ell)
        prod, inv = prod * f, inv * f.invert()
    assert prod * inv == Series.constant(1, n, DESCENDING)


@given(st.lists(laurent_polys(max_terms=2), min_size=1, max_size=4),
       st.lists(laurent_polys(max_terms=2), min_size=1, max_size=4))
@settings(max_examples=40, deadline=None)
def test_mul_matches_polynomial_product(xs, ys):
    # encode a finitely supported series as a polynomial in an unused variable u9
    t = u(9)
    n = len(xs) + len(ys) - 2
    pad = lambda c: list(c) + [0] * (n + 1 - len(c))
    prod = Series(pad(xs), ASCENDING) * Series(pad(ys), ASCENDING)
    px = sum((c * t**k for k, c in enumerate(xs)), LaurentPolynomial(0))
    py = sum((c * t**k for k, c in enumerate(ys)), LaurentPolynomial(0))
    full = px * py
    for k in range(n + 1):
        assert prod[k] == full.coeff_in(U(9), k)


@given(st.lists(laurent_polys(max_terms=2), min_size=3, max_size=5))
@settings(max_examples=30, deadline=None)
def test_double_inverse(tail):
    s = desc(1, *tail)
    assert series_invert(series_invert(s)) == s


def test_rational_coefficients_survive():
    s = desc(u(1) + 1, 1, 0)
    inv = s.invert()
    assert inv[0] == RationalFunction(1, u(1) + 1)
    assert s * inv == Series.constant(1, 2, DESCENDING)


def test_str():
    assert str(desc(1, 0, u(1))) == "(1) + (u1)*t^-2 + O(t^-3)"
    assert str(Series([1, 2], ASCENDING)) == "(1) + (2)*t + O(t^2)"
