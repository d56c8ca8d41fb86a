import pytest

from cbmw.exact import Q, RHO, U, LaurentPolynomial, RationalFunction, parse_poly, q, rho, u
from cbmw.admissibility.universal import (
    W,
    GammaTable,
    condition1_windows,
    corollary_identity_residual,
    eta_closed_form,
    eta_from_gamma,
    eta_table_from_series,
    eta_weak_residual,
    gamma_closed_form,
    gamma_system_residual,
    is_symmetric_in_u,
    legal_rho_choices,
    eta_identity_residual,
    ring_membership_violations,
    rho_value,
    w_expansion,
    xi0_formula,
    z_series,
)
from cbmw.symfun import signed_coeffs

P = parse_poly
RINV = rho() ** -1


class TestZSeries:
    def test_constant_term_r1(self):
        assert z_series(1, 4)[0] == -RINV + W + RINV * u(1) ** 2

    def test_constant_term_substituted_r1(self):
        c = z_series(1, 4, "substituted", "minus-a0")[0]
        assert c == (u(1) ** 2 - 1) * u(1) ** -1 + W

    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_constant_term_any_r(self, r):
        a0 = signed_coeffs(r)[0]
        even = 1 if r % 2 == 0 else 0
        assert z_series(r, 2)[0] == (a0 * a0 - 1) * RINV + W * (1 - even * a0)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            z_series(1, 2, "numeric")


class TestXi:
    def test_r1_first_terms(self):
        xi = eta_table_from_series(1, 3)
        assert xi[0] == RINV * (u(1) ** 2 - 1) + W
        assert xi[1] == (u(1) ** 2 - 1) * RINV * u(1) + W * u(1)

    def test_eta_is_xi_over_w(self):
        xi = eta_table_from_series(2, 3)
        assert xi.eta(2) * W == xi[2]

    def test_closed_form_examples(self):
        assert eta_closed_form(1, 0) == RINV * (u(1) ** 2 - 1) + W
        a0 = u(1) * u(2)
        assert eta_closed_form(2, 0) == RINV * (a0 * a0 - 1) + W * (1 - a0)
        assert eta_closed_form(1, 2) == eta_table_from_series(1, 2)[2]

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_series_matches_closed_form(self, r):
        n = 2 * r + 8
        xi = eta_table_from_series(r, n)
        assert all(xi[a] == eta_closed_form(r, a) for a in range(n + 1))
        assert xi[0] == xi0_formula(r)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_ring_membership(self, r):
        xi = eta_table_from_series(r, 2 * r + 8)
        for a in range(2 * r + 9):
            assert ring_membership_violations(xi[a], r) == []


class TestRingMembership:
    def test_w_expansion(self):
        assert w_expansion(W**3 * u(1) + 2) == {3: u(1), 0: LaurentPolynomial(2)}
        assert w_expansion(q() ** 2 + q() ** -2) == {2: LaurentPolynomial(1), 0: LaurentPolynomial(2)}

    def test_rejections(self):
        assert "q enters other than through q - q^-1" in ring_membership_violations(q(), 1)
        assert "positive power of rho" in ring_membership_violations(rho(), 1)
        assert "negative power of u1" in ring_membership_violations(u(1) ** -1, 1)
        assert "not symmetric in u" in ring_membership_violations(u(1), 2)
        assert ring_membership_violations(u(1) + u(2) + RINV * W, 2) == []

    def test_symmetry(self):
        assert is_symmetric_in_u(u(1) * u(2) * u(3), 3)
        assert not is_symmetric_in_u(u(1) * u(2), 3)


class TestRho:
    def test_values(self):
        assert rho_value(1, "minus-a0") == u(1)
        assert rho_value(2, "q-inv-a0") == q() ** -1 * u(1) * u(2)
        assert rho_value(2, "minus-q-a0") == -q() * u(1) * u(2)
        assert legal_rho_choices(3) == ("minus-a0", "plus-a0")

    def test_parity_mismatch(self):
        with pytest.raises(ValueError):
            rho_value(2, "minus-a0")
        assert rho_value(2, "minus-a0", strict=False) == -u(1) * u(2)

    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_condition_two_holds(self, r):
        a0 = signed_coeffs(r)[0]
        for choice in legal_rho_choices(r):
            rv = rho_value(r, choice)
            lhs = rv.inverse() * a0 - rv * a0.inverse()
            assert lhs == (W if r % 2 == 0 else 0)


class TestGamma:
    def test_r1(self):
        g = gamma_closed_form(1)[1]
        assert g == RationalFunction(1 - u(1) ** 2, rho() * (q() ** -1 - q())) + 1

    def test_r2_shape(self):
        g1 = gamma_closed_form(2)[1]
        pre = RationalFunction(u(2) * u(1) - 1, u(1) - u(2))
        body = RationalFunction((1 - u(1) ** 2) * u(2), rho() * (q() ** -1 - q())) - u(1)
        assert g1 == pre * body

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_system(self, r):
        assert all(res.is_zero() for res in gamma_system_residual(r, gamma_closed_form(r)))

    def test_perturbed_system(self):
        g = gamma_closed_form(1)
        bumped = GammaTable(1, (g[1] + 1,))
        assert not gamma_system_residual(1, bumped)[0].is_zero()

    def test_eta_from_gamma_r1(self):
        etas = eta_from_gamma(1, 1)
        assert etas[0] * W == (q() - q() ** -1) + (u(1) ** 2 - 1) * RINV
        xi = eta_table_from_series(1, 1)
        assert etas[1] * W == xi[1]

    def test_eta_from_gamma_r2(self):
        assert eta_from_gamma(2, 0)[0] == eta_table_from_series(2, 0).eta(0)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_agreement(self, r):
        xi = eta_table_from_series(r, 8)
        assert all(e * W == xi[a] for a, e in enumerate(eta_from_gamma(r, 8)))


class TestConditionOne:
    def test_windows(self):
        # j ranges worked by hand; entries are the indices 2j - l
        assert condition1_windows(2, 1) == ([], [])
        assert condition1_windows(3, 1) == ([3], [1])
        assert condition1_windows(4, 2) == ([4], [0])
        assert condition1_windows(4, 3) == ([], [])
        assert condition1_windows(5, 2) == ([4], [0, 2])

    @pytest.mark.parametrize("r, ell", [(2, 1), (3, 1), (3, 2), (4, 2)])
    def test_corollary_examples(self, r, ell):
        assert corollary_identity_residual(r, ell).is_zero()

    @pytest.mark.parametrize("r", [2, 3])
    def test_every_choice(self, r):
        for choice in legal_rho_choices(r):
            for ell in range(1, r):
                assert corollary_identity_residual(r, ell, choice).is_zero()
                assert eta_identity_residual(r, ell).is_zero()

    def test_ell_out_of_range(self):
        with pytest.raises(ValueError):
            corollary_identity_residual(3, 3)
        with pytest.raises(ValueError):
            eta_identity_residual(1, 1)

    def test_illegal_rho_choice(self):
        with pytest.raises(ValueError):
            corollary_identity_residual(2, 1, "minus-a0")


class TestWeak:
    @pytest.mark.parametrize("r, ms", [(1, range(1, 7)), (2, range(2, 7)), (3, range(3, 6))])
    def test_examples(self, r, ms):
        assert all(eta_weak_residual(r, m, 8).is_zero() for m in ms)

    def test_bad_m(self):
        with pytest.raises(ValueError):
            eta_weak_residual(3, 2)
