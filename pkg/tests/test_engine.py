"""Theorem engine: closed forms, independent routes, trace values, ranks."""

import math
from fractions import Fraction

import pytest

from abelrank.engine import (
    SUITES,
    f_polynomials,
    ftilde_polynomials,
    r_bullet_direct,
    r_star_direct,
    schur_rank,
    schur_table,
    sym_rank_series_adams,
    sym_rank_series_betti,
    trace_values,
    verify,
    z_series,
)
from abelrank.errors import ConsistencyError
from abelrank.exact import RationalSeries, UniPoly
from abelrank.model import (
    DiagonalClass,
    SheafDescriptor,
    preset_elliptic,
    preset_prym,
)
from abelrank.specialpolys import qpoly
from abelrank.symgroup import Partition, dimension, partitions_of
from conftest import naive_coeff, naive_mul, naive_pow, preset_pool, random_pool

S = lambda coeffs: UniPoly(coeffs, "s")
T = lambda coeffs: UniPoly(coeffs, "t")


class TestDirectRanks:
    def test_theta_rank_one_vanishes(self, theta4):
        assert r_star_direct(theta4, 1) == 0

    def test_theta_rank_two(self, theta4):
        assert r_star_direct(theta4, 2) == 72
        assert r_bullet_direct(theta4, 2) == 14
        assert r_star_direct(theta4, 2) - r_bullet_direct(theta4, 2) == 58

    def test_theta_bullet_against_oracle(self, theta4):
        h = {0: 24, 1: 5, 2: 2, 3: 1}
        for n in range(1, 6):
            assert r_bullet_direct(theta4, n) == naive_coeff(naive_pow(h, n), 4)

    def test_empty_spectrum(self):
        assert r_bullet_direct(preset_elliptic(2, 3), 5) == 0

    def test_prym_top_power(self):
        for g in (2, 3, 4):
            for m in (1, 2, 3):
                d = preset_prym(g, m, 2 * g - 2)
                assert r_star_direct(d, g) == m**g * math.factorial(g)

    def test_rejects_nonpositive_n(self, theta4):
        with pytest.raises(ValueError):
            r_star_direct(theta4, 0)


class TestConvolutionNumerators:
    def test_theta_star(self, theta4):
        f = f_polynomials(theta4)
        assert f.star == 24 * T([0, 3, -36, 432])

    def test_theta_bullet_low_coefficients(self, theta4):
        f = f_polynomials(theta4)
        assert f.bullet[1] == 14
        assert f.bullet[2] == -522

    def test_theta_bullet_cubic_against_series_oracle(self, theta4):
        # Independent route: multiply (1 - 24t)^5 into sum r_bullet(n) t^n,
        # with the ranks from brute-force polynomial powers.  The product
        # must terminate at degree g+1 = 5 and equal t * f_bullet.
        h = {0: 24, 1: 5, 2: 2, 3: 1}
        ranks = {n: naive_coeff(naive_pow(h, n), 4) for n in range(1, 10)}
        assert [ranks[n] for n in (1, 2, 3, 4)] == [0, 14, 1158, 63409]
        pole = naive_pow({0: 1, 1: -24}, 5)
        product = naive_mul(pole, ranks)
        assert all(naive_coeff(product, k) == 0 for k in range(6, 10))
        oracle = UniPoly([naive_coeff(product, k) for k in range(6)], "t")
        f = f_polynomials(theta4)
        assert oracle == f.bullet.shifted(1)
        assert f.bullet[3] == 5089

    def test_theta_combined(self, theta4):
        f = f_polynomials(theta4)
        assert f.combined == T([0, 58, -342, 5279])

    def test_prym_closed_form(self):
        for g in range(2, 7):
            for m in (1, 2, 3):
                d = preset_prym(g, m, 2 * g - 2)
                f = f_polynomials(d)
                expected = UniPoly(
                    [0] * (g - 1) + [m**g * math.factorial(g) - 1], "t"
                )
                assert f.combined == expected

    def test_degree_bound_and_constant_term(self):
        for d in preset_pool() + random_pool(15, seed=101):
            f = f_polynomials(d)
            assert f.combined.is_zero() or f.combined.degree <= d.g - 1
            assert f.combined[0] == d.generic_rank()
            assert f.star[0] == d.generic_rank()
            assert f.bullet[0] == 0


class TestZSeries:
    def test_elliptic_shape(self):
        z = z_series(preset_elliptic(2, 3), "conv")
        assert z.numerator == T([0, 2])
        assert z.pole_base == 3
        assert z.pole_order == 2

    def test_theta_conv_rank_two(self, theta4):
        assert z_series(theta4, "conv").expand(2)[2] == 58

    def test_prym_sym_expansion(self):
        z = z_series(preset_prym(2, 1, 2), "sym")
        assert z.pole_order == 2 * 2 + 2
        assert z.expand(2) == [0, 0, 1]

    def test_star_bullet_series_match_direct(self):
        for d in preset_pool():
            f = f_polynomials(d)
            star = RationalSeries(f.star.shifted(1), d.chi, d.g + 1).expand(8)
            bullet = RationalSeries(f.bullet.shifted(1), d.chi, d.g + 1).expand(8)
            for n in range(1, 9):
                assert star[n] == r_star_direct(d, n)
                assert bullet[n] == r_bullet_direct(d, n)

    def test_sym_requires_integer_chi(self):
        d = SheafDescriptor(
            g=1,
            chi=Fraction(1, 2),
            gamma=DiagonalClass(1, (Fraction(1, 2), Fraction(1))),
        )
        with pytest.raises(ValueError):
            z_series(d, "sym")

    def test_unknown_kind(self, theta4):
        with pytest.raises(ValueError):
            z_series(theta4, "both")


class TestSymmetricNumerators:
    def test_theta_parts(self, theta4):
        ft = ftilde_polynomials(theta4)
        assert ft.star == T([0, 36, 1152, 4824, 1152, 36])
        assert ft.bullet == T([0, -16, -140, -225, -140, -16])
        assert ft.combined == T([0, 52, 1292, 5049, 1292, 52])

    def test_prym_closed_form(self):
        for g in range(2, 7):
            for m in (1, 2, 3):
                d = preset_prym(g, m, 2 * g - 2)
                ft = ftilde_polynomials(d)
                assert ft.combined == UniPoly([0] * (g - 1) + [m**g], "t")
                assert ft.bullet.is_zero()

    def test_elliptic_constant(self):
        for r in (1, 2, 3):
            for chi in (1, 2, 3):
                d = preset_elliptic(r, chi)
                assert ftilde_polynomials(d).combined == T([r])
                assert f_polynomials(d).combined == T([r])

    def test_functional_equation(self):
        for d in preset_pool() + random_pool(25, seed=103):
            ft = ftilde_polynomials(d)
            for part in (ft.star, ft.bullet, ft.combined):
                assert part.reversed_to(2 * d.g - 2) == part

    def test_full_support_forces_top_degree(self):
        for d in random_pool(40, seed=107):
            ft = ftilde_polynomials(d)
            if d.generic_rank() > 0:
                assert ft.combined.degree == 2 * d.g - 2
            assert ft.combined[0] == d.generic_rank()


class TestSymmetricRoutes:
    def test_adams_route_matches_closed_form(self):
        for d in preset_pool() + random_pool(10, seed=109):
            ft = ftilde_polynomials(d)
            pole = 2 * d.g + int(d.chi)
            closed = RationalSeries(ft.star.shifted(1), 1, pole).expand(8)
            assert sym_rank_series_adams(d, 8) == closed

    def test_betti_route_matches_closed_form(self):
        for d in preset_pool() + random_pool(10, seed=113):
            ft = ftilde_polynomials(d)
            pole = 2 * d.g + int(d.chi)
            closed = RationalSeries(ft.bullet.shifted(1), 1, pole).expand(8)
            assert sym_rank_series_betti(d, 8) == closed

    def test_elliptic_first_rank(self):
        for r in (1, 2, 3):
            d = preset_elliptic(r, 2)
            assert sym_rank_series_adams(d, 1)[1] == r

    def test_empty_spectrum_gives_zeros(self):
        assert sym_rank_series_betti(preset_elliptic(2, 3), 6) == [0] * 7

    def test_prym_bullet_vanishes_at_top(self):
        for g in (2, 3, 4):
            d = preset_prym(g, 2, 2 * g - 2)
            assert sym_rank_series_betti(d, 6) == [0] * 7


class TestTraceValues:
    def test_elliptic_closed_form(self):
        for r in (1, 2, 3):
            for chi in (1, 2, 3):
                d = preset_elliptic(r, chi)
                for n in range(1, 7):
                    for sigma in partitions_of(n):
                        tv = trace_values(d, sigma)
                        expected = (
                            r
                            * Fraction(chi) ** (sigma.length - 1)
                            * sum(x * x for x in sigma)
                        )
                        assert tv.bullet == 0
                        assert tv.star == expected
                        assert tv.combined == expected

    def test_prym_closed_forms(self):
        # star: g! [prod (chi + s_i^2 m s)]_{s^g};
        # bullet: [prod (chi - s q_{s_i}(s))]_{s^g}
        for g in (2, 3):
            for m in (1, 2):
                chi = 2 * g - 2
                d = preset_prym(g, m, chi)
                for n in range(1, 6):
                    for sigma in partitions_of(n):
                        star_prod = UniPoly.one("s")
                        bullet_prod = UniPoly.one("s")
                        for part in sigma:
                            star_prod = star_prod * S([chi, part * part * m])
                            bullet_prod = bullet_prod * (
                                S([chi]) - qpoly(part).shifted(1)
                            )
                        expected_star = math.factorial(g) * star_prod[g]
                        expected_bullet = bullet_prod[g]
                        tv = trace_values(d, sigma)
                        assert tv.star == expected_star
                        assert tv.bullet == expected_bullet

    def test_prym_g2_transposition(self):
        tv = trace_values(preset_prym(2, 1, 2), Partition([2]))
        assert (tv.star, tv.bullet, tv.combined) == (0, -1, 1)

    def test_identity_recovers_direct_ranks(self):
        for d in preset_pool() + random_pool(10, seed=127):
            for n in range(1, 5):
                tv = trace_values(d, Partition([1] * n))
                assert tv.star == r_star_direct(d, n)
                assert tv.bullet == r_bullet_direct(d, n)

    def test_integrality(self):
        for d in preset_pool() + random_pool(15, seed=131):
            for sigma in partitions_of(4):
                tv = trace_values(d, sigma)
                assert tv.star.denominator == 1
                assert tv.bullet.denominator == 1

    def test_rejects_empty_cycle_type(self, theta4):
        with pytest.raises(ValueError):
            trace_values(theta4, Partition([]))


class TestSchurRanks:
    def test_theta_degree_two(self, theta4):
        assert schur_rank(theta4, Partition([2])) == 52
        assert schur_rank(theta4, Partition([1, 1])) == 6

    def test_prym_degree_two(self):
        d = preset_prym(2, 1, 2)
        assert schur_rank(d, Partition([2])) == 1
        assert schur_rank(d, Partition([1, 1])) == 0

    def test_symmetric_rank_equals_series_coefficient(self):
        for d in preset_pool():
            coeffs = z_series(d, "sym").expand(5)
            for n in range(1, 6):
                assert schur_rank(d, Partition([n])) == coeffs[n]

    def test_schur_sum_identity(self):
        for d in preset_pool() + random_pool(25, seed=137):
            for n in range(1, 6):
                table = schur_table(d, n)
                weighted = sum(dim * rank for _, dim, rank in table)
                assert weighted == r_star_direct(d, n) - r_bullet_direct(d, n)

    def test_alternating_rank_via_sign_character(self, theta4):
        # n = 2: the alternating part is (c(id) - c(transposition)) / 2
        c_id = trace_values(theta4, Partition([1, 1])).combined
        c_swap = trace_values(theta4, Partition([2])).combined
        assert schur_rank(theta4, Partition([1, 1])) == (c_id - c_swap) / 2

    def test_non_integer_rank_raises(self):
        d = SheafDescriptor(
            g=1,
            chi=Fraction(1),
            gamma=DiagonalClass(1, (Fraction(1), Fraction(1, 7))),
        )
        with pytest.raises(ConsistencyError):
            schur_rank(d, Partition([1]))

    def test_schur_table_shares_dimension_column(self, theta4):
        table = schur_table(theta4, 3)
        assert [(tuple(a), dim) for a, dim, _ in table] == [
            ((3,), 1),
            ((2, 1), 2),
            ((1, 1, 1), 1),
        ]
        assert [dim for _, dim, _ in table] == [
            dimension(a) for a, _, _ in table
        ]


class TestVerify:
    def test_all_suites_pass_on_presets(self):
        for d in preset_pool():
            checks = verify(d, SUITES, n_max=5)
            assert checks, "no checks ran"
            failed = [c for c in checks if not c.passed]
            assert failed == []

    def test_all_suites_pass_on_randoms(self):
        for d in random_pool(10, seed=139):
            failed = [c for c in verify(d, SUITES, n_max=4) if not c.passed]
            assert failed == []

    def test_unknown_suite_rejected(self, theta4):
        with pytest.raises(ValueError):
            verify(theta4, ["bogus"])

    def test_failing_check_reports_witness(self):
        # A fractional top class coefficient breaks Schur integrality; the
        # suite must fail with an error witness rather than raise.
        d = SheafDescriptor(
            g=1,
            chi=Fraction(1),
            gamma=DiagonalClass(1, (Fraction(1), Fraction(1, 7))),
        )
        checks = verify(d, ["schur_sum"], n_max=2)
        assert any(not c.passed and c.witness for c in checks)

    def test_check_names_are_prefixed_by_suite(self, theta4):
        checks = verify(theta4, ["degree_bounds", "closed_forms"], n_max=3)
        assert all(
            c.name.split("/")[0] in ("degree_bounds", "closed_forms")
            for c in checks
        )
