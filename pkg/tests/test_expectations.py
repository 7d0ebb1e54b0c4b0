import math
from fractions import Fraction

import pytest

from mapgenus import (
    a_k_asymptotic,
    a_k_exact,
    configuration_count,
    edge_set_probability,
    expectation_table,
    expected_k_cycles_exact,
    log_gamma,
    lower_bound_sum,
    potential_cycle_count,
    simple_probability_asymptotic,
    small_face_upper_bound,
)


class TestLogGamma:
    def test_anchor_points(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)
        assert log_gamma(3.5) == pytest.approx(math.log(15 * math.sqrt(math.pi) / 8), rel=1e-14)

    def test_odd_double_factorial_identity(self):
        # 1*3*5*...*(2n-1) = 2^n Gamma(n + 1/2) / sqrt(pi)
        for n in (1, 2, 5, 20, 80, 150):
            dfact = 1
            for i in range(1, 2 * n, 2):
                dfact *= i
            lhs = math.log(dfact)
            rhs = n * math.log(2) + log_gamma(n + 0.5) - 0.5 * math.log(math.pi)
            assert rhs == pytest.approx(lhs, rel=1e-12)

    def test_factorials(self):
        for n in (2, 10, 60, 170, 1000):
            assert log_gamma(n + 1) == pytest.approx(math.log(math.factorial(n)), rel=1e-12)

    def test_wide_range_finite(self):
        for x in (0.5, 1e3, 1e6, 1e9):
            assert math.isfinite(log_gamma(x))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            log_gamma(0.0)
        with pytest.raises(ValueError):
            log_gamma(-2.5)


class TestConfigurationCount:
    def test_small_values(self):
        assert configuration_count(1).exact == 1
        assert configuration_count(3).exact == 15
        assert configuration_count(6).exact == 10395

    def test_log_agrees_with_exact(self):
        for m in range(1, 21):
            cc = configuration_count(m)
            assert cc.log == pytest.approx(math.log(cc.exact), rel=1e-12)

    def test_large_m_log_only(self):
        cc = configuration_count(10**6)
        assert cc.exact is None
        assert math.isfinite(cc.log)


class TestEdgeSetProbability:
    def test_examples(self):
        assert edge_set_probability(10, 0) == 1.0
        assert edge_set_probability(3, 1) == pytest.approx(Fraction(1, 5), rel=1e-15)
        assert edge_set_probability(3, 3) == pytest.approx(Fraction(1, 15), rel=1e-15)

    def test_rejects_l_above_m(self):
        with pytest.raises(ValueError):
            edge_set_probability(3, 4)

    def test_product_and_gamma_forms_agree(self):
        # second route written out explicitly from the gamma-ratio form
        for m in (5, 50, 200):
            for l in (1, 2, m // 2, m):
                gamma_form = math.exp(
                    -l * math.log(2) + math.lgamma(m - l + 0.5) - math.lgamma(m + 0.5)
                )
                assert edge_set_probability(m, l) == pytest.approx(gamma_form, rel=1e-12)

    def test_exactly_one_configuration_contains_a_full_matching(self):
        # 1/15 of the 15 configurations on 6 darts contain 3 given disjoint pairs
        assert edge_set_probability(3, 3) * 15 == pytest.approx(1.0, rel=1e-12)


class TestPotentialCycleCount:
    def test_examples(self):
        assert potential_cycle_count(2, 3, 1) == 6
        assert potential_cycle_count(2, 3, 2) == 18
        assert potential_cycle_count(2, 3, 3) == 0  # falling factorial vanishes

    def test_loop_slots_by_direct_count(self):
        # n cells, C(3, 2) within-cell dart pairs each
        assert potential_cycle_count(2, 3, 1) == 2 * 3

    def test_identity_chain(self):
        # E(X_k) = C_k * P(fixed k edges), both routes to 1e-12
        for n, d, kmax in [(2, 3, 2), (4, 3, 4), (100, 3, 100), (1000, 4, 50)]:
            m = n * d // 2
            for k in range(1, kmax + 1):
                lhs = expected_k_cycles_exact(n, d, k)
                rhs = potential_cycle_count(n, d, k) * edge_set_probability(m, k)
                assert lhs == pytest.approx(rhs, rel=1e-12)


class TestExpectedCycles:
    def test_small_case_fractions(self):
        # exhaustive means over the 15 configurations equal 6/5 (see config tests)
        assert expected_k_cycles_exact(2, 3, 1) == pytest.approx(6 / 5, rel=1e-14)
        assert expected_k_cycles_exact(2, 3, 2) == pytest.approx(6 / 5, rel=1e-14)

    def test_limit_law(self):
        # E(X_k) -> (d-1)^k / 2k as n grows
        assert expected_k_cycles_exact(10**6, 3, 3) == pytest.approx(4 / 3, rel=1e-3)
        for k in range(1, 11):
            limit = 2**k / (2 * k)
            assert expected_k_cycles_exact(10**6, 3, k) == pytest.approx(limit, rel=5e-3)

    def test_k_beyond_n_is_zero(self):
        assert expected_k_cycles_exact(4, 3, 5) == 0.0

    def test_huge_k_does_not_nan(self):
        v = expected_k_cycles_exact(10**5, 3, 5000)
        assert v >= 0.0 and not math.isnan(v)


class TestAk:
    def test_k0_is_one(self):
        assert a_k_exact(50, 3, 0) == 1.0
        assert a_k_asymptotic(50, 3, 0) == 1.0

    def test_relation_to_expected_cycles(self):
        for n, d in [(2, 3), (20, 3), (200, 4)]:
            for k in range(1, min(n, 20) + 1):
                lhs = a_k_exact(n, d, k)
                rhs = 2 * k * expected_k_cycles_exact(n, d, k) / (d - 1) ** k
                assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_small_case_value(self):
        assert a_k_exact(2, 3, 1) == pytest.approx(6 / 5, rel=1e-14)

    def test_asymptotic_accuracy(self):
        n = 10**4
        for k in (1, 10, 50, 100):
            exact = a_k_exact(n, 3, k)
            approx = a_k_asymptotic(n, 3, k)
            assert abs(exact - approx) / exact <= 0.05

    def test_monotone_decreasing(self):
        # non-strict at d = 3 (a_1 = a_2 identically), strict beyond
        for n in (2, 10, 100):
            values = [a_k_exact(n, 3, k) for k in range(1, n + 1)]
            assert all(a >= b for a, b in zip(values, values[1:]))
            assert all(a > b for a, b in zip(values[1:], values[2:]))
        values = [a_k_exact(50, 5, k) for k in range(1, 51)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_rejects_degenerate_degree(self):
        with pytest.raises(ValueError):
            a_k_asymptotic(10, 2, 3)
        with pytest.raises(ValueError):
            a_k_exact(10, 2, 3)


class TestBoundSums:
    def test_lower_bound_sum_matches_log_asymptotics(self):
        n = 10**6
        target = 0.5 * math.log(1.5 * n)
        value = lower_bound_sum(n, 3)
        assert 0.8 * target <= value <= 1.2 * target

    def test_monotone_in_n(self):
        assert lower_bound_sum(10**5, 3) < lower_bound_sum(10**6, 3)

    def test_small_case_by_hand(self):
        # n=4, d=3: terms k=3 and k=4 only; a_3 = (12/11)(9/9)(6/7), a_4 = a_3 * 3/5
        a3 = Fraction(12, 11) * Fraction(9, 9) * Fraction(6, 7)
        a4 = a3 * Fraction(3, 5)
        expected = a3 / 3 + a4 / 4
        assert lower_bound_sum(4, 3) == pytest.approx(float(expected), rel=1e-10)

    def test_small_face_bound_pieces(self):
        b = small_face_upper_bound(10**4, 3)
        assert b.large_face_bound == 300.0
        assert b.gaussian_cap == pytest.approx(math.sqrt(3 * 10**4) * 1.2533141373155003, rel=1e-12)
        assert 0 < b.small_face_sum <= b.gaussian_cap
        assert b.total == b.small_face_sum + b.large_face_bound

    def test_total_scales_like_sqrt_n(self):
        t1 = small_face_upper_bound(10**4, 3).total
        t2 = small_face_upper_bound(4 * 10**4, 3).total
        assert abs(t2 / t1 - 2.0) <= 0.2


class TestSimpleProbability:
    def test_values(self):
        assert simple_probability_asymptotic(3) == pytest.approx(math.exp(-2), rel=1e-15)
        assert simple_probability_asymptotic(4) == pytest.approx(math.exp(-15 / 4), rel=1e-15)

    def test_rejects_low_degree(self):
        with pytest.raises(ValueError):
            simple_probability_asymptotic(2)


class TestExpectationTable:
    def test_entries_finite_nonnegative_and_zero_beyond_n(self):
        table = expectation_table(4, 3, 6)
        for k, e, a in zip(table.ks, table.e_xk_exact, table.a_k_exact):
            if k <= 4:
                assert math.isfinite(e) and e >= 0
                assert math.isfinite(a) and a >= 0
            else:
                assert e == 0.0 and a == 0.0

    def test_csv_layout(self):
        text = expectation_table(2, 3, 2).to_csv()
        lines = text.splitlines()
        assert lines[0] == "k,E_Xk_exact,a_k_exact,a_k_asymptotic"
        assert lines[1].startswith("1,1.2,1.2,")
        assert lines[2].startswith("2,1.2,1.2,")
        assert any(ln.startswith("p_simple_asymptotic,") for ln in lines)

    def test_json_mirror(self):
        table = expectation_table(6, 3, 4)
        doc = table.to_json_dict()
        assert [r["k"] for r in doc["rows"]] == [1, 2, 3, 4]
        assert doc["rows"][0]["E_Xk_exact"] == table.e_xk_exact[0]
        assert doc["scalars"]["lower_bound_sum"] == table.lower_bound_sum
