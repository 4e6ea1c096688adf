import pytest

from staircase.feq import (
    CLASS_IDS,
    CLASS_EQUATIONS,
    catalan,
    clear_cache,
    closed_form_coefficient,
    evaluate_rhs,
    series_rows,
    solve_series,
)
from staircase.feq import _Unknown
from staircase.polygons import enumerate_counts
from staircase.series import XSeries, exact_ring, jet_ring


class TestKnownSeries:
    def test_square_series_is_one_square_per_even_half_perimeter(self):
        s = solve_series("square", 12, exact_ring())
        for m in range(13):
            if m % 2 == 0 and m >= 2:
                assert dict(s.coeffs[m].c) == {(m // 2) ** 2: 1}
            else:
                assert not s.coeffs[m].c

    def test_full_class_at_q1_is_catalan(self):
        s = solve_series("full", 16, jet_ring(0))
        values = s.values_at_q1()
        assert values[0] == 0 and values[1] == 0
        for m in range(2, 17):
            assert values[m] == catalan(m - 1)

    def test_rectangles_at_q1(self):
        s = solve_series("rect", 20, jet_ring(0))
        values = s.values_at_q1()
        for m in range(2, 21):
            assert values[m] == m - 1

    def test_rect_exact_coefficients(self):
        s = solve_series("rect", 9, exact_ring())
        for m in range(2, 10):
            expected = {}
            for a in range(1, m):
                expected[a * (m - a)] = expected.get(a * (m - a), 0) + 1
            assert dict(s.coeffs[m].c) == expected


class TestOracleEquivalence:
    def test_all_classes_match_enumeration(self):
        table = enumerate_counts(10)
        ring = exact_ring()
        for cls in CLASS_IDS:
            s = solve_series(cls, 10, ring)
            for m in range(2, 11):
                assert dict(s.coeffs[m].c) == table.class_slice(cls, m), (cls, m)


class TestClosedForms:
    def test_full_is_catalan(self):
        assert closed_form_coefficient("full", 7) == 132

    def test_rect_multiplicity(self):
        assert closed_form_coefficient("rect", 5, 4) == 2
        assert closed_form_coefficient("rect", 5, 5) == 0

    def test_square_indicator(self):
        assert closed_form_coefficient("square", 6, 9) == 1
        assert closed_form_coefficient("square", 6, 8) == 0
        assert closed_form_coefficient("square", 5, 4) == 0

    def test_errors(self):
        with pytest.raises(ValueError):
            closed_form_coefficient("d1", 4, 4)
        with pytest.raises(ValueError):
            closed_form_coefficient("full", 1)
        with pytest.raises(ValueError):
            closed_form_coefficient("full", 4, 3)
        with pytest.raises(ValueError):
            closed_form_coefficient("rect", 5)


class TestFixedPointIteration:
    @pytest.mark.parametrize("cls", CLASS_IDS)
    def test_iterates_stabilize_with_growing_agreement(self, cls):
        # applying the right-hand side from the zero series gains at least
        # two x-orders of agreement with the solution per application
        ring = exact_ring()
        order = 16
        solution = solve_series(cls, order, ring)
        current = XSeries(ring, order)
        agreements = []
        for _ in range(order):
            current = evaluate_rhs(cls, current)
            agree = 0
            while agree <= order and current.coeffs[agree] == solution.coeffs[agree]:
                agree += 1
            agreements.append(agree)
            if agree > order - CLASS_EQUATIONS[cls].gain:
                break
        assert agreements[0] >= 2
        for a, b in zip(agreements, agreements[1:]):
            assert b >= a + CLASS_EQUATIONS[cls].gain or b > order - CLASS_EQUATIONS[cls].gain
        # truncation pollutes at most the top two orders of the iteration
        assert agreements[-1] >= order - 1

    def test_solution_is_a_fixed_point(self):
        ring = jet_ring(2)
        for cls in CLASS_IDS:
            solution = solve_series(cls, 14, ring)
            image = evaluate_rhs(cls, solution)
            for m in range(13):  # top orders feel the truncation
                assert image.coeffs[m] == solution.coeffs[m], (cls, m)

    def test_unfilled_unknown_read_is_reported(self):
        with pytest.raises(RuntimeError, match="non-productive recursion"):
            _Unknown(exact_ring(), val=2, stride=1).coeff(0)


class TestSolverContracts:
    def test_order_validated(self):
        with pytest.raises(ValueError):
            solve_series("full", 1, exact_ring())
        with pytest.raises(ValueError):
            solve_series("nope", 8, exact_ring())

    def test_cache_returns_consistent_truncations(self):
        clear_cache()
        big = solve_series("r2", 18, exact_ring())
        small = solve_series("r2", 7, exact_ring())
        assert small.order == 7
        assert small.coeffs == big.coeffs[:8]

    def test_prerequisite_truncation_sufficient(self):
        # solving dependent classes directly at several orders gives
        # coefficient-stable prefixes
        clear_cache()
        lo = solve_series("d1d2", 10, exact_ring())
        clear_cache()
        hi = solve_series("d1d2", 16, exact_ring())
        assert lo.coeffs == hi.coeffs[:11]
        clear_cache()

    def test_positivity_and_area_bounds(self):
        ring = exact_ring()
        for cls in CLASS_IDS:
            s = solve_series(cls, 20, ring)
            for m, c in enumerate(s.coeffs):
                for n, v in c.c.items():
                    assert v > 0
                    assert 1 <= n <= m * m / 4


class TestCrossRing:
    def test_jet_solution_equals_collapsed_exact(self):
        ring = exact_ring()
        for cls in CLASS_IDS:
            exact = solve_series(cls, 20, ring)
            for K in range(7):
                jet = solve_series(cls, 20, jet_ring(K))
                assert exact.collapse(K) == jet, (cls, K)


class TestRows:
    def test_exact_rows(self):
        rows = series_rows("square", solve_series("square", 6, exact_ring()))
        assert rows == [("square", 2, 1, "1"), ("square", 4, 4, "1"), ("square", 6, 9, "1")]

    def test_jet_rows_have_one_entry_per_slot(self):
        s = solve_series("square", 6, jet_ring(1))
        rows = series_rows("square", s)
        assert len(rows) == 14  # seven x-orders times two slots
        assert rows[4] == ("square", 2, 0, "1")
        assert rows[5] == ("square", 2, 1, "1")
