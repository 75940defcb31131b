from fractions import Fraction
from math import comb

import pytest
from hypothesis import assume, given, settings, strategies as st

from figraph.analysis import (
    HOLDS, NOT_APPLICABLE, UNDETERMINED, InsufficientData, NoFit, Unsupported, check_trends,
    detect_recurrence, fit_quasi_polynomial, kneser_union_alpha_formula, partition_alpha_bound,
    verify_binomial_lemmas,
)
from figraph.expand import build_kneser_union
from figraph.graph import ConcreteGraph
from figraph.model import family
from figraph.poly import Polynomial
from figraph.solver import alpha, alpha_bruteforce, scan_alpha, sequence_from_values

# Values independently derived from closed forms, not from the solver.
JOHNSON = {n: n // 2 for n in range(2, 13)}
KNESER = {n: n - 1 for n in range(4, 11)}
COPIES_K2 = {n: (n if n <= 6 and n % 3 == 0 else n - 1) for n in range(2, 13)}


class TestFit:
    def test_johnson(self):
        fit = fit_quasi_polynomial(JOHNSON)
        assert fit.period == 2 and fit.degree == 1
        assert fit.pieces[0] == Polynomial([0, Fraction(1, 2)])
        assert fit.pieces[1] == Polynomial([Fraction(-1, 2), Fraction(1, 2)])
        assert fit.stable_degree == 2

    def test_constant(self):
        fit = fit_quasi_polynomial({n: 1 for n in range(1, 8)})
        assert (fit.period, fit.degree, fit.pieces) == (1, 0, (Polynomial([1]),))

    def test_copies_of_kneser2(self):
        fit = fit_quasi_polynomial(COPIES_K2)
        assert (fit.period, fit.pieces, fit.stable_degree) == (1, (Polynomial([-1, 1]),), 7)

    def test_accepts_alpha_sequence(self):
        fit = fit_quasi_polynomial(sequence_from_values(KNESER))
        assert fit.text().startswith("period 1, degree 1, stable degree 4")

    def test_too_short(self):
        with pytest.raises(InsufficientData):
            fit_quasi_polynomial({1: 1, 2: 2})

    def test_gap(self):
        with pytest.raises(InsufficientData):
            fit_quasi_polynomial({1: 1, 2: 2, 4: 4, 5: 5})

    def test_no_fit_lists_untested(self):
        seq = {n: 2 ** n for n in range(10)}
        with pytest.raises(NoFit) as exc:
            fit_quasi_polynomial(seq, max_period=2, max_degree=2)
        assert (2, 2) in exc.value.untested

    def test_cubic(self):
        fit = fit_quasi_polynomial({n: comb(n, 3) for n in range(0, 12)})
        assert (fit.period, fit.degree, fit.stable_degree) == (1, 3, 0)


class TestRecurrence:
    def test_binomial(self):
        rec = detect_recurrence({n: comb(n, 2) for n in range(2, 13)})
        assert rec.order == 3
        assert rec.denominator == Polynomial([1, -1]) * Polynomial([1, -1]) * Polynomial([1, -1])

    def test_floor_half(self):
        rec = detect_recurrence(JOHNSON)
        assert rec.order == 3
        assert rec.coefficients == (1, 1, -1)
        assert rec.denominator == Polynomial([1, -1]) * Polynomial([1, -1]) * Polynomial([1, 1])

    def test_zero(self):
        assert detect_recurrence({n: 0 for n in range(5)}).order == 0

    def test_eventually_zero_tail_is_not_zero_sequence(self):
        rec = detect_recurrence({0: 1, 1: 0, 2: 0, 3: 0, 4: 0})
        assert rec.order == 0 and rec.start == 1

    def test_no_recurrence(self):
        with pytest.raises(NoFit):
            detect_recurrence({0: 1, 1: 2, 2: 4, 3: 1, 4: 7}, max_order=1)


def quasi_polys(max_period=3, max_degree=2):
    def build(period, degree, data):
        coeffs = [data.draw(st.lists(st.integers(-5, 5), min_size=degree + 1, max_size=degree + 1))
                  for _ in range(period)]
        return period, degree, [Polynomial(c) for c in coeffs]
    return st.builds(lambda p, d, data: build(p, d, data),
                     st.integers(1, max_period), st.integers(0, max_degree), st.data())


@settings(max_examples=80, deadline=None)
@given(qp=quasi_polys(), start=st.integers(0, 4))
def test_fit_reproduces_quasi_polynomials(qp, start):
    period, degree, pieces = qp
    count = period * (2 * degree + 4)
    seq = {n: int(pieces[n % period](n)) for n in range(start, start + count)}
    fit = fit_quasi_polynomial(seq, max_period=3, max_degree=2)
    assert fit.period <= period and fit.degree <= degree
    for n, v in seq.items():
        if n >= fit.stable_degree:
            assert fit(n) == v


@settings(max_examples=80, deadline=None)
@given(qp=quasi_polys(), start=st.integers(0, 4))
def test_recurrence_order_bound(qp, start):
    period, degree, pieces = qp
    bound = period * (degree + 1)
    seq = {n: int(pieces[n % period](n)) for n in range(start, start + 2 * bound + 3)}
    rec = detect_recurrence(seq)
    assert rec.order <= bound
    vals = [seq[n] for n in sorted(seq)]
    first = rec.start - start
    for i in range(first + rec.order, len(vals)):
        assert vals[i] == sum(c * vals[i - j] for j, c in enumerate(rec.coefficients, 1))


@settings(max_examples=40, deadline=None)
@given(coeffs=st.lists(st.integers(-9, 9), min_size=1, max_size=4), start=st.integers(0, 5))
def test_polynomial_order_at_most_degree_plus_one(coeffs, start):
    poly = Polynomial(coeffs)
    assume(poly.degree >= 0)
    seq = {n: int(poly(n)) for n in range(start, start + 2 * poly.degree + 6)}
    assert detect_recurrence(seq).order <= poly.degree + 1


class TestTrends:
    def test_kneser(self):
        c = family("kneser2")
        report = check_trends(c, KNESER, fit_quasi_polynomial(KNESER))
        assert all(v.status == HOLDS for v in report.verdicts.values())

    def test_johnson(self):
        c = family("johnson2")
        report = check_trends(c, JOHNSON, fit_quasi_polynomial(JOHNSON))
        assert report.at_most_two_pieces.status == HOLDS
        assert report.at_most_two_pieces.witness["period"] == 2
        assert report.polynomial_without_johnson.status == NOT_APPLICABLE

    def test_johnson_union_shifted_is_polynomial(self):
        c = family("johnson_union_shifted")
        seq = scan_alpha(c, 2, 10)
        fit = fit_quasi_polynomial(seq)
        assert fit.period == 1 and fit.pieces == (Polynomial([0, 1]),)
        report = check_trends(c, seq, fit)
        assert report.polynomial_without_johnson.status == NOT_APPLICABLE
        assert not report.violations

    def test_undetermined_without_fit(self):
        report = check_trends(family("kneser2"), KNESER, None)
        assert all(v.status == UNDETERMINED for v in report.verdicts.values())


class TestKneserUnionFormula:
    @pytest.mark.parametrize("args, expected", [
        ((2, 3, 7), 15),
        ((4, 1, 2), 2),
        ((2, 2, 6), 6),
        ((2, 2, 7), 6),
        ((1, 3, 6), 10),
    ])
    def test_examples(self, args, expected):
        assert kneser_union_alpha_formula(*args) == expected

    @pytest.mark.parametrize("args", [(2, 3, 5), (0, 2, 4), (1, 0, 3), (2, 2, 1)])
    def test_unsupported(self, args):
        with pytest.raises(Unsupported):
            kneser_union_alpha_formula(*args)

    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_matches_solver(self, k, r):
        for n in range(0, 8):
            try:
                expected = kneser_union_alpha_formula(k, r, n)
            except Unsupported:
                continue
            assert alpha(build_kneser_union(k, r, n)) == expected


def kneser_on(r, m):
    from itertools import combinations
    subsets = list(combinations(range(m), r))
    edges = [(i, j) for i in range(len(subsets)) for j in range(i + 1, len(subsets))
             if not set(subsets[i]) & set(subsets[j])]
    return ConcreteGraph.from_edges(len(subsets), edges)


class TestPartitionBound:
    @pytest.mark.parametrize("r, m, expected", [(2, 3, 3), (3, 2, 0), (2, 6, 5), (3, 0, 0)])
    def test_examples(self, r, m, expected):
        assert partition_alpha_bound(r, m) == expected

    @pytest.mark.parametrize("r", [1, 2, 3])
    @pytest.mark.parametrize("m", range(0, 9))
    def test_matches_bruteforce(self, r, m):
        assert partition_alpha_bound(r, m) == alpha_bruteforce(kneser_on(r, m), limit=64)


class TestLemmas:
    def test_examples(self):
        assert comb(3, 3) + comb(5, 2) == 11 < comb(7, 2) == 21
        assert 2 * comb(5, 2) == 20 < comb(9, 2) == 36
        assert comb(5, 2) + comb(5, 2) == 20 < comb(9, 2)

    def test_exhaustive(self):
        report = verify_binomial_lemmas(10, 60)
        assert report.ok
        assert all(v > 0 for v in report.checked.values())

    def test_small_plus_large_fails_at_r2(self):
        # Why the check starts at r = 3: equality at r = 2, a = 2, b = 3.
        assert comb(2, 2) + comb(3, 1) == comb(4, 1)

    def test_bad_r(self):
        with pytest.raises(ValueError):
            verify_binomial_lemmas(2)
