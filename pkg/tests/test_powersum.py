from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mpf

from pslet.errors import DomainError
from pslet.powersum import PowerSum, ps_derivative, ps_eval, ps_product, ps_taylor, to_mpf

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
powers = st.fractions(min_value=-3, max_value=3, max_denominator=4)
sums = st.lists(st.tuples(coeffs, powers), max_size=4).map(PowerSum)


@settings(max_examples=60, deadline=None)
@given(sums, sums)
def test_leibniz_rule_is_exact(p, q):
    lhs = ps_derivative(ps_product(p, q), 1)
    rhs = ps_product(ps_derivative(p, 1), q) + ps_product(p, ps_derivative(q, 1))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(sums, st.fractions(min_value=Fraction(1, 2), max_value=3, max_denominator=8))
def test_taylor_matches_finite_differences(p, r0):
    with mpmath.workdps(40):
        r0 = to_mpf(r0)
        tay = ps_taylor(p, r0, 4)
        for n in range(5):
            fd = mpmath.diff(lambda r: ps_eval(p, r), r0, n) * r0 ** n / mpmath.factorial(n)
            assert abs(tay[n] - fd) <= mpf("1e-6") * max(abs(fd), mpf(1))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(coeffs, powers), max_size=6), st.randoms())
def test_canonical_form_ignores_order(terms, rnd):
    shuffled = list(terms)
    rnd.shuffle(shuffled)
    assert PowerSum(terms) == PowerSum(shuffled)
    half = len(terms) // 2
    assert PowerSum(terms[:half]) + PowerSum(terms[half:]) == PowerSum(terms)


def test_merging_and_zero_dropping():
    p = PowerSum([(1, 1), (2, 1), (-3, 1), (4, -1)])
    assert p.terms == ((Fraction(4), Fraction(-1)),)


def test_decimal_exponent_is_exact():
    p = PowerSum([(1, "0.1")])
    assert p.powers() == (Fraction(1, 10),)


def test_evaluation_and_derivative():
    p = PowerSum([(-2, -1), (1, 0)])
    assert p.derivative(2) == PowerSum([(-4, -3)])
    assert ps_eval(p, 2) == 0


def test_taylor_of_monomial():
    # r^2 about r0 = 1: 1 + 2x + x^2
    assert ps_taylor(PowerSum.monomial(1, 2), 1, 3) == [1, 2, 1, 0]


def test_nonpositive_radius_rejected():
    with pytest.raises(DomainError):
        ps_eval(PowerSum.monomial(1, 1), 0)
    with pytest.raises(DomainError):
        ps_taylor(PowerSum.monomial(1, 1), -1, 2)
