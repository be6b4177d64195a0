from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mpf

from pslet.effective import (EquationKind, PotentialSpec, build_effective, build_U, build_y,
                             ell_from_kappa)
from pslet.errors import DomainError, SubcriticalCouplingError
from pslet.powersum import PowerSum, ps_eval, to_mpf
from pslet.recursion import energy_corrections

small = st.fractions(min_value=Fraction(1, 20), max_value=Fraction(1, 2), max_denominator=40)


def funnel(a, b):
    return PowerSum([(-a, -1)]), PowerSum([(b, 1)])


@settings(max_examples=20, deadline=None)
@given(small, st.sampled_from([0, 1]))
def test_equal_mixing_has_no_spin_orbit_term(a, lam):
    V = PowerSum([(-a, -1), (a, 1)])
    spec = PotentialSpec(V, V, 1, EquationKind(lam), -1)
    assert not build_y(spec)
    assert not build_U(build_y(spec), -1, 1, lam)


def test_ell_eff_equals_ell_when_couplings_match():
    for a in (0, Fraction(1, 3)):
        coul = PowerSum.monomial(-a, -1)
        prob = build_effective(PotentialSpec(coul, coul, 1, "dirac", -3), 2)
        assert prob.ell_eff == 2


@settings(max_examples=15, deadline=None)
@given(small, small, st.fractions(min_value=Fraction(1, 10), max_value=8, max_denominator=16))
def test_gamma_matches_pointwise_formula(a, b, r):
    V, S = funnel(a, b)
    m, kappa = Fraction(3, 2), 2
    prob = build_effective(PotentialSpec(V, S, m, "dirac", kappa))
    r, a, m = to_mpf(r), to_mpf(a), to_mpf(m)
    y = V - S
    y1, y2 = ps_eval(y.derivative(1), r), ps_eval(y.derivative(2), r)
    U = (y2 - 2 * kappa * y1 / r + 3 * y1 ** 2 / (4 * m)) / (4 * m)
    v, s = ps_eval(V, r), ps_eval(S, r)
    expected = -v * v + a * a / r ** 2 + s * s + 2 * m * s + m * m + U
    assert abs(ps_eval(prob.gamma, r) - expected) <= mpf("1e-30") * abs(expected)


def test_kappa_sign_does_not_matter_for_klein_gordon():
    V, S = funnel(Fraction(26, 100), Fraction(10429, 100000))
    s1 = energy_corrections(build_effective(PotentialSpec(V, S, "1.37", "kg", 1), 1), 0, 6)
    s2 = energy_corrections(build_effective(PotentialSpec(V, S, "1.37", "kg", -2), 1), 0, 6)
    for x, y in zip(s1.E_coeffs, s2.E_coeffs):
        assert abs(x - y) <= mpf("1e-25") * max(abs(x), mpf(1))


def test_ell_from_kappa():
    assert ell_from_kappa(-1) == 0
    assert ell_from_kappa(2) == 2
    with pytest.raises(DomainError):
        ell_from_kappa(0)


def test_dirac_kappa_must_match_ell():
    V, S = funnel(Fraction(1, 4), Fraction(1, 10))
    with pytest.raises(DomainError):
        build_effective(PotentialSpec(V, S, 1, "dirac", -1), 1)


def test_supercritical_coulomb_rejected():
    with pytest.raises(SubcriticalCouplingError):
        build_effective(PotentialSpec(PowerSum.monomial(-1, -1), PowerSum(), 1, "kg"), 0)


def test_equation_kind_parsing():
    assert EquationKind.parse("Klein-Gordon") is EquationKind.KLEIN_GORDON
    assert EquationKind.parse("dirac") is EquationKind.DIRAC
    with pytest.raises(DomainError):
        EquationKind.parse("schrodinger")
