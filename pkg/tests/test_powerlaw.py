from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mpf

from pslet.errors import DomainError, NoRootError
from pslet.powerlaw import (PowerLawCase, check_energy, invert_energy, reduced_eigenvalue,
                            reduced_values)
from pslet.powersum import to_mpf
from pslet.summation import stabilization


def test_reduced_eigenvalue_ignores_physical_parameters():
    a = reduced_eigenvalue(PowerLawCase("0.1", 1, 0, 1, 0, 1), 6)
    b = reduced_eigenvalue(PowerLawCase("0.1", "0.3", "-0.7", 5, 0, 1), 6)
    assert a.E_coeffs == b.E_coeffs


def test_ground_state_value():
    s = reduced_eigenvalue(PowerLawCase("0.1", 1, 0, 1), 14)
    N, val = stabilization(s, transform=lambda e: e * e)
    assert abs(val - mpf("1.2358")) < mpf("5e-4")
    assert reduced_values(s, "squared")[N - 1] == val


@settings(max_examples=25, deadline=None)
@given(st.fractions(Fraction(1, 10), 2, max_denominator=10),
       st.fractions(Fraction(1, 2), 3, max_denominator=10),
       st.fractions(-1, 1, max_denominator=10),
       st.fractions(Fraction(1, 2), 4, max_denominator=10),
       st.fractions(Fraction(1, 100), 3, max_denominator=100))
def test_energy_roundtrip(nu, A, B0, m, excess):
    with mpmath.workdps(40):
        case = PowerLawCase(nu, A, B0, m)
        # monotone branch: E - m - 2 B0 > 0 and E > m
        E = to_mpf(max(case.m, case.m + 2 * case.B0)) * (1 + to_mpf(excess))
        target = check_energy(case, E)
        back = invert_energy(case, target, rel_tol=mpf("1e-30"))
        assert abs(back - E) <= mpf("1e-20") * abs(E)


def test_domain_checks():
    with pytest.raises(DomainError):
        PowerLawCase(0, 1, 0, 1)
    with pytest.raises(DomainError):
        PowerLawCase("0.1", -1, 0, 1)
    with pytest.raises(DomainError):
        check_energy(PowerLawCase("0.1", 1, 0, 1), -2)
    with pytest.raises(NoRootError):
        invert_energy(PowerLawCase("0.1", 1, 0, 1), 10, bracket=(0, "0.5"))
