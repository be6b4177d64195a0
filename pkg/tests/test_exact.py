from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mpf

from pslet.errors import BranchError, DomainError, SubcriticalCouplingError
from pslet.exact import (ExactCase, ExactKind, dirac_coulomb_exact, dirac_oscillator_exact,
                         kg_coulomb_exact, mixed_coulomb_exact)

TOL = mpf("1e-40")


def test_mixed_coulomb_examples():
    assert mixed_coulomb_exact(1, 1, 0, 0) == 0
    assert abs(mixed_coulomb_exact(2, 1, 1, 0) - mpf("1.2")) < TOL
    assert abs(mixed_coulomb_exact(1, "1e-20", 0, 0) - 1) < mpf("1e-30")


def test_kg_coulomb_examples():
    assert abs(kg_coulomb_exact("vector", 1, "0.5", 0, 0) - 1 / mpmath.sqrt(2)) < TOL
    assert kg_coulomb_exact("scalar", 1, 0, 0, 0) == 1
    n2 = mpf("0.5") + mpmath.sqrt(mpf("0.8125"))
    assert abs(kg_coulomb_exact("scalar", 1, "0.75", 0, 0)
               - mpmath.sqrt(1 - mpf("0.5625") / n2 ** 2)) < TOL
    with pytest.raises(SubcriticalCouplingError):
        kg_coulomb_exact("vector", 1, 1, 0, 0)


def test_dirac_oscillator_examples():
    assert dirac_oscillator_exact(1, 1, 0, 0, Fraction(1, 2), -1, 1) == 1
    assert dirac_oscillator_exact(3, 0, 2, 1, Fraction(3, 2), 1) == 3
    assert dirac_oscillator_exact(1, 1, 0, 0, Fraction(1, 2), -1, 1, sign=-1) == -1
    with pytest.raises(BranchError):
        dirac_oscillator_exact(1, 1, 0, 0, Fraction(3, 2), -1, 1)
    with pytest.raises(DomainError):
        dirac_oscillator_exact(1, 1, 0, 0, Fraction(1, 2), 0)


def test_dirac_coulomb_examples():
    assert dirac_coulomb_exact("vector", 1, 0, 0, -1) == 1
    Q = (1 + mpmath.sqrt(mpf("0.75"))) ** 2
    assert abs(dirac_coulomb_exact("vector", 1, "0.5", 0, -1) - (1 + mpf("0.25") / Q) ** -0.5) < TOL
    Q = (1 + mpmath.sqrt(2)) ** 2
    assert abs(dirac_coulomb_exact("scalar", 1, 1, 0, -1) - mpmath.sqrt(1 - 1 / Q)) < TOL
    with pytest.raises(SubcriticalCouplingError):
        dirac_coulomb_exact("vector", 1, 2, 0, -1)


@settings(max_examples=40, deadline=None)
@given(st.fractions(0, Fraction(49, 100), max_denominator=100),
       st.fractions(0, Fraction(49, 100), max_denominator=100),
       st.integers(0, 3), st.integers(0, 3))
def test_kg_vector_decreases_with_coupling(a, b, k, ell):
    if a == b:
        return
    lo, hi = sorted((a, b))
    assert kg_coulomb_exact("vector", 1, hi, k, ell) < kg_coulomb_exact("vector", 1, lo, k, ell)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.fractions(Fraction(1, 10), 3, max_denominator=10))
def test_mixed_coulomb_depends_on_k_plus_ell(k, ell, A):
    assert mixed_coulomb_exact(1, A, k, ell) == mixed_coulomb_exact(1, A, k + ell, 0)


def test_exact_case_validation_and_problem():
    with pytest.raises(SubcriticalCouplingError):
        ExactCase(ExactKind.KG_VECTOR_COULOMB, dict(m=1, A=1, k=0, ell=0))
    case = ExactCase("dirac_vector_coulomb", dict(m=1, A="0.5", k=0, kappa=-1))
    assert case.kind is ExactKind.DIRAC_VECTOR_COULOMB
    with pytest.raises(DomainError):
        case.problem()
