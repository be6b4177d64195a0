from fractions import Fraction

import pytest
from mpmath import mpf

from pslet.effective import PotentialSpec, build_effective
from pslet.errors import BranchError, DomainError
from pslet.exact import dirac_oscillator_problem
from pslet.expansion import (beta_shift, leading_energy, omega_of, q_of_r0,
                             solve_expansion_point)
from pslet.powersum import PowerSum

COUL = PowerSum.monomial(-1, -1)
LINEAR = PowerSum.monomial(Fraction(137, 1000), 1)


def mixed(ell=0):
    return build_effective(PotentialSpec(COUL, COUL, 1, "dirac", -(ell + 1)))


def linear(ell, kappa=None):
    kappa = -(ell + 1) if kappa is None else kappa
    return build_effective(PotentialSpec(PowerSum(), LINEAR, Fraction(112, 100), "dirac", kappa))


def test_q_of_r0_mixed_coulomb():
    assert abs(q_of_r0(mixed(), 1) - 1) < mpf("1e-50")
    assert abs(q_of_r0(mixed(), "2.5") - 4) < mpf("1e-50")


def test_q_of_r0_pure_scalar():
    prob = linear(0)
    r0 = mpf(2)
    g1 = prob.gamma.derivative(1)(r0)
    assert abs(q_of_r0(prob, r0) - r0 ** 3 * g1 / 2) < mpf("1e-50")


def test_leading_energy_examples():
    assert abs(leading_energy(mixed(), 1, 1)) < mpf("1e-50")
    assert abs(leading_energy(mixed(1), "2.5", 4) - mpf("0.6")) < mpf("1e-50")
    with pytest.raises(BranchError):
        leading_energy(mixed(), 1, -10)


def test_omega_and_beta():
    assert abs(omega_of(mixed(), 1, 1, 0) - 2) < mpf("1e-50")
    assert beta_shift(0, 2) == -1
    assert beta_shift(2, 2) == -3
    assert beta_shift(0, 4) == mpf("-1.5")
    with pytest.raises(DomainError):
        beta_shift(-1, 2)


def test_mixed_coulomb_point():
    pt = solve_expansion_point(mixed(), 0)
    assert abs(pt.r0 - 1) < mpf("1e-30")
    assert abs(pt.Q - 1) < mpf("1e-30")


def test_oscillator_point():
    prob = dirac_oscillator_problem(1, 1, Fraction(1, 2), 1, -1, ell=0)
    pt = solve_expansion_point(prob, 0)
    assert abs(pt.omega - 4) < mpf("1e-30")
    assert abs(pt.r0 ** 2 - pt.lbar) < mpf("1e-30")


@pytest.mark.parametrize("ell,k", [(0, 0), (1, 0), (3, 0), (0, 2), (2, 2)])
def test_stationarity_and_closure(ell, k):
    pt = solve_expansion_point(linear(ell), k)
    bound = mpf("1e-25") * max(abs(pt.Q), pt.r0 ** 2 * abs(pt.b[1]))
    assert abs(pt.stationarity_residual()) <= bound
    assert abs(pt.Q - pt.lbar ** 2) / pt.Q <= mpf("1e-25")
    assert pt.omega > 0
    assert pt.beta0 == beta_shift(k, pt.omega)


def test_leading_energy_is_a_minimum():
    prob = linear(1)
    pt = solve_expansion_point(prob, 0)
    h = pt.r0 * mpf("1e-4")
    E = [leading_energy(prob, pt.r0 + d, pt.Q) for d in (-h, 0, h)]
    assert E[0] > E[1] and E[2] > E[1]


def test_r0_grows_with_ell():
    r = [solve_expansion_point(linear(ell), 0).r0 for ell in range(4)]
    assert all(a < b for a, b in zip(r, r[1:]))
