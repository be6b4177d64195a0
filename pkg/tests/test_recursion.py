from fractions import Fraction

import pytest
from mpmath import mpf

from pslet.effective import PotentialSpec, build_effective
from pslet.errors import DomainError
from pslet.exact import ExactCase, ExactKind
from pslet.expansion import solve_expansion_point
from pslet.recursion import Hierarchy, build_order_terms, energy_corrections, upsilon
from pslet.powersum import PowerSum
from pslet.summation import partial_sum

LINEAR = PowerSum.monomial(Fraction(137, 1000), 1)


def linear(ell):
    return build_effective(PotentialSpec(PowerSum(), LINEAR, Fraction(112, 100), "dirac",
                                         -(ell + 1)))


def test_first_mass_of_linear_ground_state():
    s = energy_corrections(linear(0), 0, 3)
    assert abs(2 * partial_sum(s, 1) - mpf("3.0919")) < mpf("5e-5")


def test_e0_vanishes():
    s = energy_corrections(linear(1), 0, 3)
    assert abs(s.coefficient(0)) < mpf("1e-40")


def test_upsilon_low_orders():
    pt = solve_expansion_point(linear(0), 0)
    u0 = upsilon(pt, 0)
    assert abs(u0[2] - pt.T[2]) < mpf("1e-50")
    assert abs(u0[0] - (2 * pt.beta0 + 1)) < mpf("1e-50")
    u1 = upsilon(pt, 1)
    assert abs(u1[3] - pt.T[3]) < mpf("1e-50")
    assert abs(u1[1] - (2 * pt.beta0 + 1) * -2) < mpf("1e-50")


def test_order_terms_parity():
    pt = solve_expansion_point(linear(0), 0)
    E = [pt.E_lead, mpf(0), mpf("0.01"), mpf("0.002"), mpf("0.0003")]
    terms = build_order_terms(pt, E, 2)
    assert all(c == 0 for c in terms.J_n[1::2])
    assert all(c == 0 for c in terms.K_n[0::2])


@pytest.mark.parametrize("ell,k", [(0, 0), (2, 2)])
def test_every_order_leaves_small_residual(ell, k):
    pt = solve_expansion_point(linear(ell), k, order_max=30)
    h = Hierarchy(pt).run(14)
    for j in range(len(h.W)):
        assert h.relation_residual(j) <= mpf("1e-20") * max(h._scale(j), mpf(1))


@pytest.mark.parametrize("case", [
    ExactCase(ExactKind.MIXED_COULOMB, dict(m=1, A="0.5", k=1, ell=1)),
    ExactCase(ExactKind.KG_VECTOR_COULOMB, dict(m=1, A="0.5", k=0, ell=0)),
    ExactCase(ExactKind.DIRAC_OSCILLATOR, dict(m=1, B=1, k=1, ell=0, j=Fraction(1, 2), eps=-1,
                                               beta_sign=1)),
])
def test_corrections_vanish_for_closed_forms(case):
    s = energy_corrections(case.problem(), case.params["k"], 8)
    lead = s.coefficient(-1)
    assert abs(lead - case.value()) <= mpf("1e-25") * abs(lead)
    for n in range(1, 9):
        assert abs(s.coefficient(n)) * s.lbar ** -(n + 1) <= mpf("1e-20") * abs(lead)


def test_kg_vector_coulomb_value():
    case = ExactCase(ExactKind.KG_VECTOR_COULOMB, dict(m=1, A="0.5", k=0, ell=0))
    s = energy_corrections(case.problem(), 0, 5)
    assert abs(partial_sum(s, 5) - mpf("0.707107")) < mpf("1e-6")


def test_wavefunction_node_count():
    for k in (0, 2):
        pt = solve_expansion_point(linear(0), k)
        h = Hierarchy(pt).run(2)
        F0 = h.wc.f_poly(0)
        grid = [mpf(i) / 50 for i in range(-500, 501)]
        vals = [sum(c * x ** i for i, c in enumerate(F0)) for x in grid]
        changes = sum(1 for a, b in zip(vals, vals[1:]) if (a < 0) != (b < 0))
        assert changes == k


def test_order_must_be_positive():
    with pytest.raises(DomainError):
        energy_corrections(linear(0), 0, 0)
