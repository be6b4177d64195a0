from fractions import Fraction

import pytest

from pslet.effective import PotentialSpec, build_effective
from pslet.errors import ConfigError, DomainError
from pslet.exact import ExactCase, ExactKind
from pslet.powersum import PowerSum
from pslet.shooting import ShootingConfig, count_nodes, shoot_eigenvalue


def test_count_nodes():
    assert count_nodes([1, 2, 3]) == 0
    assert count_nodes([1, -1, 1]) == 2
    assert count_nodes([]) == 0


@pytest.mark.parametrize("case", [
    ExactCase(ExactKind.MIXED_COULOMB, dict(m=1, A="0.5", k=0, ell=0)),
    ExactCase(ExactKind.KG_VECTOR_COULOMB, dict(m=1, A="0.5", k=1, ell=1)),
    ExactCase(ExactKind.KG_SCALAR_COULOMB, dict(m=1, A="0.75", k=0, ell=2)),
    ExactCase(ExactKind.DIRAC_OSCILLATOR, dict(m=1, B=1, k=1, ell=1, j=Fraction(3, 2), eps=1,
                                               beta_sign=-1)),
])
def test_matches_closed_forms(case):
    res = shoot_eigenvalue(case.problem(), case.params["k"])
    ex = float(case.value())
    assert abs(res.E_num - ex) <= 1e-6 * max(abs(ex), 1e-12)
    assert res.mesh_halving_delta < 1e-7
    assert res.matched


def test_mixed_coulomb_ground_state():
    case = ExactCase(ExactKind.MIXED_COULOMB, dict(m=1, A="0.5", k=0, ell=0))
    assert abs(shoot_eigenvalue(case.problem(), 0).E_num - 0.6) < 1e-8


def test_energy_increases_with_nodes():
    spec = PotentialSpec(PowerSum(), PowerSum.monomial(Fraction(137, 1000), 1),
                         Fraction(112, 100), "dirac", -1)
    prob = build_effective(spec)
    E = [shoot_eigenvalue(prob, k).E_num for k in range(3)]
    assert E[0] < E[1] < E[2]


def test_config_validation():
    with pytest.raises(ConfigError) as err:
        ShootingConfig(steps=10)
    assert err.value.field == "steps"
    with pytest.raises(ConfigError):
        ShootingConfig(r_min=2, r_max=1)
    with pytest.raises(ConfigError):
        ShootingConfig(energy_bracket=(2, 1))


def test_negative_k():
    case = ExactCase(ExactKind.MIXED_COULOMB, dict(m=1, A="0.5", k=0, ell=0))
    with pytest.raises(DomainError):
        shoot_eigenvalue(case.problem(), -1)
