"""Closed-form bound-state energies used as precision anchors.

Each function returns the positive-energy branch unless told otherwise and
works at the active mpmath precision.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from .effective import EffectiveProblem, EquationKind, PotentialSpec, build_effective
from .errors import BranchError, DomainError, SubcriticalCouplingError
from .powersum import PowerSum, exact, to_mpf

__all__ = [
    "ExactKind",
    "ExactCase",
    "mixed_coulomb_exact",
    "kg_coulomb_exact",
    "dirac_oscillator_exact",
    "dirac_coulomb_exact",
    "dirac_oscillator_problem",
]


class ExactKind(enum.Enum):
    MIXED_COULOMB = "mixed_coulomb"
    KG_VECTOR_COULOMB = "kg_vector_coulomb"
    KG_SCALAR_COULOMB = "kg_scalar_coulomb"
    DIRAC_OSCILLATOR = "dirac_oscillator"
    DIRAC_VECTOR_COULOMB = "dirac_vector_coulomb"
    DIRAC_SCALAR_COULOMB = "dirac_scalar_coulomb"


def _m(x) -> mpf:
    return to_mpf(exact(x)) if not isinstance(x, mpf) else x


def mixed_coulomb_exact(m, A, k: int, ell: int) -> mpf:
    """Equal vector and scalar Coulomb: ``m [1 - 2A^2 / ((k+l+1)^2 + A^2)]``."""
    m, A = _m(m), _m(A)
    if not (m > 0 and A > 0):
        raise DomainError("mixed Coulomb needs m > 0 and A > 0")
    if k < 0 or ell < 0:
        raise DomainError("quantum numbers must be non-negative")
    n = mpf(k + ell + 1)
    return m * (1 - 2 * A * A / (n * n + A * A))


def kg_coulomb_exact(kind: str, m, A, k: int, ell: int) -> mpf:
    """Klein-Gordon with a pure vector or pure scalar Coulomb term.

    ``kind`` is ``"vector"`` (``V = -A/r``) or ``"scalar"`` (``S = -A/r``).
    The vector case accepts the critical coupling ``A = l + 1/2``.
    """
    m, A = _m(m), _m(A)
    half = mpf(1) / 2
    if kind == "vector":
        rad = (ell + half) ** 2 - A * A
        if rad < 0:
            raise SubcriticalCouplingError(f"A1={A} exceeds l+1/2 for l={ell}")
        n1 = k + half + mpmath.sqrt(rad)
        return m / mpmath.sqrt(1 + A * A / (n1 * n1))
    if kind == "scalar":
        n2 = k + half + mpmath.sqrt((ell + half) ** 2 + A * A)
        return m * mpmath.sqrt(1 - A * A / (n2 * n2))
    raise DomainError(f"kind must be 'vector' or 'scalar', got {kind!r}")


def _beta(beta_sign) -> int:
    if beta_sign not in (1, -1):
        raise DomainError("beta_sign must be +1 or -1")
    return int(beta_sign)


def dirac_oscillator_exact(m, B, k: int, ell: int, j, eps: int, beta_sign: int = 1,
                           sign: int = 1) -> mpf:
    """``E^2 = m^2 + 2mB(2k + l + 3/2) + mB(eps(2j+1) - beta)``."""
    m, B, j = _m(m), _m(B), _m(j)
    if not (m > 0 and B >= 0):
        raise DomainError("Dirac oscillator needs m > 0 and B >= 0")
    if eps not in (1, -1):
        raise DomainError("eps must be +1 or -1")
    beta = _beta(beta_sign)
    E2 = m * m + 2 * m * B * (2 * k + ell + mpf(3) / 2) + m * B * (eps * (2 * j + 1) - beta)
    if E2 < 0:
        raise BranchError(f"E^2 = {mpmath.nstr(E2, 10)} < 0")
    return (1 if sign >= 0 else -1) * mpmath.sqrt(E2)


def dirac_oscillator_problem(m, B, j, eps: int, beta_sign: int = 1,
                             ell: int | None = None) -> EffectiveProblem:
    """Effective problem of the Dirac oscillator.

    The centrifugal numerator is ``Lambda (Lambda + eps beta)`` with
    ``Lambda = j + 1/2``; since ``beta^2 = 1`` that equals ``l'(l'+1)`` for
    ``l' = Lambda + eps beta / 2 - 1/2``.
    """
    m, B, j = exact(m), exact(B), exact(j)
    beta = _beta(beta_sign)
    if eps not in (1, -1):
        raise DomainError("eps must be +1 or -1")
    lam = j + Fraction(1, 2)
    ell_eff = lam + Fraction(eps * beta, 2) - Fraction(1, 2)
    gamma = PowerSum([(m * m * B * B, 2), (m * m + m * B * (eps * (2 * j + 1) - beta), 0)])
    if ell is None:
        ell = int(ell_eff) if ell_eff == int(ell_eff) else 0
    return EffectiveProblem.direct(gamma, ell_eff=ell_eff, mass=m, quantum_ell=ell)


def dirac_coulomb_exact(kind: str, m, A, k: int, kappa: int, s: int = 1) -> mpf:
    """Dirac Coulomb levels with the shifted label ``k + 1/2 + s/2``.

    ``E = m (1 + A^2/Q)^(-1/2)`` for a vector and ``m (1 - A^2/Q)^(1/2)`` for
    a scalar coupling, ``Q = (k + 1/2 + s/2 + sqrt(kappa^2 -+ A^2))^2``.
    """
    m, A = _m(m), _m(A)
    if kappa == 0:
        raise DomainError("kappa must be nonzero")
    if s not in (1, -1):
        raise DomainError("s must be +1 or -1")
    base = k + mpf(1) / 2 + mpf(s) / 2
    if kind == "vector":
        rad = mpf(kappa) ** 2 - A * A
        if rad < 0:
            raise SubcriticalCouplingError(f"A1^2 > kappa^2 for kappa={kappa}")
        Q = (base + mpmath.sqrt(rad)) ** 2
        return m / mpmath.sqrt(1 + A * A / Q)
    if kind == "scalar":
        Q = (base + mpmath.sqrt(mpf(kappa) ** 2 + A * A)) ** 2
        return m * mpmath.sqrt(1 - A * A / Q)
    raise DomainError(f"kind must be 'vector' or 'scalar', got {kind!r}")


@dataclass(frozen=True)
class ExactCase:
    """A closed-form case bundled with its parameters.

    ``params`` keys by kind: ``m, A, k, ell`` (mixed and KG Coulomb),
    ``m, B, k, ell, j, eps, beta_sign`` (oscillator) and
    ``m, A, k, kappa, s`` (Dirac Coulomb).
    """

    kind: ExactKind
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", ExactKind(self.kind))
        p = self.params
        if self.kind is ExactKind.KG_VECTOR_COULOMB:
            if exact(p["A"]) ** 2 > (p["ell"] + Fraction(1, 2)) ** 2:
                raise SubcriticalCouplingError("A1 exceeds l+1/2")
        if self.kind is ExactKind.DIRAC_VECTOR_COULOMB:
            if exact(p["A"]) ** 2 > p["kappa"] ** 2:
                raise SubcriticalCouplingError("A1^2 exceeds kappa^2")

    def value(self) -> mpf:
        p, K = self.params, self.kind
        if K is ExactKind.MIXED_COULOMB:
            return mixed_coulomb_exact(p["m"], p["A"], p["k"], p["ell"])
        if K is ExactKind.KG_VECTOR_COULOMB:
            return kg_coulomb_exact("vector", p["m"], p["A"], p["k"], p["ell"])
        if K is ExactKind.KG_SCALAR_COULOMB:
            return kg_coulomb_exact("scalar", p["m"], p["A"], p["k"], p["ell"])
        if K is ExactKind.DIRAC_OSCILLATOR:
            return dirac_oscillator_exact(p["m"], p["B"], p["k"], p["ell"], p["j"], p["eps"],
                                          p.get("beta_sign", 1))
        kind = "vector" if K is ExactKind.DIRAC_VECTOR_COULOMB else "scalar"
        return dirac_coulomb_exact(kind, p["m"], p["A"], p["k"], p["kappa"], p.get("s", 1))

    def problem(self) -> EffectiveProblem:
        """Effective problem whose expansion should reproduce ``value()``.

        Not available for the Dirac Coulomb cases, whose closed form relies
        on a relabelled angular momentum outside the main pipeline.
        """
        p, K = self.params, self.kind
        A = exact(p.get("A", 0))
        coul = PowerSum.monomial(-A, -1)
        if K is ExactKind.MIXED_COULOMB:
            spec = PotentialSpec(coul, coul, p["m"], EquationKind.DIRAC, -(p["ell"] + 1))
        elif K is ExactKind.KG_VECTOR_COULOMB:
            spec = PotentialSpec(coul, PowerSum(), p["m"], EquationKind.KLEIN_GORDON)
        elif K is ExactKind.KG_SCALAR_COULOMB:
            spec = PotentialSpec(PowerSum(), coul, p["m"], EquationKind.KLEIN_GORDON)
        elif K is ExactKind.DIRAC_OSCILLATOR:
            return dirac_oscillator_problem(p["m"], p["B"], p["j"], p["eps"],
                                            p.get("beta_sign", 1), ell=p["ell"])
        else:
            raise DomainError(f"{K.value} has no effective-problem form in this package")
        return build_effective(spec, p["ell"])
