"""Reduction of the radial Dirac / Klein-Gordon problem to one effective equation.

The problem solved downstream is

    [-d^2/dr^2 + l'(l'+1)/r^2 + Gamma(r) + 2 E V(r)] Phi = E^2 Phi

with the Coulomb parts of V and S folded into the shifted angular momentum
``l'`` and everything else collected in ``Gamma``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath
from mpmath import mpf

from .errors import DomainError, SubcriticalCouplingError
from .powersum import PowerSum, exact, to_mpf

__all__ = [
    "EquationKind",
    "PotentialSpec",
    "EffectiveProblem",
    "build_y",
    "build_U",
    "build_effective",
    "ell_from_kappa",
]


class EquationKind(enum.IntEnum):
    """Value is the switch multiplying the spin-orbit term."""

    KLEIN_GORDON = 0
    DIRAC = 1

    @classmethod
    def parse(cls, value) -> "EquationKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        if key in ("kg", "kleingordon", "0"):
            return cls.KLEIN_GORDON
        if key in ("dirac", "1"):
            return cls.DIRAC
        raise DomainError(f"unknown equation kind {value!r}")


def ell_from_kappa(kappa: int) -> int:
    """Orbital quantum number carried by a Dirac ``kappa`` (nonzero)."""
    if kappa == 0:
        raise DomainError("kappa must be nonzero")
    return -kappa - 1 if kappa < 0 else kappa


@dataclass(frozen=True)
class PotentialSpec:
    vector_part: PowerSum
    scalar_part: PowerSum
    mass: Fraction
    equation_kind: EquationKind = EquationKind.DIRAC
    kappa: int = -1

    def __post_init__(self):
        object.__setattr__(self, "mass", exact(self.mass))
        object.__setattr__(self, "equation_kind", EquationKind.parse(self.equation_kind))
        if not self.mass > 0:
            raise DomainError("mass must be positive")
        if self.kappa == 0:
            raise DomainError("kappa must be nonzero")

    @property
    def coulomb_vector_strength(self):
        """A1, minus the coefficient of 1/r in V."""
        return -self.vector_part.coeff(-1)

    @property
    def coulomb_scalar_strength(self):
        """A2, minus the coefficient of 1/r in S."""
        return -self.scalar_part.coeff(-1)

    @property
    def lam(self) -> int:
        return int(self.equation_kind)


@dataclass(frozen=True, eq=False)
class EffectiveProblem:
    """Ingredients of the effective radial equation.

    ``radicand`` is ``(l' + 1/2)**2`` kept exact so that ``ell_eff`` can be
    re-evaluated at whatever working precision is active.
    """

    gamma: PowerSum
    vector_for_coupling: PowerSum
    radicand: object
    spin_orbit_term: PowerSum = field(default_factory=PowerSum)
    mass: object = Fraction(0)
    quantum_ell: int = 0
    kappa: int | None = None
    coulomb_strengths: tuple = (Fraction(0), Fraction(0))

    @classmethod
    def direct(cls, gamma: PowerSum, vector: PowerSum | None = None, ell_eff=0, mass=0,
               quantum_ell=None) -> "EffectiveProblem":
        """Build a problem from Gamma, V and l' given outright."""
        ell_eff = exact(ell_eff)
        if quantum_ell is None:
            quantum_ell = int(ell_eff) if ell_eff == int(ell_eff) else 0
        return cls(
            gamma=gamma,
            vector_for_coupling=vector if vector is not None else PowerSum(),
            radicand=(ell_eff + Fraction(1, 2)) ** 2,
            mass=exact(mass),
            quantum_ell=quantum_ell,
        )

    @property
    def ell_eff(self) -> mpf:
        return -mpf(1) / 2 + mpmath.sqrt(to_mpf(self.radicand))

    @property
    def centrifugal(self) -> mpf:
        """l'(l'+1)."""
        return to_mpf(self.radicand) - mpf(1) / 4

    @cached_property
    def gamma_derivatives(self) -> tuple:
        g = self.gamma
        return (g, g.derivative(1), g.derivative(2))

    @cached_property
    def vector_derivatives(self) -> tuple:
        v = self.vector_for_coupling
        return (v, v.derivative(1), v.derivative(2))

    def length_scale(self, k: int = 0) -> float:
        """Rough size of the state, used only to place bracketing scans."""
        n = self.quantum_ell + k + 1
        m = float(to_mpf(self.mass)) or 1.0
        a = max(abs(float(to_mpf(x))) for x in self.coulomb_strengths)
        gam = self.gamma
        slope = 0.0
        for c, s in gam.terms:
            if s > 0:
                slope = max(slope, abs(float(to_mpf(c))) ** (1.0 / float(s + 2)))
        scales = []
        if a > 0:
            scales.append(n * n / (m * max(a, 1.0)))
        if slope > 0:
            scales.append(n ** (2.0 / 3.0) / slope)
        if not scales:
            return float(n)
        return min(scales)


def build_y(spec: PotentialSpec) -> PowerSum:
    return spec.vector_part - spec.scalar_part


def build_U(y: PowerSum, kappa: int, m, lam: int) -> PowerSum:
    """Spin-orbit term ``(lam/4m)[y'' - 2 kappa y'/r + 3 y'^2/(4m)]``."""
    m = exact(m)
    if not m > 0:
        raise DomainError("mass must be positive")
    if lam == 0 or not y:
        return PowerSum()
    y1 = y.derivative(1)
    y2 = y.derivative(2)
    bracket = y2 - y1.shift_power(-1) * (2 * kappa) + (y1 * y1) * (Fraction(3, 4) / m)
    return bracket * (Fraction(lam) / (4 * m))


def build_effective(spec: PotentialSpec, ell: int | None = None) -> EffectiveProblem:
    """Assemble Gamma, l' and U for one spin-orbit channel.

    For Dirac problems ``ell`` defaults to the value fixed by ``kappa``;
    for Klein-Gordon the spin-orbit term is absent and only ``ell`` matters.
    """
    kind = spec.equation_kind
    if ell is None:
        ell = ell_from_kappa(spec.kappa)
    if ell < 0:
        raise DomainError("ell must be non-negative")
    if kind is EquationKind.DIRAC and ell_from_kappa(spec.kappa) != ell:
        raise DomainError(f"kappa={spec.kappa} is incompatible with ell={ell}")

    V, S, m = spec.vector_part, spec.scalar_part, spec.mass
    a1, a2 = spec.coulomb_vector_strength, spec.coulomb_scalar_strength
    radicand = (ell + Fraction(1, 2)) ** 2 - a1 * a1 + a2 * a2
    if radicand < 0:
        raise SubcriticalCouplingError(
            f"(l+1/2)^2 - A1^2 + A2^2 = {radicand} < 0: Coulomb coupling too strong"
        )
    inv_r2 = PowerSum.monomial(1, -2)
    v_r = V * V - inv_r2 * (a1 * a1)
    s_r = S * S - inv_r2 * (a2 * a2)
    U = build_U(build_y(spec), spec.kappa, m, spec.lam)
    gamma = -v_r + s_r + S * (2 * m) + PowerSum.constant(m * m) + U
    return EffectiveProblem(
        gamma=gamma,
        vector_for_coupling=V,
        radicand=radicand,
        spin_orbit_term=U,
        mass=m,
        quantum_ell=ell,
        kappa=spec.kappa if kind is EquationKind.DIRAC else None,
        coulomb_strengths=(a1, a2),
    )
