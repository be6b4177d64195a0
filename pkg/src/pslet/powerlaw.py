"""Equally mixed power-law potentials ``V = S = A r^nu + B0``.

Rescaling ``r = rho q`` with ``rho = [2 (E + m) A]^(-1/(nu+2))`` turns the
radial problem into ``[-d^2/dq^2 + l(l+1)/q^2 + q^nu] Omega = Ec Omega``,
whose eigenvalue ``Ec`` depends on ``(nu, k, l)`` only.  The physical
energy then follows from

    Ec = (E - m - 2 B0) [(E + m) (2A)^(-2/nu)]^(nu/(nu+2)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from .effective import EffectiveProblem
from .errors import DomainError, MultipleRootError, NoRootError
from .powersum import PowerSum, exact, to_mpf
from .recursion import DEFAULT_CORRECTIONS, EnergySeries, energy_corrections
from .summation import partial_sum

__all__ = [
    "PowerLawCase",
    "reduced_problem",
    "reduced_eigenvalue",
    "reduced_values",
    "check_energy",
    "invert_energy",
    "READINGS",
]

# "squared": Ec is the square of the series energy, since the engine's
# right-hand side is E^2.  "direct": the partial sums are read as Ec as-is.
READINGS = ("squared", "direct")


@dataclass(frozen=True)
class PowerLawCase:
    nu: Fraction
    A: Fraction
    B0: Fraction
    m: Fraction
    k: int = 0
    ell: int = 0

    def __post_init__(self):
        for name in ("nu", "A", "B0", "m"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        if not self.nu > 0:
            raise DomainError("nu must be positive")
        if not self.A > 0:
            raise DomainError("A must be positive")
        if not self.m > 0:
            raise DomainError("m must be positive")
        if self.k < 0 or self.ell < 0:
            raise DomainError("quantum numbers must be non-negative")


def reduced_problem(nu, ell: int) -> EffectiveProblem:
    """``Gamma = q^nu``, no vector coupling, no mass term."""
    return EffectiveProblem.direct(PowerSum.monomial(1, nu), ell_eff=ell, quantum_ell=ell)


def reduced_eigenvalue(case: PowerLawCase, N: int = DEFAULT_CORRECTIONS) -> EnergySeries:
    """Energy series of the rescaled problem; see :func:`reduced_values`."""
    return energy_corrections(reduced_problem(case.nu, case.ell), case.k, N)


def reduced_values(series: EnergySeries, reading: str = "squared") -> list:
    """``[Ec(1), ..., Ec(N)]`` under the chosen reading of the partial sums."""
    if reading not in READINGS:
        raise DomainError(f"unknown reading {reading!r}")
    sums = [partial_sum(series, n) for n in range(1, series.n_corrections + 1)]
    return [s * s for s in sums] if reading == "squared" else sums


def check_energy(case: PowerLawCase, E) -> mpf:
    """``Ec`` implied by a physical energy ``E > -m``."""
    E = mpf(E)
    nu, A, B0, m = (to_mpf(x) for x in (case.nu, case.A, case.B0, case.m))
    if not E + m > 0:
        raise DomainError("E must exceed -m")
    return (E - m - 2 * B0) * ((E + m) * (2 * A) ** (-2 / nu)) ** (nu / (nu + 2))


def invert_energy(case: PowerLawCase, E_check, bracket=None, rel_tol=None,
                  samples: int = 400) -> mpf:
    """Physical energy ``E`` whose rescaled eigenvalue is ``E_check``.

    The bracket defaults to ``(-m, hi]`` with ``hi`` grown until ``Ec(hi)``
    exceeds the target.  Sign changes on a uniform sample are bisected; more
    than one root raises :class:`MultipleRootError` listing them all.
    """
    target = mpf(E_check)
    m = to_mpf(case.m)
    rel_tol = mpf(10) ** -25 if rel_tol is None else mpf(rel_tol)

    def g(E):
        return check_energy(case, E) - target

    if bracket is None:
        lo = -m + m * mpf(10) ** -12
        hi = m + 2 * abs(to_mpf(case.B0)) + 1
        for _ in range(200):
            if g(hi) > 0:
                break
            hi = 2 * hi + 1
        else:
            raise NoRootError("Ec(E) never reaches the target")
    else:
        lo, hi = (mpf(x) for x in bracket)
    step = (hi - lo) / samples
    grid = [lo + i * step for i in range(samples + 1)]
    vals = [g(E) for E in grid]
    roots = []
    for (a, fa), (b, fb) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if fa == 0:
            roots.append(a)
        elif (fa < 0) != (fb < 0):
            roots.append(_bisect(g, a, b, fa, rel_tol))
    if vals[-1] == 0:
        roots.append(grid[-1])
    if not roots:
        raise NoRootError(f"no E in [{mpmath.nstr(lo, 8)}, {mpmath.nstr(hi, 8)}] gives Ec={target}")
    if len(roots) > 1:
        raise MultipleRootError(f"{len(roots)} energies give Ec={mpmath.nstr(target, 10)}", roots)
    return roots[0]


def _bisect(g, a, b, fa, rel_tol):
    while b - a > rel_tol * max(abs(a), abs(b), mpf(1)):
        mid = (a + b) / 2
        fm = g(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b = mid
    return (a + b) / 2
