"""Partial sums, the M = 2E mass rule, Pade approximants and stabilization."""
from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from mpmath import mpf

from .errors import DegenerateDenominatorError, DomainError, RangeError, StabilizationError
from .powersum import exact, to_mpf
from .recursion import EnergySeries

__all__ = [
    "PadeResult",
    "PadeTable",
    "partial_sum",
    "partial_sums",
    "mass_of",
    "pade",
    "pade_coefficients",
    "pade_table",
    "stabilization",
    "CONVENTIONS",
]

DEFAULT_STABILIZATION_TOL = mpf("5e-5")
# "full": approximant of sum_{n>=-1} E^(n) z^(n+1), leading term included.
# "corrections": E^(-1) + z * [i/j] of sum_{n>=0} E^(n) z^n.
CONVENTIONS = ("full", "corrections")


def partial_sum(series: EnergySeries, N: int) -> mpf:
    """``E(N) = sum_{n=-1}^{N-1} E^(n) lbar^-(n+1)``.

    ``N`` counts the terms kept after the leading one, so ``E(1)`` is
    ``E^(-1) + E^(0)/lbar`` and needs ``E^(0)`` only.
    """
    if N < 0:
        raise RangeError(f"N={N} must be non-negative")
    if N > series.n_corrections + 1:
        raise RangeError(f"E({N}) needs E^({N - 1}); the series stops at E^({series.n_corrections})")
    z = 1 / series.lbar
    return mpmath.fsum(series.E_coeffs[i] * z ** i for i in range(N + 1))


def partial_sums(series: EnergySeries, upto: int | None = None) -> list:
    """``[E(1), ..., E(upto)]`` (default: every sum the series supports)."""
    upto = series.n_corrections if upto is None else upto
    return [partial_sum(series, N) for N in range(1, upto + 1)]


def mass_of(E):
    return 2 * E


def pade_coefficients(coeffs, i: int, j: int):
    """Numerator and denominator of the [i/j] approximant of ``sum c_n z^n``.

    The denominator is normalised to ``q_0 = 1``; its remaining coefficients
    solve the j x j Hankel system that cancels orders i+1 .. i+j.
    """
    if i < 0 or j < 0:
        raise DomainError("Pade degrees must be non-negative")
    if len(coeffs) < i + j + 1:
        raise RangeError(f"[{i}/{j}] needs {i + j + 1} coefficients, have {len(coeffs)}")
    c = [x if isinstance(x, mpf) else to_mpf(exact(x)) for x in coeffs]

    def at(n):
        return c[n] if n >= 0 else mpf(0)

    q = [mpf(1)]
    if j:
        A = mpmath.matrix(j, j)
        rhs = mpmath.matrix(j, 1)
        for s in range(1, j + 1):
            for l in range(1, j + 1):
                A[s - 1, l - 1] = at(i + s - l)
            rhs[s - 1] = -at(i + s)
        scale = max((abs(A[r, s]) for r in range(j) for s in range(j)), default=mpf(0))
        try:
            if scale == 0:
                raise ZeroDivisionError
            det = mpmath.det(A / scale)
            if abs(det) < mpf(10) ** (-(mpmath.mp.dps - 10)):
                raise ZeroDivisionError
            sol = mpmath.lu_solve(A, rhs)
        except ZeroDivisionError as exc:
            raise DegenerateDenominatorError(f"[{i}/{j}] Hankel system is singular") from exc
        q += [sol[l] for l in range(j)]
    p = [mpmath.fsum(q[l] * at(s - l) for l in range(min(s, j) + 1)) for s in range(i + 1)]
    return p, q


def _poles_inside(q, radius) -> bool:
    # q holds ascending coefficients; strip vanishing top terms first
    coeffs = list(q)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        return False
    roots = mpmath.polyroots(coeffs[::-1], maxsteps=200, extraprec=2 * mpmath.mp.prec)
    return any(abs(r) <= radius for r in roots)


@dataclass(frozen=True)
class PadeResult:
    i: int
    j: int
    energy: mpf
    pole_on_disc: bool
    convention: str = "full"

    @property
    def mass(self) -> mpf:
        return mass_of(self.energy)


def pade(series: EnergySeries, i: int, j: int, convention: str = "full") -> PadeResult:
    """Evaluate the [i/j] approximant at ``z = 1/lbar``.

    With ``convention="full"`` the approximant acts on
    ``f(z) = sum_{n>=-1} E^(n) z^(n+1)``; ``"corrections"`` keeps ``E^(-1)``
    outside and approximates ``sum_{n>=0} E^(n) z^n`` instead, which is
    multiplied by ``z`` and added back.
    """
    if convention not in CONVENTIONS:
        raise DomainError(f"unknown Pade convention {convention!r}")
    if i + j + 1 > series.n_corrections:
        raise RangeError(f"[{i}/{j}] needs i+j+1 <= {series.n_corrections}")
    z = 1 / series.lbar
    E = series.E_coeffs
    coeffs = E if convention == "full" else E[1:]
    p, q = pade_coefficients(coeffs, i, j)
    num = mpmath.polyval(p[::-1], z)
    den = mpmath.polyval(q[::-1], z)
    if den == 0:
        raise DegenerateDenominatorError(f"[{i}/{j}] denominator vanishes at z=1/lbar")
    val = num / den
    if convention == "corrections":
        val = E[0] + z * val
    return PadeResult(i, j, val, _poles_inside(q, z), convention)


@dataclass
class PadeTable:
    """All approximants ``[i/j]`` the series supports, keyed by ``(i, j)``.

    Entries whose Hankel system is singular are left out and listed in
    ``degenerate``.
    """

    entries: dict
    source: EnergySeries
    convention: str = "full"
    degenerate: list = field(default_factory=list)

    def mass(self, i: int, j: int) -> mpf:
        return self.entries[(i, j)].mass

    def flagged(self) -> list:
        return sorted(key for key, res in self.entries.items() if res.pole_on_disc)


def pade_table(series: EnergySeries, max_degree: int | None = None,
               convention: str = "full") -> PadeTable:
    limit = series.n_corrections - 1
    if max_degree is not None:
        limit = min(limit, 2 * max_degree)
    entries, bad = {}, []
    for total in range(limit + 1):
        for i in range(total + 1):
            j = total - i
            if max_degree is not None and (i > max_degree or j > max_degree):
                continue
            try:
                entries[(i, j)] = pade(series, i, j, convention)
            except DegenerateDenominatorError:
                bad.append((i, j))
    return PadeTable(entries, series, convention, bad)


def stabilization(series: EnergySeries, rel_tol=DEFAULT_STABILIZATION_TOL, transform=None):
    """First ``N`` after which the partial sums settle.

    Returns ``(N, value)`` for the smallest ``N`` with both ``E(N+1)`` and
    ``E(N+2)`` within ``rel_tol * |E(N)|`` of ``E(N)``.  Requiring two steps
    avoids stopping early on alternating sequences.  ``transform`` is applied
    to each partial sum first (e.g. squaring for a reduced eigenvalue).
    """
    rel_tol = mpf(rel_tol)
    if not rel_tol > 0:
        raise DomainError("rel_tol must be positive")
    sums = partial_sums(series, series.n_corrections + 1)
    if transform is not None:
        sums = [transform(s) for s in sums]
    for n in range(len(sums) - 2):
        ref = sums[n]
        tol = rel_tol * abs(ref)
        if abs(sums[n + 1] - ref) <= tol and abs(sums[n + 2] - ref) <= tol:
            return n + 1, ref
    raise StabilizationError(
        f"partial sums did not settle to {mpmath.nstr(rel_tol, 3)} within {len(sums)} orders"
    )
