"""Self-consistent expansion point and the Taylor data fed to the hierarchy."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .effective import EffectiveProblem
from .errors import BranchError, DomainError, MultipleRootError, NoRootError, PsletError
from .powersum import ps_eval, ps_taylor, to_mpf

log = logging.getLogger(__name__)

__all__ = [
    "ExpansionPoint",
    "q_of_r0",
    "leading_energy",
    "omega_of",
    "beta_shift",
    "closure_residual",
    "solve_expansion_point",
]

DEFAULT_ORDER_MAX = 30


@dataclass(frozen=True, eq=False)
class ExpansionPoint:
    problem: EffectiveProblem
    k: int
    r0: mpf
    Q: mpf
    lbar: mpf
    beta0: mpf
    omega: mpf
    E_lead: mpf
    a: list
    b: list
    c: list
    T: list
    order_max: int
    branch: int = 1

    @property
    def coupling(self) -> mpf:
        """``r0^2 / Q``, the prefactor of every Gamma- and V-derived term."""
        return self.r0 ** 2 / self.Q

    def stationarity_residual(self) -> mpf:
        """Coefficient of the x/lbar^(1/2) term; zero at a stationary point."""
        r2 = self.r0 ** 2
        return self.Q * self.a[1] + r2 * self.b[1] + 2 * r2 * self.E_lead * self.c[1]


def _values(prob: EffectiveProblem, r0):
    g, g1, g2 = prob.gamma_derivatives
    v, v1, v2 = prob.vector_derivatives
    return [ps_eval(p, r0) for p in (g, g1, g2, v, v1, v2)]


def q_of_r0(prob: EffectiveProblem, r0) -> mpf:
    """Q that makes ``r0`` a stationary point of the leading energy.

    ``2Q = h + sqrt(h^2 - g)`` with h, g built from Gamma, Gamma', V, V'.
    """
    r0 = mpf(r0)
    G, G1, _, V, V1, _ = _values(prob, r0)
    h = r0 ** 3 * (2 * V * V1 + G1 + r0 * V1 ** 2)
    # h^2 - g factored as r^6 V'^2 [...]; subtracting h^2 and g directly loses
    # half the digits through the square root when V' is small
    inner = 2 * r0 * (2 * V * V1 + G1) + (r0 * V1) ** 2 + 4 * V * V + 4 * G
    if inner < 0 and V1 != 0:
        raise BranchError(f"h^2 - g < 0 at r0={mpmath.nstr(r0, 8)}")
    root = r0 ** 3 * abs(V1) * mpmath.sqrt(inner) if V1 != 0 else mpf(0)
    return (h + root) / 2


def leading_energy(prob: EffectiveProblem, r0, Q, branch: int = 1) -> mpf:
    """``V(r0) +/- sqrt(V(r0)^2 + Gamma(r0) + Q/r0^2)``."""
    r0 = mpf(r0)
    V = ps_eval(prob.vector_for_coupling, r0)
    G = ps_eval(prob.gamma, r0)
    rad = V * V + G + Q / r0 ** 2
    if rad < 0:
        raise BranchError(f"leading-energy radicand {mpmath.nstr(rad, 8)} < 0")
    return V + (1 if branch >= 0 else -1) * mpmath.sqrt(rad)


def omega_of(prob: EffectiveProblem, r0, Q, E_lead) -> mpf:
    r0 = mpf(r0)
    G2 = ps_eval(prob.gamma_derivatives[2], r0)
    V2 = ps_eval(prob.vector_derivatives[2], r0)
    r4q = r0 ** 4 / Q
    rad = 12 + 2 * r4q * G2 + 4 * r4q * E_lead * V2
    if not rad > 0:
        raise BranchError(f"omega^2 = {mpmath.nstr(rad, 8)} <= 0: expansion point is not a well")
    return mpmath.sqrt(rad)


def beta_shift(k: int, omega) -> mpf:
    if k < 0:
        raise DomainError("k must be non-negative")
    return -(1 + (k + mpf(1) / 2) * omega) / 2


def closure_residual(prob: EffectiveProblem, k: int, r0, branch: int = 1):
    """``Q(r0) - lbar(r0)^2`` together with the intermediate quantities."""
    Q = q_of_r0(prob, r0)
    if not Q > 0:
        raise BranchError("Q <= 0")
    E = leading_energy(prob, r0, Q, branch)
    w = omega_of(prob, r0, Q, E)
    beta0 = beta_shift(k, w)
    lbar = prob.ell_eff - beta0
    return Q - lbar * lbar, (Q, E, w, beta0, lbar)


def _bisect(f, lo, hi, flo, rel_tol):
    """Bracketed root by regula falsi with the Illinois weight halving.

    The bracket always shrinks; a plain bisection step is taken whenever the
    interpolated point fails to cut the bracket by at least half in two tries.
    """
    fhi = f(hi)
    if fhi == 0:
        return hi
    side = 0
    for _ in range(4 * mpmath.mp.prec):
        width = hi - lo
        mid = (lo * fhi - hi * flo) / (fhi - flo)
        if not lo < mid < hi or side == 2 or side == -2:
            mid = (lo + hi) / 2
            side = 0
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
            fhi /= 2 if side < 0 else 1
            side = side - 1 if side < 0 else -1
        else:
            hi, fhi = mid, fm
            flo /= 2 if side > 0 else 1
            side = side + 1 if side > 0 else 1
        if hi - lo <= rel_tol * abs(mid) or hi - lo == width:
            break
    return (lo + hi) / 2 if hi - lo > rel_tol * abs(lo) else (lo if abs(flo) < abs(fhi) else hi)


def _scan_roots(prob, k, branch, scale, points_per_decade=24, decades=3):
    lo = mpf(scale) * mpf(10) ** (-decades)
    ratio = mpf(10) ** (mpf(1) / points_per_decade)
    grid = [lo * ratio ** i for i in range(2 * decades * points_per_decade + 1)]

    def f(r):
        try:
            val, aux = closure_residual(prob, k, r, branch)
        except PsletError:
            return None, None
        return (val, aux) if aux[4] > 0 else (None, None)

    # the scan only needs signs, so it runs at reduced precision
    with mpmath.workdps(20):
        raw = [(r, *f(r)) for r in grid]
        # a root can sit just inside the edge of the region where the leading
        # quantities are real; locate such edges so the scan sees both sides
        samples = []
        for (r1, f1, a1), (r2, f2, a2) in zip(raw, raw[1:]):
            samples.append((r1, f1, a1))
            if (f1 is None) != (f2 is None):
                good, bad = (r1, r2) if f1 is not None else (r2, r1)
                for _ in range(12):
                    mid = (good + bad) / 2
                    if f(mid)[0] is None:
                        bad = mid
                    else:
                        good = mid
                samples.append((good, *f(good)))
    samples.append(raw[-1])
    samples.sort(key=lambda t: t[0])
    brackets = []
    for (r1, f1, _), (r2, f2, _) in zip(samples, samples[1:]):
        if f1 is None or f2 is None:
            continue
        if f1 == 0:
            brackets.append((r1, r1, f1))
        elif (f1 < 0) != (f2 < 0):
            brackets.append((r1, r2, f1))
    return brackets


def _full_precision_ends(f, lo, hi):
    # an end found at scan precision may fall just outside the real region
    for _ in range(20):
        try:
            return lo, hi, f(lo)
        except PsletError:
            lo += (hi - lo) * mpf(10) ** -12
    for _ in range(20):
        try:
            f(hi)
            return lo, hi, f(lo)
        except PsletError:
            hi -= (hi - lo) * mpf(10) ** -12
    raise NoRootError("bracket end is outside the region where the closure is real")


def continuum_threshold(prob: EffectiveProblem):
    """``sqrt(Gamma(inf))`` when Gamma and V settle at large r, else None.

    A level at or above it is not bound.
    """
    if any(s > 0 for s in prob.gamma.powers()) or any(
            s >= 0 for s in prob.vector_for_coupling.powers()):
        return None
    limit = to_mpf(prob.gamma.coeff(0))
    return mpmath.sqrt(limit) if limit > 0 else mpf(0)


def solve_expansion_point(prob: EffectiveProblem, k: int, order_max: int = DEFAULT_ORDER_MAX,
                          branch: int = 1, rel_tol=None, scale=None) -> ExpansionPoint:
    """Locate r0 with ``Q(r0) = lbar(r0)^2`` and tabulate the expansion data.

    A geometric scan over six decades around a hydrogenic/Airy length scale
    brackets the sign changes, each of which is refined by bisection.  When
    several roots survive, the one with the lowest leading energy is kept.
    """
    if k < 0:
        raise DomainError("k must be non-negative")
    if rel_tol is None:
        rel_tol = mpf(10) ** (-min(30, mpmath.mp.dps - 5))
    if scale is None:
        scale = prob.length_scale(k)

    brackets = _scan_roots(prob, k, branch, scale)
    if not brackets:
        raise NoRootError(f"no self-consistent r0 found for k={k}, l={prob.quantum_ell}")

    def f(r):
        return closure_residual(prob, k, r, branch)[0]

    roots = []
    for lo, hi, _ in brackets:
        if lo == hi:
            r0 = lo
        else:
            lo, hi, flo = _full_precision_ends(f, lo, hi)
            r0 = _bisect(f, lo, hi, flo, rel_tol)
        roots.append((closure_residual(prob, k, r0, branch)[1][1], r0))
    roots.sort(key=lambda t: t[1])
    # a sample landing on a root also brackets it with its neighbour
    distinct = []
    for E, r in roots:
        if not distinct or abs(r - distinct[-1][1]) > mpf(10) ** -10 * abs(r):
            distinct.append((E, r))
    roots = sorted(distinct, key=lambda t: t[0] if branch >= 0 else -t[0])
    if len(roots) > 1:
        log.warning("%d self-consistent roots for k=%d l=%d; keeping r0=%s",
                    len(roots), k, prob.quantum_ell, mpmath.nstr(roots[0][1], 12))
    r0 = roots[0][1]
    _, (Q, E, w, beta0, lbar) = closure_residual(prob, k, r0, branch)
    threshold = continuum_threshold(prob)
    if threshold is not None and abs(E) >= threshold:
        raise NoRootError(f"leading energy {mpmath.nstr(E, 10)} lies in the continuum "
                          f"(|E| >= {mpmath.nstr(threshold, 10)}); no bound level")

    a = [mpf((-1) ** n * (n + 1)) for n in range(order_max + 1)]
    b = ps_taylor(prob.gamma, r0, order_max)
    c = ps_taylor(prob.vector_for_coupling, r0, order_max)
    coupling = r0 ** 2 / Q
    T = [a[n] + coupling * b[n] for n in range(order_max + 1)]
    return ExpansionPoint(problem=prob, k=k, r0=r0, Q=Q, lbar=lbar, beta0=beta0, omega=w,
                          E_lead=E, a=a, b=b, c=c, T=T, order_max=order_max, branch=branch)


def check_roots_unique(prob, k, branch=1):
    """All sign changes of the closure residual (diagnostic helper)."""
    brackets = _scan_roots(prob, k, branch, prob.length_scale(k))
    if len(brackets) > 1:
        raise MultipleRootError("several self-consistent expansion points",
                                [b[0] for b in brackets])
    return brackets
