"""Shooting solver for the effective radial equation in double precision.

An independent check on the series: the same equation

    Phi'' = [l'(l'+1)/r^2 + Gamma(r) + 2 E V(r) - E^2] Phi

is integrated outward on a logarithmic mesh.  With ``r = e^s`` and
``Phi = r^(1/2) chi`` it becomes ``chi'' = q(s) chi`` where
``q = (l' + 1/2)^2 + r^2 (Gamma + 2 E V - E^2)``, which keeps the
centrifugal region well resolved.  The eigenvalue with ``k`` interior nodes
is located by bisection on the node count, i.e. on the Dirichlet condition
at ``r_max``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from numba import njit

from .effective import EffectiveProblem
from .errors import ConfigError, DomainError, ShootingError
from .powersum import to_mpf

log = logging.getLogger(__name__)

__all__ = ["ShootingConfig", "OracleResult", "shoot_eigenvalue", "count_nodes"]

MIN_STEPS = 10_000
# at r_min inside a repulsive wall the solution is already this many
# e-folds below its size at the wall's edge
WALL_EFOLDS = 40.0
# first-pass mesh reaches this many length scales out
WIDE_FACTOR = 1e3


@dataclass(frozen=True)
class ShootingConfig:
    """Mesh and search settings; ``None`` fields are chosen per problem."""

    r_min: float | None = None
    r_max: float | None = None
    steps: int = 20_000
    bisection_tol: float = 1e-13
    energy_bracket: tuple | None = None

    def __post_init__(self):
        if self.steps < MIN_STEPS:
            raise ConfigError(f"must be at least {MIN_STEPS}", "steps")
        if not self.bisection_tol > 0:
            raise ConfigError("must be positive", "bisection_tol")
        if self.r_min is not None and not self.r_min > 0:
            raise ConfigError("must be positive", "r_min")
        if self.r_min is not None and self.r_max is not None and not self.r_min < self.r_max:
            raise ConfigError("r_min must be below r_max", "r_max")
        if self.energy_bracket is not None:
            lo, hi = self.energy_bracket
            if not lo < hi:
                raise ConfigError("needs lo < hi", "energy_bracket")


@dataclass(frozen=True)
class OracleResult:
    E_num: float
    nodes: int
    matched: bool
    mesh_halving_delta: float
    r_min: float
    r_max: float
    steps: int


def count_nodes(samples) -> int:
    """Strict sign changes in a sequence; exact zeros are skipped."""
    count, prev = 0, 0.0
    for v in samples:
        if v == 0:
            continue
        if prev and (v > 0) != (prev > 0):
            count += 1
        prev = v
    return count


@njit(cache=False)
def _integrate(G, Vr, R2, nu2, E, h, chi0, dchi0):
    """RK4 for chi'' = q chi on a mesh with half-step samples.

    Returns the node count, the sign of chi at the far end and
    log10(|chi_end| / max |chi|).
    """
    n = (G.shape[0] - 1) // 2
    E2 = E * E
    chi, dchi = chi0, dchi0
    nodes = 0
    prev = chi
    log_scale = 0.0
    log_max = math.log10(abs(chi))
    for i in range(n):
        q0 = nu2 + G[2 * i] + 2.0 * E * Vr[2 * i] - E2 * R2[2 * i]
        qm = nu2 + G[2 * i + 1] + 2.0 * E * Vr[2 * i + 1] - E2 * R2[2 * i + 1]
        q1 = nu2 + G[2 * i + 2] + 2.0 * E * Vr[2 * i + 2] - E2 * R2[2 * i + 2]
        k1c = dchi
        k1d = q0 * chi
        k2c = dchi + 0.5 * h * k1d
        k2d = qm * (chi + 0.5 * h * k1c)
        k3c = dchi + 0.5 * h * k2d
        k3d = qm * (chi + 0.5 * h * k2c)
        k4c = dchi + h * k3d
        k4d = q1 * (chi + h * k3c)
        chi = chi + h * (k1c + 2.0 * k2c + 2.0 * k3c + k4c) / 6.0
        dchi = dchi + h * (k1d + 2.0 * k2d + 2.0 * k3d + k4d) / 6.0
        a = abs(chi)
        if a > 1e100:
            chi *= 1e-100
            dchi *= 1e-100
            log_scale += 100.0
            a *= 1e-100
        if a > 0.0:
            la = math.log10(a) + log_scale
            if la > log_max:
                log_max = la
        if i < n - 1 and chi != 0.0:
            if (chi > 0.0) != (prev > 0.0):
                nodes += 1
            prev = chi
    tail = -math.inf if chi == 0.0 else math.log10(abs(chi)) + log_scale - log_max
    sign = 1.0 if chi > 0.0 else (-1.0 if chi < 0.0 else 0.0)
    return nodes, sign, tail


class _Mesh:
    """Potential samples on the log mesh, shared by every trial energy."""

    def __init__(self, model: "_Model", r_min: float, r_max: float, steps: int):
        self.r_min, self.r_max, self.steps = r_min, r_max, steps
        s0, s1 = math.log(r_min), math.log(r_max)
        self.h = (s1 - s0) / steps
        r = np.exp(np.linspace(s0, s1, 2 * steps + 1))
        R2 = r * r
        self.G = R2 * model.gamma(r)
        self.Vr = R2 * model.vector(r)
        self.R2 = R2
        self.model = model

    def start(self, E: float):
        return self.model.start(self.r_min, E)

    def run(self, E: float):
        chi0, dchi0 = self.start(E)
        return _integrate(self.G, self.Vr, self.R2, self.model.nu2, E, self.h, chi0, dchi0)

    def nodes(self, E: float) -> int:
        return self.run(E)[0]

    def stiffness(self, E: float) -> float:
        """Largest ``h sqrt(|q|)`` over the classically allowed part."""
        q = self.model.nu2 + self.G + 2 * E * self.Vr - E * E * self.R2
        allowed = q < 0
        return float(self.h * np.sqrt(-q[allowed]).max()) if allowed.any() else 0.0


class _Model:
    """Float images of Gamma and V plus the small-r behaviour."""

    def __init__(self, prob: EffectiveProblem):
        self.prob = prob
        self.g_terms = [(float(to_mpf(c)), float(to_mpf(s))) for c, s in prob.gamma.terms]
        self.v_terms = [(float(to_mpf(c)), float(to_mpf(s)))
                        for c, s in prob.vector_for_coupling.terms]
        self.nu2 = float(to_mpf(prob.radicand))
        self.ell_eff = math.sqrt(self.nu2) - 0.5
        self.mass = float(to_mpf(prob.mass))
        self.scale = prob.length_scale(0)
        lowest = min([s for _, s in self.g_terms + self.v_terms], default=0.0)
        self.wall = lowest < -2.0
        if self.wall:
            c = sum(c for c, s in self.g_terms if s == lowest)
            # the vector part enters as 2 E V; at the wall only Gamma is E-free
            if not c > 0 or any(s == lowest for _, s in self.v_terms):
                raise ShootingError("the effective potential is attractive faster than 1/r^2 "
                                    "at the origin; no regular solution to start from")

    def gamma(self, r):
        return sum(c * r ** s for c, s in self.g_terms) if self.g_terms else 0 * r

    def vector(self, r):
        return sum(c * r ** s for c, s in self.v_terms) if self.v_terms else 0 * r

    def q(self, r, E):
        r = np.asarray(r, dtype=float)
        return self.nu2 + r * r * (self.gamma(r) + 2 * E * self.vector(r) - E * E)

    def default_r_min(self) -> float:
        if not self.wall:
            return 1e-6 * self.scale
        r = self.scale
        for _ in range(400):
            if self.q(r, 0.0) >= WALL_EFOLDS ** 2:
                return float(r)
            r /= 1.1
        raise ShootingError("could not place r_min inside the repulsive core")

    def start(self, r0: float, E: float):
        """``(chi, dchi/ds)`` at ``r0``: WKB inside a wall, Frobenius otherwise."""
        if self.wall:
            q0 = float(self.q(r0, E))
            eps = 1e-4
            dq = (float(self.q(r0 * math.exp(eps), E)) - float(self.q(r0 * math.exp(-eps), E))) / (2 * eps)
            return 1e-30, 1e-30 * (math.sqrt(q0) - dq / (4 * q0))
        p_m1 = sum(c for c, s in self.g_terms if s == -1.0)
        p_m1 += 2 * E * sum(c for c, s in self.v_terms if s == -1.0)
        a = self.ell_eff + 0.5
        c = p_m1 / (2 * a + 1)
        cr = c * r0
        return 1e-30, 1e-30 * (a + cr / (1 + cr))

    def energy_floor(self) -> float:
        return 0.0 if not self.v_terms else -self.mass

    def turning_point(self, E: float):
        """Outermost r where the motion turns forbidden, or None if unbound."""
        r = self.scale * np.logspace(-3, 4, 3000)
        q = self.q(r, E)
        allowed = np.nonzero(q < 0)[0]
        if allowed.size == 0:
            return float(self.scale)
        last = allowed[-1]
        if last == r.size - 1:
            return None
        return float(r[last + 1])

    def default_r_max(self, E: float) -> float:
        rt = self.turning_point(E)
        if rt is None:
            return WIDE_FACTOR * self.scale
        r_max = 10.0 * rt
        p_inf = self.mass ** 2 - E * E
        if not self._confining() and p_inf > 0:
            r_max = max(r_max, rt + 40.0 / math.sqrt(p_inf))
        return r_max

    def _confining(self) -> bool:
        top = max([s for _, s in self.g_terms + self.v_terms], default=0.0)
        return top > 0


def _bracket(mesh: _Mesh, k: int, lo: float, hi: float | None):
    if mesh.nodes(lo) > k:
        raise ShootingError(f"lower energy {lo} already has more than {k} nodes")
    if hi is not None:
        if mesh.nodes(hi) <= k:
            raise ShootingError(f"upper energy {hi} has at most {k} nodes")
        return lo, hi
    step = max(1.0, abs(lo))
    for _ in range(60):
        hi = lo + step
        if mesh.nodes(hi) > k:
            return lo, hi
        lo, step = hi, 2 * step
    raise ShootingError("could not bracket the eigenvalue")


def _bisect(mesh: _Mesh, k: int, lo: float, hi: float, tol: float):
    while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if mesh.nodes(mid) > k:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _solve(model: _Model, k: int, cfg: ShootingConfig, r_min: float, r_max: float):
    mesh = _Mesh(model, r_min, r_max, cfg.steps)
    lo, hi = cfg.energy_bracket if cfg.energy_bracket else (model.energy_floor(), None)
    lo, hi = _bracket(mesh, k, lo, hi)
    lo, hi = _bisect(mesh, k, lo, hi, cfg.bisection_tol)
    n_lo, s_lo, _ = mesh.run(lo)
    n_hi, s_hi, _ = mesh.run(hi)
    matched = n_lo == k and n_hi == k + 1 and s_lo != s_hi
    return 0.5 * (lo + hi), matched, mesh


def shoot_eigenvalue(prob: EffectiveProblem, k: int, cfg: ShootingConfig | None = None) -> OracleResult:
    """Energy of the state with ``k`` interior nodes.

    A first pass on a generous mesh finds the level; ``r_max`` is then set
    from its turning point and the search repeated, and once more with twice
    the steps to report the mesh-halving change.
    """
    if k < 0:
        raise DomainError("k must be non-negative")
    cfg = cfg or ShootingConfig()
    model = _Model(prob)
    r_min = cfg.r_min if cfg.r_min is not None else model.default_r_min()

    if cfg.r_max is not None:
        r_max = cfg.r_max
    else:
        rough = replace(cfg, bisection_tol=1e-7)
        E_rough, _, _ = _solve(model, k, rough, r_min, WIDE_FACTOR * model.scale)
        r_max = model.default_r_max(E_rough)
    if not r_min < r_max:
        raise ShootingError(f"r_min={r_min} is not below r_max={r_max}")

    E, matched, mesh = _solve(model, k, cfg, r_min, r_max)
    stiff = mesh.stiffness(E)
    if stiff > 1.0:
        log.warning("step h*sqrt|q| reaches %.2f in the allowed region; increase steps", stiff)
    E2, _, _ = _solve(model, k, replace(cfg, steps=2 * cfg.steps), r_min, r_max)
    delta = abs(E2 - E) / max(abs(E2), 1e-300)
    return OracleResult(E_num=E2, nodes=k, matched=matched, mesh_halving_delta=delta,
                        r_min=r_min, r_max=r_max, steps=cfg.steps)
