"""Order-by-order solution of the shifted-l hierarchy.

With ``x = lbar^(1/2) (r - r0)/r0`` and ``t = lbar^(-1/2)`` the effective
equation becomes ``-Phi'' + W(x; t) Phi = 0`` where ``W = sum_j W_j(x) t^j``.
Writing ``Phi = F exp(U)`` with ``U' = sum_j y_j t^j`` and
``F = sum_j F_j t^j`` (``F_0`` monic of degree k, ``F_j`` of degree < k)
gives at each power ``t^j``

    F_j'' + 2 sum F_a' y_b + sum F_a (y_b' + sum y_c y_d) - sum W_a F_b = 0.

That relation is linear in the unknowns of order ``j``: ``y_j`` (parity
``j+1``), the low coefficients of ``F_j`` and, for even ``j``, the energy
coefficient ``E^(j/2)``.  Matching powers of x from the top down makes the
system triangular.

The even orders fill the table ``D`` (odd polynomials ``y_2n``), the odd
orders fill ``C`` (even polynomials ``y_2n+1``) and ``A`` holds the low
coefficients of every ``F_j``.

The climb itself runs on ``gmpy2.mpfr`` numbers at the active mpmath
precision, which avoids most of mpmath's per-operation overhead; inputs
and results are ``mpmath.mpf``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import SimpleNamespace

import gmpy2
import mpmath
from mpmath import mpf

from .effective import EffectiveProblem
from .errors import DependencyError, DomainError, PsletError, ResidualError, SingularSystemError
from .expansion import ExpansionPoint, solve_expansion_point

__all__ = [
    "OrderTerms",
    "WaveCoefficients",
    "EnergySeries",
    "Hierarchy",
    "upsilon",
    "j_term",
    "k_term",
    "eps_term",
    "build_order_terms",
    "solve_order",
    "energy_corrections",
    "DEFAULT_CORRECTIONS",
]

DEFAULT_CORRECTIONS = 14
RESIDUAL_TOL = mpf("1e-20")


def _to_fast(x):
    sign, man, exp, _ = mpf(x)._mpf_
    if not man:
        return gmpy2.mpfr(0)
    return gmpy2.mul_2exp(gmpy2.mpfr(-man if sign else man), exp)


def _to_mpf(x) -> mpf:
    if isinstance(x, mpf):
        return x
    if isinstance(x, int):
        return mpf(x)
    man, exp = x.as_mantissa_exp()
    return mpf((int(man), int(exp)))


def _fmt(x) -> str:
    return mpmath.nstr(_to_mpf(x), 5)


# dense polynomials: list of coefficients, index = power of x.  The helpers
# only use +, * and == 0, so they work on mpf and mpfr alike; plain 0 pads.

def _padd(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return out


def _pscale(p, s):
    return [c * s for c in p]


def _pmul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    nz = [(j, b) for j, b in enumerate(q) if b != 0]
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in nz:
            out[i + j] += a * b
    return out


def _pder(p):
    return [i * p[i] for i in range(1, len(p))]


def _mono(power, coeff):
    return [0] * power + [coeff]


def _degree(p):
    for i in range(len(p) - 1, -1, -1):
        if p[i] != 0:
            return i
    return -1


def _coef(p, i):
    return p[i] if 0 <= i < len(p) else 0


def _pval(p, x):
    return mpmath.polyval([_to_mpf(c) for c in reversed(p)], x) if p else mpf(0)


# --- term families of the expanded equation --------------------------------

def _energy(E_known, n):
    """E^(n) from a list stored with offset one (index 0 is E^(-1))."""
    if n < -1:
        return 0
    if n + 1 >= len(E_known):
        raise DependencyError(f"E^({n}) is required but only E^(-1)..E^({len(E_known) - 2}) are known")
    return E_known[n + 1]


def upsilon(pt: ExpansionPoint, n: int) -> list:
    """``T_{n+2} x^{n+2} + (2 beta0 + 1) a_n x^n + beta0 (beta0+1) a_{n-2} x^{n-2}``."""
    if n + 2 > pt.order_max:
        raise DomainError(f"order {n} needs Taylor data beyond order_max={pt.order_max}")
    p = _mono(n + 2, pt.T[n + 2])
    p[n] += (2 * pt.beta0 + 1) * pt.a[n]
    if n >= 2:
        p[n - 2] += pt.beta0 * (pt.beta0 + 1) * pt.a[n - 2]
    return p


def j_term(pt: ExpansionPoint, E_known, n: int) -> list:
    """Even polynomial ``(2 r0^2/Q) sum_{p=0}^{n+1} E^(n-p) c_{2p} x^{2p}``."""
    p = [0] * (2 * n + 3)
    for q in range(n + 2):
        p[2 * q] = 2 * pt.coupling * _energy(E_known, n - q) * pt.c[2 * q]
    return p


def k_term(pt: ExpansionPoint, E_known, n: int) -> list:
    """Odd polynomial ``(2 r0^2/Q) sum_{p=0}^{n+1} E^(n-p) c_{2p+1} x^{2p+1}``."""
    p = [0] * (2 * n + 4)
    for q in range(n + 2):
        p[2 * q + 1] = 2 * pt.coupling * _energy(E_known, n - q) * pt.c[2 * q + 1]
    return p


def eps_term(pt: ExpansionPoint, E_known, n: int) -> mpf:
    """``(r0^2/Q) sum_{p=-1}^{n+1} E^(n-p) E^(p)`` (n >= -1)."""
    return pt.coupling * sum(
        _energy(E_known, n - p) * _energy(E_known, p) for p in range(-1, n + 2)
    )


@dataclass
class OrderTerms:
    upsilon_n: list
    J_n: list
    K_n: list
    eps_n: mpf


def build_order_terms(pt: ExpansionPoint, E_known, n: int) -> OrderTerms:
    """The four families at index ``n``; needs ``E^(-1)..E^(n+1)``."""
    return OrderTerms(upsilon(pt, n), j_term(pt, E_known, n), k_term(pt, E_known, n),
                      eps_term(pt, E_known, n))


def w_order(pt: ExpansionPoint, E_known, j: int) -> list:
    """Coefficient of ``t^j`` in the full potential (energy terms moved left).

    ``nu^(j)`` at every order, ``J^(n)`` at ``j = 2n``, ``K^(n)`` at
    ``j = 2n + 1`` and ``-eps^(n)`` at ``j = 2n + 2``.
    """
    w = upsilon(pt, j)
    if j % 2 == 0:
        w = _padd(w, j_term(pt, E_known, j // 2))
        w[0] -= eps_term(pt, E_known, j // 2 - 1)
    else:
        w = _padd(w, k_term(pt, E_known, (j - 1) // 2))
    return w


# --- results ---------------------------------------------------------------

@dataclass
class WaveCoefficients:
    """Coefficient tables of ``Phi = F exp(U)``.

    ``D[n]`` and ``C[n]`` are the x-polynomials of ``U'`` at ``t^(2n)`` and
    ``t^(2n+1)``; ``D[n][0]`` and odd-index entries of ``D`` vanish.
    ``A[j]`` are the coefficients below ``x^k`` of ``F`` at ``t^j``.
    """

    k: int
    D: list = field(default_factory=list)
    C: list = field(default_factory=list)
    A: list = field(default_factory=list)

    def f_poly(self, j: int) -> list:
        low = list(self.A[j]) if j < len(self.A) else []
        if j == 0:
            low = low + [mpf(0)] * (self.k + 1 - len(low))
            low[self.k] = mpf(1)
        return low

    def y_poly(self, j: int) -> list:
        return self.D[j // 2] if j % 2 == 0 else self.C[j // 2]

    def F(self, t, upto=None):
        """``F(x)`` summed through ``t^upto`` as an x-polynomial."""
        upto = len(self.A) - 1 if upto is None else upto
        acc = []
        for j in range(upto + 1):
            acc = _padd(acc, _pscale(self.f_poly(j), t ** j))
        return acc


@dataclass
class EnergySeries:
    """Energy coefficients ``E^(-1), E^(0), ..., E^(N)``.

    Partial sums follow ``E(N) = sum_{n=-1}^{N-1} E^(n) lbar^-(n+1)``.
    """

    E_coeffs: list
    lbar: mpf
    Q: mpf
    k: int
    ell: int
    kappa: int | None
    n_corrections: int
    point: ExpansionPoint | None = None
    residuals: list = field(default_factory=list)

    @property
    def state(self):
        return (self.k, self.ell, self.kappa)

    def coefficient(self, n: int) -> mpf:
        return self.E_coeffs[n + 1]


# --- the solver ------------------------------------------------------------

class Hierarchy:
    """Mutable state while climbing the orders for one expansion point."""

    def __init__(self, pt: ExpansionPoint):
        self.pt = pt
        self.k = pt.k
        self.prec = mpmath.mp.prec
        with self._context():
            self.num = SimpleNamespace(
                order_max=pt.order_max,
                T=[_to_fast(v) for v in pt.T],
                a=[_to_fast(v) for v in pt.a],
                c=[_to_fast(v) for v in pt.c],
                beta0=_to_fast(pt.beta0),
                omega=_to_fast(pt.omega),
                coupling=_to_fast(pt.coupling),
            )
            self.E = [_to_fast(pt.E_lead)]
            # coefficient of E^(m) in the constant of W_{2m}
            self.energy_coupling = 2 * self.num.coupling * (self.num.c[0] - self.E[0])
        self.y = []  # y_j
        self.F = []  # full F_j, F_0 includes x^k
        self.Z = []  # y_j' + sum y_c y_d
        self.W = []
        self.wc = WaveCoefficients(pt.k)
        self.residuals = []
        self.order = -1
        if self.energy_coupling == 0:
            raise SingularSystemError("E^(-1) equals V(r0); energy equation is singular", self.k)

    def _context(self):
        return gmpy2.context(gmpy2.get_context(), precision=self.prec)

    def _known_part(self, j, W_j, F_j, y_j, Z_j):
        """Order-j relation with the supplied (possibly partial) unknowns."""
        F = self.F + [F_j]
        y = self.y + [y_j]
        Z = self.Z + [Z_j]
        W = self.W + [W_j]
        acc = _pder(_pder(F_j))
        for a in range(j + 1):
            b = j - a
            if F[a] and y[b]:
                acc = _padd(acc, _pscale(_pmul(_pder(F[a]), y[b]), 2))
            acc = _padd(acc, _pmul(F[a], Z[b]))
            acc = _padd(acc, _pscale(_pmul(W[a], F[b]), -1))
        return acc

    def _z_known(self, j):
        acc = []
        for c in range(1, j):
            acc = _padd(acc, _pmul(self.y[c], self.y[j - c]))
        return acc

    def solve_next(self):
        j = self.order + 1
        if j + 2 > self.pt.order_max:
            raise DomainError(f"order {j} needs Taylor data beyond order_max={self.pt.order_max}")
        with self._context():
            self._solve(j)
        return j

    def _solve(self, j):
        num, k = self.num, self.k
        deg_max = k + j + 2
        if j == 0:
            y0 = [0, -num.omega / 2]
            z0 = _padd(_pder(y0), _pmul(y0, y0))
            W0 = w_order(num, self.E + [0], 0)
            F0 = _mono(k, 1)
            # E^(0) from the x^k coefficient; lower F_0 terms cannot reach it
            base = self._relation(0, W0, F0, y0, z0)
            self.E.append(_coef(base, k) / self.energy_coupling)
            W0 = w_order(num, self.E, 0)
            F0 = self._solve_f_low(W0, y0, z0)
            self.y.append(y0)
            self.Z.append(z0)
            self.W.append(W0)
            self.F.append(F0)
        else:
            self._solve_general(j, deg_max)

        self.order = j
        self._record(j)
        res = self._relation(j, self.W[j], self.F[j], self.y[j], self.Z[j])
        scale = _to_mpf(self._scale(j))
        worst = _to_mpf(max((abs(c) for c in res), default=0))
        self.residuals.append(worst / scale)
        if worst > RESIDUAL_TOL * scale:
            if _degree(res) > deg_max:
                raise ResidualError(f"order {j}: residual degree exceeds bound {deg_max}")
            raise ResidualError(
                f"order {j}: residual {mpmath.nstr(worst, 5)} exceeds tolerance "
                f"(scale {mpmath.nstr(scale, 5)})"
            )

    def _relation(self, j, W_j, F_j, y_j, Z_j):
        saved = (self.F, self.y, self.Z, self.W)
        self.F, self.y, self.Z, self.W = self.F[:j], self.y[:j], self.Z[:j], self.W[:j]
        try:
            return self._known_part(j, W_j, F_j, y_j, Z_j)
        finally:
            self.F, self.y, self.Z, self.W = saved

    def _scale(self, j):
        big = 1
        for p in (self.W[j], self.y[j], self.F[j]):
            for c in p:
                big = max(big, abs(c))
        return big

    def _solve_f_low(self, W_j, y_j, z_j):
        """Lower coefficients of F_0 from the order-0 relation (top-down)."""
        k = self.k
        F0 = _mono(k, 1)
        for d in range(k - 2, -1, -2):
            res = self._relation(0, W_j, F0, y_j, z_j)
            F0[d] = -_coef(res, d) / (self.num.omega * (k - d))
        return F0

    def _solve_general(self, j, deg_max):
        num, k = self.num, self.k
        even = j % 2 == 0
        W_j = w_order(num, self.E + ([0] if even else []), j)
        zk = self._z_known(j)
        F0, y0 = self.F[0], self.y[0]

        y_j = [0] * (j + 2)
        F_j = [0] * k
        energy = 0

        # relation with every order-j unknown set to zero
        base = self._relation(j, W_j, F_j, y_j, zk)
        if _degree(base) > deg_max:
            raise ResidualError(f"order {j}: known part has degree {_degree(base)} > {deg_max}")
        # unknown columns in pivot order: y_j (degree k+1+e), energy (k), F_j (d<k)
        plan = [("y", e, k + 1 + e) for e in range(j + 1, -1, -2)]
        if even:
            plan.append(("E", 0, k))
        plan += [("F", d, d) for d in range(k - 1, -1, -1) if (d - (k + j)) % 2 == 0]

        # the relation is linear in the unknowns: base + sum(value * column)
        F0p = _pder(F0)
        W0, z0 = self.W[0], self.Z[0]
        res = base
        for kind, idx, power in plan:
            u = _mono(idx, 1)
            if kind == "y":
                col = _padd(_pscale(_pmul(F0p, u), 2),
                            _pmul(F0, _padd(_pder(u), _pscale(_pmul(y0, u), 2))))
            elif kind == "E":
                col = _pscale(F0, -self.energy_coupling)
            else:
                col = _padd(_padd(_pder(_pder(u)), _pscale(_pmul(_pder(u), y0), 2)),
                            _padd(_pmul(u, z0), _pscale(_pmul(W0, u), -1)))
            pivot = _coef(col, power)
            if pivot == 0:
                raise SingularSystemError(f"order {j}: zero pivot at x^{power}", power)
            value = -_coef(res, power) / pivot
            if kind == "y":
                y_j[idx] += value
            elif kind == "E":
                energy += value
            else:
                F_j[idx] += value
            res = _padd(res, _pscale(col, value))

        z_j = _padd(_padd(_pder(y_j), _pscale(_pmul(y0, y_j), 2)), zk)
        W = list(W_j)
        if even:
            W[0] += self.energy_coupling * energy
            self.E.append(energy)
        self.y.append(y_j)
        self.F.append(F_j)
        self.Z.append(z_j)
        self.W.append(W)

    def _record(self, j):
        wc = self.wc
        y = [_to_mpf(c) for c in self.y[j]]
        if j % 2 == 0:
            wc.D.append(y)
        else:
            wc.C.append(y)
        wc.A.append([_to_mpf(c) for c in self.F[j][: self.k]])

    def run(self, n_corrections: int):
        """Climb until ``E^(n_corrections)`` is known."""
        while len(self.E) < n_corrections + 2:
            self.solve_next()
        return self

    @property
    def energies(self) -> list:
        return [_to_mpf(e) for e in self.E]

    def series(self, n_corrections: int) -> EnergySeries:
        prob = self.pt.problem
        return EnergySeries(
            E_coeffs=self.energies[: n_corrections + 2],
            lbar=self.pt.lbar,
            Q=self.pt.Q,
            k=self.k,
            ell=prob.quantum_ell,
            kappa=prob.kappa,
            n_corrections=n_corrections,
            point=self.pt,
            residuals=list(self.residuals),
        )

    def relation_residual(self, j) -> mpf:
        """Largest coefficient of the order-j relation after solving."""
        with self._context():
            res = self._relation(j, self.W[j], self.F[j], self.y[j], self.Z[j])
            return _to_mpf(max((abs(c) for c in res), default=0))


def solve_order(pt: ExpansionPoint, wc: WaveCoefficients | None, series: EnergySeries | None,
                order_index: int, hierarchy: Hierarchy | None = None) -> Hierarchy:
    """Advance a hierarchy until ``order_index`` (a power of ``t``) is solved."""
    h = hierarchy or Hierarchy(pt)
    while h.order < order_index:
        h.solve_next()
    return h


def energy_corrections(prob: EffectiveProblem, k: int, N: int = DEFAULT_CORRECTIONS,
                       branch: int = 1, order_max: int | None = None) -> EnergySeries:
    """Energy series ``E^(-1)..E^(N)`` for radial state ``k`` of ``prob``."""
    if N < 1:
        raise DomainError("N must be at least 1")
    needed = 2 * N + 2
    order_max = max(order_max or 0, needed)
    try:
        pt = solve_expansion_point(prob, k, order_max=order_max, branch=branch)
        h = Hierarchy(pt).run(N)
    except PsletError as exc:
        raise type(exc)(*_with_state(exc, k, prob)) from exc
    return h.series(N)


def _with_state(exc, k, prob):
    msg = f"[k={k}, l={prob.quantum_ell}, kappa={prob.kappa}] {exc.args[0] if exc.args else exc}"
    if isinstance(exc, SingularSystemError):
        return (msg, exc.power)
    return (msg,) + tuple(exc.args[1:]) if hasattr(exc, "roots") else (msg,)
