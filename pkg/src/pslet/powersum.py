"""Finite sums of real-power monomials, ``sum_i c_i r**s_i``.

Every potential handled by the solver (Coulomb, linear, harmonic, power law)
and every function derived from one (the spin-orbit term, the effective
potential) stays inside this set under differentiation and multiplication.
Keeping them symbolic gives exact Taylor coefficients at any order.

Coefficients are held as :class:`fractions.Fraction` whenever the input is
exact (ints, decimal strings, floats via their shortest repr) and as
``mpmath.mpf`` otherwise.  Exponents are always rational.
"""
from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator

import mpmath
from mpmath import mpf

from .errors import DomainError

__all__ = [
    "PowerSum",
    "exact",
    "to_mpf",
    "ps_eval",
    "ps_derivative",
    "ps_product",
    "ps_taylor",
]


def exact(value):
    """Normalise a scalar to ``Fraction`` when that loses nothing, else ``mpf``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise DomainError(f"non-finite coefficient {value!r}")
        return Fraction(repr(value))
    if isinstance(value, (str, Decimal)):
        return Fraction(str(value).strip())
    if isinstance(value, mpmath.mpf):
        return value
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


def _exponent(value) -> Fraction:
    value = exact(value)
    if not isinstance(value, Fraction):
        raise DomainError("exponents must be rational (give them as decimals or fractions)")
    return value


def to_mpf(value) -> mpf:
    """Convert an exact or mpf scalar to ``mpf`` at the current working precision."""
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    return mpf(value)


def _is_zero(c) -> bool:
    return c == 0


def _power(r: mpf, s: Fraction) -> mpf:
    if s.denominator == 1:
        return r ** int(s)
    return mpmath.root(r, s.denominator) ** s.numerator


def _falling(s: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= s - i
    return out


def _binomial(s: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out = out * (s - i) / (i + 1)
    return out


class PowerSum:
    """Immutable canonical sum of monomials ``c * r**s``.

    Parameters
    ----------
    terms :
        Iterable of ``(coeff, power)`` pairs.  Equal powers are merged and
        zero coefficients dropped, so two constructions of the same function
        compare equal.

    Examples
    --------
    >>> p = PowerSum([(-2, -1), (1, 0)])
    >>> p.derivative(2)
    PowerSum([(-4, -3)])
    """

    __slots__ = ("_terms", "_mp")

    def __init__(self, terms: Iterable[tuple] = ()):
        merged: dict[Fraction, object] = {}
        for coeff, power in terms:
            s = _exponent(power)
            c = exact(coeff)
            merged[s] = merged[s] + c if s in merged else c
        self._terms = tuple(
            (merged[s], s) for s in sorted(merged) if not _is_zero(merged[s])
        )
        self._mp = (None, ())

    def mp_terms(self) -> tuple:
        """Coefficients converted to ``mpf`` at the current precision (cached)."""
        prec = mpmath.mp.prec
        if self._mp[0] != prec:
            self._mp = (prec, tuple((to_mpf(c), s) for c, s in self._terms))
        return self._mp[1]

    @classmethod
    def monomial(cls, coeff, power) -> "PowerSum":
        return cls([(coeff, power)])

    @classmethod
    def constant(cls, coeff) -> "PowerSum":
        return cls([(coeff, 0)])

    @property
    def terms(self) -> tuple:
        """``((coeff, power), ...)`` sorted by increasing power."""
        return self._terms

    def powers(self) -> tuple:
        return tuple(s for _, s in self._terms)

    def coeff(self, power) -> object:
        """Coefficient of ``r**power`` (zero when absent)."""
        s = _exponent(power)
        for c, t in self._terms:
            if t == s:
                return c
        return Fraction(0)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        def fmt(x):
            if isinstance(x, Fraction):
                return str(x.numerator) if x.denominator == 1 else f"{x}"
            return mpmath.nstr(x, 20)

        body = ", ".join(f"({fmt(c)}, {fmt(s)})" for c, s in self._terms)
        return f"PowerSum([{body}])"

    def __neg__(self) -> "PowerSum":
        return PowerSum((-c, s) for c, s in self._terms)

    def __add__(self, other) -> "PowerSum":
        if not isinstance(other, PowerSum):
            other = PowerSum.constant(other)
        return PowerSum(self._terms + other._terms)

    __radd__ = __add__

    def __sub__(self, other) -> "PowerSum":
        if not isinstance(other, PowerSum):
            other = PowerSum.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "PowerSum":
        return (-self) + other

    def __mul__(self, other) -> "PowerSum":
        if isinstance(other, PowerSum):
            return PowerSum(
                (c1 * c2, s1 + s2) for c1, s1 in self._terms for c2, s2 in other._terms
            )
        k = exact(other)
        return PowerSum((c * k, s) for c, s in self._terms)

    __rmul__ = __mul__

    def __call__(self, r) -> mpf:
        return ps_eval(self, r)

    def derivative(self, order: int = 1) -> "PowerSum":
        return ps_derivative(self, order)

    def taylor(self, r0, n_max: int) -> list:
        return ps_taylor(self, r0, n_max)

    def shift_power(self, delta) -> "PowerSum":
        """Multiply by ``r**delta``."""
        d = _exponent(delta)
        return PowerSum((c, s + d) for c, s in self._terms)


def _positive(r, what: str = "r") -> mpf:
    r = to_mpf(exact(r)) if not isinstance(r, mpf) else r
    if not r > 0:
        raise DomainError(f"{what} must be positive, got {r}")
    return r


def ps_eval(p: PowerSum, r) -> mpf:
    """Evaluate ``p`` at ``r > 0`` in working precision."""
    r = _positive(r)
    total = mpf(0)
    for c, s in p.mp_terms():
        total += c * _power(r, s)
    return total


def ps_derivative(p: PowerSum, order: int = 1) -> PowerSum:
    if order < 0:
        raise DomainError("derivative order must be non-negative")
    if order == 0:
        return p
    return PowerSum((c * _falling(s, order), s - order) for c, s in p.terms)


def ps_product(p: PowerSum, q: PowerSum) -> PowerSum:
    return p * q


def ps_taylor(p: PowerSum, r0, n_max: int) -> list:
    """Scaled Taylor coefficients ``p^(n)(r0) * r0**n / n!`` for ``n = 0..n_max``.

    For a monomial this is ``c * binom(s, n) * r0**s``, which is what is
    summed here; no derivative PowerSums are materialised.
    """
    r0 = _positive(r0, "r0")
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    scaled = [(c * _power(r0, s), s) for c, s in p.mp_terms()]
    out = []
    for n in range(n_max + 1):
        out.append(mpmath.fsum(v * to_mpf(_binomial(s, n)) for v, s in scaled))
    return out
