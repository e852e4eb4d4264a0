"""Euler splines, their normalizations, and the attached sharp constants.

The 2-periodic spline e_n restricts to the Euler polynomial E_n on (0, 1) and
satisfies e_n(x+1) = -e_n(x).  Derived objects:

* r_n = sup |e_n|, s_n = r_n / n!  (exact rationals),
* the Favard constants K_n = pi^n s_n,
* the normalized spline EE_n(x) = e_n(x + eps_n)/e_n(eps_n) with EE_n(0) = 1,
* the unit-class comparison spline q_n(x) = EE_n(x * s_n^(1/n)).

Raising exact rationals to fractional powers is done once, in double
precision, via exp/log of the integer numerator and denominator; it is the
only inexact step in this module.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .exactnum import (
    Poly,
    _bernoulli_unchecked,
    _check_index,
    euler_number,
    euler_poly,
)

Real = Union[Fraction, float, int]


@dataclass(frozen=True)
class EulerSplineTable:
    """Degree-n data: the piece polynomial E_n on [0,1] and its constants."""

    n: int
    piece: Poly
    r_n: Fraction
    s_n: Fraction
    epsilon_n: Fraction  # 0 for odd n, 1/2 for even n


def r_n(n: int) -> Fraction:
    """sup over the reals of |e_n|, by the closed form; always positive."""
    _check_index(n)
    sign = (-1) ** (n // 2)
    if n % 2 == 0:
        return sign * euler_number(n) / 2**n
    return sign * (2 ** (n + 2) - 2) * _bernoulli_unchecked(n + 1) / (n + 1)


def s_n(n: int) -> Fraction:
    """r_n / n!, the sup of |e_n| / n! = sup |e_n^(0)| in the unit class."""
    return r_n(n) / math.factorial(n)


@lru_cache(maxsize=None)
def table(n: int) -> EulerSplineTable:
    _check_index(n)
    eps = Fraction(0) if n % 2 else Fraction(1, 2)
    return EulerSplineTable(n=n, piece=euler_poly(n), r_n=r_n(n), s_n=s_n(n), epsilon_n=eps)


def e_n_exact(n: int, x: Fraction) -> Fraction:
    """Exact value of the 2-periodic spline e_n at rational x."""
    _check_index(n)
    x = Fraction(x)
    k = math.floor(x)
    u = x - k
    sign = -1 if k % 2 else 1
    if n == 0:
        if u == 0:
            return Fraction(0)  # normalized square wave vanishes at integers
        return Fraction(sign)
    return sign * euler_poly(n)(u)


def e_n(n: int, x: Real) -> float:
    """e_n(x): piece selection by floor parity, then polynomial evaluation."""
    if isinstance(x, (Fraction, int)):
        return float(e_n_exact(n, Fraction(x)))
    _check_index(n)
    k = math.floor(x)
    u = x - k
    sign = -1.0 if k % 2 else 1.0
    if n == 0:
        if u == 0.0:
            return 0.0
        return sign
    return sign * float(euler_poly(n).to_float()(u))


def _frac_pow(fr: Fraction, expo: float) -> float:
    """fr ** expo for positive fr, via exp/log on the exact integers."""
    if fr <= 0:
        raise ValueError("base must be positive")
    return math.exp((math.log(fr.numerator) - math.log(fr.denominator)) * expo)


def favard(n: int) -> float:
    """Favard constant K_n = pi^n * s_n."""
    return math.pi**n * float(s_n(n))


def favard_best_approx(n: int, m: int, omega: float) -> float:
    """Sharp distance (omega/2)^n r_n / (m^n n!) to trigonometric polynomials
    of degree < m, for the unit-Lipschitz periodic class of order n."""
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    return (omega / 2) ** n * float(r_n(n)) / (m**n * math.factorial(n))


def euler_spline(n: int, x: Real) -> float:
    """Normalized spline EE_n(x) = e_n(x + eps_n) / e_n(eps_n); EE_n(0) = 1."""
    if n < 1:
        raise ValueError("euler_spline needs n >= 1")
    t = table(n)
    eps = t.epsilon_n
    denom = e_n_exact(n, eps)
    if isinstance(x, (Fraction, int)):
        return float(e_n_exact(n, Fraction(x) + eps) / denom)
    return e_n(n, x + float(eps)) / float(denom)


def q_n_scale(n: int) -> float:
    """Time rescaling s_n^(1/n) that makes |q_n^(n)| = 1."""
    return _frac_pow(s_n(n), 1.0 / n)


def q_n(n: int, x: Real) -> float:
    """Unit-class extremal q_n(x) = EE_n(x * s_n^(1/n))."""
    if n < 2:
        raise ValueError("q_n needs n >= 2")
    return euler_spline(n, float(x) * q_n_scale(n))


def q_n_deriv_sup(n: int, k: int) -> float:
    """sup |q_n^(k)| = s_{n-k} / s_n^(1 - k/n)."""
    if n < 2 or not 0 <= k <= n:
        raise ValueError(f"need n >= 2 and 0 <= k <= n, got n={n}, k={k}")
    return float(s_n(n - k)) / _frac_pow(s_n(n), 1.0 - k / n)


def euler_spline_piecewise(n: int, x0: Fraction, x1: Fraction):
    """EE_n on [x0, x1] as an exact spline (knots where x + eps_n is an
    integer, one scaled Euler-polynomial piece in between)."""
    from .pwpoly import PiecewisePoly  # deferred: pwpoly does not import us

    if n < 1:
        raise ValueError("need n >= 1")
    x0, x1 = Fraction(x0), Fraction(x1)
    if not x0 < x1:
        raise ValueError("need x0 < x1")
    t = table(n)
    denom = e_n_exact(n, t.epsilon_n)
    piece_of = euler_poly(n)
    k_lo = math.floor(x0 + t.epsilon_n)
    k_hi = math.ceil(x1 + t.epsilon_n)
    knots = [x0]
    pieces = []
    for k in range(k_lo, k_hi):
        lo = Fraction(k) - t.epsilon_n
        hi = lo + 1
        if hi <= x0 or lo >= x1:
            continue
        sign = Fraction(-1 if k % 2 else 1)
        poly = piece_of.compose_affine(t.epsilon_n - k, Fraction(1)) * (sign / denom)
        pieces.append(poly)
        knots.append(min(hi, x1))
    return PiecewisePoly(knots, pieces, max(n, 1))


def q_n_piecewise(n: int, periods: int = 1):
    """q_n on [0, periods * 2 / s_n^(1/n)] as a spline (float knots)."""
    from .pwpoly import transform

    if n < 2:
        raise ValueError("q_n needs n >= 2")
    if periods < 1:
        raise ValueError("need periods >= 1")
    base = euler_spline_piecewise(n, Fraction(0), Fraction(2 * periods))
    return transform(base, mu=1.0, lam=q_n_scale(n))
