"""Prime zeta function, reciprocal log-weighted sums, and the crossing point.

The central quantity is f(S) = sum over a in S of 1/(a log a). For the full
set of primes this is evaluated to ~1e-10 by splitting at a cutoff X:
everything below X is summed directly, and the tail uses

    1/(p log p) = integral_1^inf p^(-t) dt,

so the tail equals the integral of the prime zeta function with the first
pi(X) prime powers removed. The prime zeta function itself comes from the
Moebius-weighted log-zeta expansion, with zeta done by Euler-Maclaurin.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, IntegrityError
from .primes import _dense_sieve, omega_sieve, sieve_primes


@dataclass(frozen=True)
class SeriesValue:
    value: float
    tail_bound: float  # bound on the truncated remainder; inf = not bounded here
    terms_used: int


def f_sum(elements: Iterable[int]) -> float:
    """sum of 1/(a log a) over the given integers, each >= 2."""
    vals = sorted(set(int(a) for a in elements))
    if vals and vals[0] < 2:
        raise DomainError(f"f_sum needs elements >= 2, got {vals[0]}")
    return math.fsum(1.0 / (a * math.log(a)) for a in vals)


def f_t_sum(elements: Iterable[int], t: float) -> float:
    """Power sum: total of a^(-t) over the given integers, each >= 2."""
    vals = sorted(set(int(a) for a in elements))
    if vals and vals[0] < 2:
        raise DomainError(f"f_t_sum needs elements >= 2, got {vals[0]}")
    return math.fsum(a ** (-t) for a in vals)


# Euler-Maclaurin tail weights: B_{2j} / (2j)! for j = 1..8. Eight terms at
# N = 50 keeps the remainder far below double rounding for every s > 1.
_EM_N = 50
_BERN = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
)
_BERN_W = tuple(float(b) / math.factorial(2 * j) for j, b in enumerate(_BERN, start=1))


def zeta_minus_1(s: float, big_n: int = _EM_N) -> float:
    """zeta(s) - 1 with full relative accuracy even when it underflows 1.

    Summing from n = 2 keeps the tiny values (s large) honest instead of
    being swallowed by the leading 1.
    """
    if s <= 1:
        raise DomainError(f"zeta needs s > 1, got {s}")
    tot = math.fsum(n ** (-s) for n in range(2, big_n))
    tot += 0.5 * big_n ** (-s) + big_n ** (1.0 - s) / (s - 1.0)
    corr = 0.0
    fac = s
    for j, w in enumerate(_BERN_W, start=1):
        corr += w * fac * big_n ** (-s - 2 * j + 1)
        fac *= (s + 2 * j - 1) * (s + 2 * j)
    return tot + corr


def _mobius_upto(n: int) -> np.ndarray:
    mob = np.ones(n + 1, dtype=np.int64)
    for p in _dense_sieve(n):
        p = int(p)
        mob[p::p] *= -1
        mob[p * p :: p * p] = 0
    return mob


_PZ_CUT = 1e-30  # drop Moebius terms once zeta(ks) - 1 falls below this


def prime_zeta(s: float) -> SeriesValue:
    """P(s) = sum over primes of p^(-s), for s > 1."""
    if s <= 1:
        raise DomainError(f"prime_zeta needs s > 1, got {s}")
    mob = _mobius_upto(max(8, int(110.0 / s) + 2))
    terms = []
    k = 1
    while True:
        zm1 = zeta_minus_1(k * s)
        if k > 1 and zm1 < _PZ_CUT:
            break
        if k >= len(mob):
            raise IntegrityError("prime zeta truncation never triggered")
        if mob[k]:
            terms.append(int(mob[k]) / k * math.log1p(zm1))
        k += 1
    # remaining terms are each below zeta(ks)-1, geometrically decaying
    return SeriesValue(value=math.fsum(terms), tail_bound=4.0 * zm1, terms_used=len(terms))


def semiprime_power_sum(t: float) -> SeriesValue:
    """Power sum a^(-t) over numbers with exactly two prime factors.

    Splitting p*q by whether p = q gives (P(t)^2 + P(2t)) / 2 exactly.
    """
    a = prime_zeta(t)
    b = prime_zeta(2 * t)
    return SeriesValue(
        value=0.5 * (a.value**2 + b.value),
        tail_bound=a.tail_bound * (a.value + 1.0) + b.tail_bound,
        terms_used=a.terms_used + b.terms_used,
    )


def solve_tau(tol: float = 1e-12) -> SeriesValue:
    """The t where the prime power sum equals the semiprime power sum.

    Solves P(t) - 1 = sqrt(1 - P(2t)) by bisection; the two sides cross
    exactly where P(t) = (P(t)^2 + P(2t)) / 2 with P(t) < 2.
    """
    if not (0.0 < tol <= 0.1):
        raise DomainError(f"tol out of range: {tol}")

    def g(t: float) -> float:
        inner = 1.0 - prime_zeta(2 * t).value
        if inner < 0.0:
            raise IntegrityError(f"semiprime branch left its domain at t={t}")
        return prime_zeta(t).value - 1.0 - math.sqrt(inner)

    lo, hi = 1.01, 2.0
    if not (g(lo) > 0.0 > g(hi)):
        raise IntegrityError("bisection bracket does not straddle the crossing")
    iters = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        iters += 1
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return SeriesValue(value=0.5 * (lo + hi), tail_bound=0.5 * (hi - lo), terms_used=iters)


_ACHIEVABLE_TOL = 1e-10


def f_prime_total(tol: float = 1e-6, cutoff: int = 10**6) -> SeriesValue:
    """f over all primes: direct sum to cutoff plus the integrated zeta tail.

    The tail integral substitutes t = 1 + e^(-u) near the endpoint so the
    logarithmic spike at t = 1 integrates without adaptive thrashing.
    """
    if tol < _ACHIEVABLE_TOL:
        raise DomainError(
            f"tolerance {tol:g} below what this method certifies ({_ACHIEVABLE_TOL:g})"
        )
    if cutoff < 100:
        raise DomainError(f"cutoff too small to be useful: {cutoff}")
    ps = sieve_primes(cutoff).primes()
    logs = np.log(ps.astype(np.float64))
    partial = math.fsum(1.0 / (p * lp) for p, lp in zip(ps.tolist(), logs.tolist()))

    def removed(t: float) -> float:
        # prime zeta with the primes <= cutoff subtracted
        return prime_zeta(t).value - float(np.exp(-t * logs).sum())

    def near_one(u: float) -> float:
        e = math.exp(-u)
        if 1.0 + e == 1.0:
            # e underflowed against 1; the lost mass is ~35*e < 1e-14
            return 0.0
        return removed(1.0 + e) * e

    i1, e1 = quad(near_one, 0.0, 40.0, limit=200)
    i2, e2 = quad(removed, 2.0, 40.0, limit=200)
    # beyond t = 40 the integrand is under cutoff^(1-t)/(t-1)
    analytic = cutoff ** (1.0 - 40.0) / 39.0
    value = partial + i1 + i2
    tail = max(_ACHIEVABLE_TOL, e1 + e2 + analytic)
    if tail > tol:
        raise DomainError(f"requested {tol:g} but integration certifies only {tail:g}")
    return SeriesValue(value=value, tail_bound=tail, terms_used=len(ps))


def f_nk_partial(k: int, bound: int) -> SeriesValue:
    """f restricted to n <= bound with exactly k prime factors (with multiplicity).

    The infinite-tail remainder is not estimated here, so tail_bound is
    always inf; the value is an exact partial sum.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if bound < 2:
        raise DomainError(f"bound must be >= 2, got {bound}")
    if bound < 2**k:
        warnings.warn(
            f"no integer <= {bound} has {k} prime factors (smallest is {2**k})",
            stacklevel=2,
        )
        return SeriesValue(value=0.0, tail_bound=math.inf, terms_used=0)
    om = omega_sieve(bound)
    ns = np.flatnonzero(om == k).astype(np.float64)
    vals = 1.0 / (ns * np.log(ns))
    return SeriesValue(value=math.fsum(vals.tolist()), tail_bound=math.inf, terms_used=len(ns))
