"""Multiple-sets L_a, their densities, and the smooth-number machinery.

For an integer a >= 2 with largest prime factor P(a),

    L_a = { b*a : every prime of b is >= P(a) },

so a in L_a always (b = 1). These sets tile the integers in a way that
makes them the right coordinate system for primitive sets: two of them are
nested or disjoint, never partially overlapping, and L_a has logarithmic
density d(L_a) = (1/a) * prod_{p < P(a)} (1 - 1/p).

Densities are kept as exact rationals while the prime product is small
(P(a) <= 200) and as floats with a flag beyond that.
"""
from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .consts import E_GAMMA, GAMMA
from .errors import BoundaryAmbiguityError, DomainError, IntegrityError, PreconditionError
from .primes import Factorization, _dense_sieve, factorize

_EXACT_P_LIMIT = 200  # keep densities rational while prod runs over p < this


def is_l_multiple(b: int, a: int) -> bool:
    """True iff b lies in L_a."""
    if a < 2:
        raise DomainError(f"L_a needs a >= 2, got {a}")
    if b < 1:
        raise DomainError(f"b must be positive, got {b}")
    if b % a:
        return False
    q = b // a
    if q == 1:
        return True
    return factorize(q).small_prime >= factorize(a).big_prime


@dataclass(frozen=True)
class LSetDescriptor:
    a: int
    fact: Factorization
    density_exact: Optional[Fraction]  # None when P(a) > _EXACT_P_LIMIT
    density_float: float


def l_density(a: int) -> LSetDescriptor:
    if a < 2:
        raise DomainError(f"L_a needs a >= 2, got {a}")
    fact = factorize(a)
    big = fact.big_prime
    if big <= _EXACT_P_LIMIT:
        dens = Fraction(1, a)
        for p in _dense_sieve(big - 1):
            dens *= Fraction(int(p) - 1, int(p))
        return LSetDescriptor(a, fact, dens, float(dens))
    log_d = -math.log(a) + math.fsum(
        math.log1p(-1.0 / int(p)) for p in _dense_sieve(big - 1)
    )
    return LSetDescriptor(a, fact, None, math.exp(log_d))


class LRelation(enum.Enum):
    DISJOINT = "Disjoint"
    FIRST_CONTAINS_SECOND = "FirstContainsSecond"
    SECOND_CONTAINS_FIRST = "SecondContainsFirst"
    EQUAL = "Equal"


def trichotomy(a: int, b: int) -> LRelation:
    """Relation between L_a and L_b: nested, equal, or disjoint; nothing else."""
    if a == b:
        return LRelation.EQUAL
    if is_l_multiple(b, a):
        return LRelation.FIRST_CONTAINS_SECOND
    if is_l_multiple(a, b):
        return LRelation.SECOND_CONTAINS_FIRST
    return LRelation.DISJOINT


@dataclass(frozen=True)
class CheckedSet:
    elements: tuple
    primitive: bool  # no element divides another
    l_primitive: bool  # no element is an L-multiple of another


def check_set(elements: Iterable[int]) -> CheckedSet:
    xs = sorted(set(int(x) for x in elements))
    if xs and xs[0] < 2:
        raise DomainError(f"set elements must be >= 2, got {xs[0]}")
    primitive = True
    l_primitive = True
    for i, small in enumerate(xs):
        for big in xs[i + 1 :]:
            if big % small == 0:
                primitive = False
                if is_l_multiple(big, small):
                    l_primitive = False
                    break
        if not l_primitive:
            break
    return CheckedSet(tuple(xs), primitive, l_primitive)


def generating_set(elements: Iterable[int]) -> tuple:
    """The elements not lying in L_t of any smaller element t.

    Every member of the input then lands in exactly one L_g over the
    returned g; that is the partition the density bookkeeping runs on.
    """
    xs = sorted(set(int(x) for x in elements))
    if xs and xs[0] < 2:
        raise DomainError(f"set elements must be >= 2, got {xs[0]}")
    gens: list[int] = []
    for x in xs:
        if not any(is_l_multiple(x, g) for g in gens):
            gens.append(x)
    return tuple(gens)


# --- the smooth window sets C_a^v ------------------------------------------

_WINDOW_PRIME_LIMIT = 10**7
_CSET_SIZE_LIMIT = 10**7
_BOUNDARY_REL = 1e-12


@dataclass(frozen=True)
class CSetSpec:
    a: int
    v: float
    window: tuple  # the primes in [P(a*), P(a*)^(1/sqrt(v)))


def _window_primes(lo: int, v: float) -> tuple:
    """Primes in [lo, lo^(1/sqrt(v))), resolving the upper edge exactly
    when sqrt(v) is rational with a small denominator."""
    fr = Fraction(v)
    sn, sd = math.isqrt(fr.numerator), math.isqrt(fr.denominator)
    exact = fr.denominator <= 64 and sn * sn == fr.numerator and sd * sd == fr.denominator
    if exact:
        # p < lo^(sd/sn)  <=>  p^sn < lo^sd, settled in integers
        hi_est = lo ** (sd / sn)
        if hi_est > _WINDOW_PRIME_LIMIT:
            raise DomainError(f"window [{lo}, {hi_est:.3g}) too wide to enumerate")
        cand = _dense_sieve(int(hi_est) + 1)
        return tuple(int(p) for p in cand if p >= lo and p**sn < lo**sd)
    s = math.sqrt(v)
    ll = math.log(lo)
    hi_est = math.exp(ll / s)
    if hi_est > _WINDOW_PRIME_LIMIT:
        raise DomainError(f"window [{lo}, {hi_est:.3g}) too wide to enumerate")
    out = []
    for p in _dense_sieve(int(hi_est) + 2):
        p = int(p)
        if p < lo:
            continue
        lhs = s * math.log(p)
        if abs(lhs - ll) <= _BOUNDARY_REL * max(ll, 1.0):
            raise BoundaryAmbiguityError(
                f"prime {p} sits within rounding of the window edge lo^(1/sqrt(v)) "
                f"for lo={lo}, v={v!r}"
            )
        if lhs < ll:
            out.append(p)
    return tuple(out)


def c_spec(a: int, v: float) -> CSetSpec:
    """Window spec for the smooth sets attached to a: primes in
    [P(a*), P(a*)^(1/sqrt(v))) where a* is a without its largest prime."""
    if not (0.0 < v < 1.0):
        raise DomainError(f"v must lie in (0,1), got {v}")
    if a < 2:
        raise DomainError(f"a must be >= 2, got {a}")
    fact = factorize(a)
    if fact.omega < 2:
        raise PreconditionError(f"a must be composite, got the prime {a}")
    lo = factorize(fact.star).big_prime
    return CSetSpec(a=a, v=float(v), window=_window_primes(lo, v))


def c_set(spec: CSetSpec, bound: int) -> list:
    """All integers <= bound built only from the window primes, ascending.

    1 is always included (empty product). Enumeration is a min-heap walk,
    so output order is ascending without a sort.
    """
    if bound < 1:
        raise DomainError(f"bound must be >= 1, got {bound}")
    ws = spec.window
    out: list[int] = []
    heap: list[tuple[int, int]] = [(1, 0)]
    while heap:
        c, i = heapq.heappop(heap)
        out.append(c)
        if len(out) > _CSET_SIZE_LIMIT:
            raise DomainError("smooth-set enumeration exceeded the size guard")
        for j in range(i, len(ws)):
            nxt = c * ws[j]
            if nxt <= bound:
                heapq.heappush(heap, (nxt, j))
    return out


def c_set_harmonic(spec: CSetSpec) -> Fraction:
    """Exact value of the full harmonic sum over the (infinite) smooth set:
    prod over window primes of (1 - 1/p)^(-1)."""
    h = Fraction(1)
    for p in spec.window:
        h *= Fraction(p, p - 1)
    return h


# --- shallow prefixes: D_v(n) and beta(n) ----------------------------------


def d_v_set(n: int, v: float) -> tuple:
    """Primes p of n whose lower part (prime powers of n below p) is <= p^v."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if v <= 0:
        raise DomainError(f"v must be positive, got {v}")
    fact = factorize(n)
    iv = int(v)
    exact = float(iv) == float(v)
    below = 1
    out = []
    for p, e in fact.factors:
        ok = below <= p**iv if exact else below <= p**v
        if ok:
            out.append(p)
        below *= p**e
    if not out:
        raise IntegrityError(f"qualifying-prime set empty for n={n}; cannot happen")
    return tuple(out)


def beta(n: int, v: float) -> int:
    """Largest qualifying prime of n times everything of n below it.

    The quotient n/beta carries only primes >= that largest qualifying
    prime, so n is always an L-multiple of beta; checked before returning.
    """
    top = d_v_set(n, v)[-1]
    b = top
    for p, e in factorize(n).factors:
        if p >= top:
            break
        b *= p**e
    if not is_l_multiple(n, b):
        raise IntegrityError(f"beta({n}, {v}) = {b} is not an L-divisor")
    return b


# --- Dickman's function -----------------------------------------------------

# rho solves x*rho'(x) = -rho(x-1) with rho = 1 on [0,1]. We integrate the
# cumulative form F(x) = int_0^x rho via a 2-step implicit Adams-Moulton
# scheme on a fixed grid; rho(x) = (F(x) - F(x-1))/x closes the system.
# The first step past the x = 1 kink is a trapezoid step: starting the
# multistep scheme across the kink would freeze an O(h^2) error into
# everything after it.
_RHO_H = 5e-4
_RHO_XMAX = 20.0
_rho_grid: Optional[tuple[np.ndarray, np.ndarray]] = None


def _build_rho_grid(h: float = _RHO_H, xmax: float = _RHO_XMAX):
    m = round(1.0 / h)
    steps = round(xmax / h)
    rho = np.ones(steps + 1)
    F = np.arange(steps + 1) * h
    rho_1ph = (1.0 - h / 2.0) / (1.0 + h / 2.0)
    rho[m + 1] = rho_1ph
    F[m + 1] = F[m] + 0.5 * h * (1.0 + rho_1ph)
    for i in range(m + 2, steps + 1):
        x = i * h
        j = i - m
        num = F[i - 1] + (h / 12.0) * (8.0 * rho[i - 1] - rho[i - 2]) - F[j]
        r = num / (x - 5.0 * h / 12.0)
        r = min(max(r, 0.0), rho[i - 1])
        rho[i] = r
        F[i] = F[i - 1] + (h / 12.0) * (5.0 * r + 8.0 * rho[i - 1] - rho[i - 2])
    return rho, F


def _grid():
    global _rho_grid
    if _rho_grid is None:
        _rho_grid = _build_rho_grid()
    return _rho_grid


def _interp_cubic(arr: np.ndarray, x: float, left_wall: int) -> float:
    # 4-point Lagrange stencil, never reaching below left_wall (the kink)
    h = _RHO_H
    i = int(x / h)
    lo = min(max(i - 1, left_wall), len(arr) - 4)
    xs = (np.arange(lo, lo + 4)) * h
    ys = arr[lo : lo + 4]
    total = 0.0
    for k in range(4):
        term = float(ys[k])
        for j in range(4):
            if j != k:
                term *= (x - xs[j]) / (xs[k] - xs[j])
        total += term
    return total


def dickman_rho(x: float) -> float:
    if x < 0:
        raise DomainError(f"rho needs x >= 0, got {x}")
    if x <= 1.0:
        return 1.0
    if x >= _RHO_XMAX:
        return 0.0
    rho, _ = _grid()
    m = round(1.0 / _RHO_H)
    return _interp_cubic(rho, x, m)


def dickman_integral(x: float) -> float:
    """int_0^x rho; for x past the grid end the missing tail is below 1e-28."""
    if x < 0:
        raise DomainError(f"integral needs x >= 0, got {x}")
    if x <= 1.0:
        return x
    rho, F = _grid()
    if x >= _RHO_XMAX:
        return float(F[-1])
    m = round(1.0 / _RHO_H)
    return _interp_cubic(F, x, m)


@dataclass(frozen=True)
class DickmanStat:
    mean: float  # sample mean of |D_v(n)| / log log n
    theory: float  # e^(-gamma) * int_0^v rho
    count: int


def dickman_statistic(sample: Sequence[int], v: float) -> DickmanStat:
    """Average count of qualifying primes against its slow-growth limit.

    The limit is only approached at loglog speed, so for any feasible
    sample the mean sits measurably above the theory value; both numbers
    are reported rather than folded into a verdict.
    """
    if v <= 0:
        raise DomainError(f"v must be positive, got {v}")
    xs = [int(n) for n in sample]
    if not xs:
        raise DomainError("sample is empty")
    if min(xs) < 16:
        raise DomainError("sample integers must be >= 16")
    vals = [len(d_v_set(n, v)) / math.log(math.log(n)) for n in xs]
    theory = math.exp(-GAMMA) * dickman_integral(v)
    return DickmanStat(mean=math.fsum(vals) / len(vals), theory=theory, count=len(xs))
