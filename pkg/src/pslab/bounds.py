"""The quantitative inequalities: b_q weights, the two structure checks,
and the assembled constants.

The weight attached to a prime q is

    b_q = (pi/4) * (M_q / m_q^2) * mu(q),

with m_q the certified infimum of mu over primes >= q and M_q the matching
upper envelope. Summing b_q * f(q) contributions over small primes and
switching to envelopes at 23 produces the two constants C1 and C2 whose
combination bounds f on any primitive set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence

from scipy.integrate import quad

from .consts import E_GAMMA, M_BIG, PI_OVER_4
from .errors import DomainError, IntegrityError, PreconditionError
from .lsets import LRelation, c_set, c_spec, check_set, is_l_multiple, l_density, trichotomy
from .mertens import M_envelope, m_envelope, m_true, mu, r_ratio
from .primes import _dense_sieve, factorize
from .series import f_sum

_LOG2 = math.log(2.0)
_SLACK = 1e-12


@dataclass(frozen=True)
class BqEntry:
    q: int
    m_q: float
    M_q: float
    r_q: float
    b_q: float


@dataclass(frozen=True)
class ConstantsReport:
    C1: float
    C2: float
    inner_sum: float
    final_bound: float  # 2 * (C1 + C2)
    ess_const: float  # e^gamma * pi / 4


def b_value(q: float) -> float:
    if q <= 2:
        raise DomainError(f"b_q needs q > 2, got {q}")
    m = m_true(q)
    return PI_OVER_4 * M_envelope(q) * mu(q).value / (m * m)


def bq_entry(q: int) -> BqEntry:
    m = m_true(q)
    M = M_envelope(q)
    return BqEntry(q=q, m_q=m, M_q=M, r_q=M / m, b_q=b_value(q))


TABLE_QS = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def bq_table(qs: Sequence[int] = TABLE_QS) -> tuple:
    return tuple(bq_entry(int(q)) for q in qs)


def _euler_product(y: int) -> Fraction:
    """prod over primes p <= y of (1 - 1/p), exactly."""
    out = Fraction(1)
    for p in _dense_sieve(y):
        out *= Fraction(int(p) - 1, int(p))
    return out


_constants_cache: Optional[ConstantsReport] = None


def constants() -> ConstantsReport:
    """Assemble C1 (odd primes up to 23, grouped by the m-step they sit on)
    and C2 (the envelope regime past 23).

    The density masses are telescoped Euler products, kept rational until
    the final division by mu^2 values.
    """
    global _constants_cache
    if _constants_cache is not None:
        return _constants_cache
    # sum of d(L_p) over 2 < p <= 7, over 7 < p <= 19, and p = 23 alone
    mass_to_7 = _euler_product(2) - _euler_product(7)
    mass_to_19 = _euler_product(7) - _euler_product(19)
    mass_23 = Fraction(1, 23) * _euler_product(19)
    inner = (
        float(mass_to_7) / mu(7).value ** 2
        + float(mass_to_19) / mu(19).value ** 2
        + float(mass_23) / mu(23).value ** 2
    )
    c1 = PI_OVER_4 * M_BIG * E_GAMMA * inner
    c2 = PI_OVER_4 * M_BIG * E_GAMMA * float(_euler_product(23)) / mu(23).value ** 2
    _constants_cache = ConstantsReport(
        C1=c1,
        C2=c2,
        inner_sum=inner,
        final_bound=2.0 * (c1 + c2),
        ess_const=E_GAMMA * PI_OVER_4,
    )
    return _constants_cache


def total_fbound(k: Optional[float]) -> float:
    """Bound on f over a primitive set whose even part starts at 2^k.

    k = None is the all-odd case (the even contribution vanishes in the
    limit, leaving 2*(C1 + C2)); finite k must be >= 2.
    """
    c = constants()
    if k is None:
        return c.final_bound
    if k < 2:
        raise DomainError(f"k must be >= 2 (or None), got {k}")
    f_2k = 1.0 / (2.0**k * k * _LOG2)
    return f_2k + (2.0 - 2.0 ** (1.0 - k)) * c.C1 + 2.0 * c.C2


def _is_exact(x) -> bool:
    return isinstance(x, Rational)  # ints and Fractions, not floats


def mass_lemma_check(c: Sequence, d: Sequence, caps: Sequence) -> bool:
    """Abel-summation mass bound: with c non-increasing and nonnegative,
    and the partial sums of d dominated by caps, verify

        sum c_i * d_i  <=  sum c_i * (caps_i - caps_{i-1}),   caps_0 = 0.

    Hypothesis violations raise PreconditionError; the verdict proper is
    returned. Comparisons are exact when every input is rational.
    """
    k = len(c)
    if k == 0 or len(d) != k or len(caps) != k:
        raise PreconditionError(
            f"need equal nonzero lengths, got {k}/{len(d)}/{len(caps)}"
        )
    exact = all(_is_exact(x) for x in (*c, *d, *caps))
    if any(ci < 0 for ci in c):
        raise PreconditionError("weights must be nonnegative")
    if any(c[i] < c[i + 1] for i in range(k - 1)):
        raise PreconditionError("weights must be non-increasing")
    if any(di < 0 for di in d):
        raise PreconditionError("masses must be nonnegative")
    run = Fraction(0) if exact else 0.0
    for j in range(k):
        run = run + d[j]
        if run > caps[j]:
            raise PreconditionError(
                f"partial sum {run} exceeds cap {caps[j]} at position {j}"
            )
    lhs = sum(ci * di for ci, di in zip(c, d))
    prev = Fraction(0) if exact else 0.0
    rhs = type(lhs)(0)
    for ci, cap in zip(c, caps):
        rhs = rhs + ci * (cap - prev)
        prev = cap
    if exact:
        return lhs <= rhs
    return float(lhs) <= float(rhs) + _SLACK * max(1.0, abs(float(rhs)))


def pi4_partition_sum(vs: Sequence[float]) -> float:
    """sum of (sqrt(v_i) - sqrt(v_{i-1})) / (1 + v_{i-1}) over a partition
    of [0,1]; always at least pi/4, decreasing under refinement."""
    xs = [float(v) for v in vs]
    if len(xs) < 2 or xs[0] != 0.0 or xs[-1] != 1.0:
        raise DomainError("need a partition 0 = v_0 < ... < v_k = 1")
    if any(a >= b for a, b in zip(xs, xs[1:])):
        raise DomainError("partition points must be strictly increasing")
    return math.fsum(
        (math.sqrt(b) - math.sqrt(a)) / (1.0 + a) for a, b in zip(xs, xs[1:])
    )


def exponent_savings(theta: float) -> float:
    """Exploratory: the partition-sum limit for exponent theta instead of
    1/2, as the integral of 1/(1 + w^(1/theta)) over [0,1]. No correctness
    claim is attached; theta = 1/2 reproduces pi/4 and theta = 1 gives log 2.
    """
    if theta <= 0:
        raise DomainError(f"theta must be positive, got {theta}")
    val, _ = quad(lambda w: 1.0 / (1.0 + w ** (1.0 / theta)), 0.0, 1.0)
    return val


def is_deep(a: int, v: float) -> bool:
    # P(a)^(1+v) <= a, settled in integers when 1+v is integral
    p = factorize(a).big_prime
    w = 1.0 + v
    if float(int(w)) == w:
        return p ** int(w) <= a
    return p**w <= a


def deep_fsum_check(elements: Iterable[int], n: int, v: float) -> bool:
    """For an L-primitive family inside L_n, all of whose members a satisfy
    P(a)^(1+v) <= a, check

        f(A) <= (e^gamma / m_envelope(P(n))) * sum d(L_a) / (1+v).

    Hypothesis failures raise PreconditionError naming every offender.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if v <= 0:
        raise DomainError(f"v must be positive, got {v}")
    a_set = sorted(set(int(a) for a in elements))
    if not a_set:
        return True
    if n in a_set:
        raise PreconditionError(f"n = {n} must not belong to the family")
    if not check_set(a_set).l_primitive:
        raise PreconditionError("family is not L-primitive")
    offenders = []
    for a in a_set:
        if not is_l_multiple(a, n):
            offenders.append(f"{a} not in L_{n}")
        elif not is_deep(a, v):
            offenders.append(f"{a} too shallow: P^{{1+v}} > a")
    if offenders:
        raise PreconditionError("; ".join(offenders))
    q = factorize(n).big_prime
    mass = math.fsum(l_density(a).density_float for a in a_set)
    rhs = (E_GAMMA / m_envelope(q)) * mass / (1.0 + v)
    return f_sum(a_set) <= rhs + _SLACK * max(1.0, rhs)


def shallow_density_check(
    elements: Iterable[int], n: int, v: float, witness_bound: int = 10**6
) -> bool:
    """For a primitive family whose members inside L_n are all shallow
    (P(a)^(1+v) > a), check the density inequality

        sum over a in A∩L_n of d(L_a)  <=  sqrt(v) * r(P(n)) * d(L_n),

    and additionally search for overlap witnesses among the sets L_{a*c}
    for window-smooth c with a*c <= witness_bound; any overlap between
    them falsifies the disjointness the inequality's proof rests on, so a
    found witness returns False even if the numbers happen to line up.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if not (0.0 < v < 1.0):
        raise DomainError(f"v must lie in (0,1), got {v}")
    a_set = sorted(set(int(a) for a in elements))
    if n in a_set:
        raise PreconditionError(f"n = {n} must not belong to the family")
    if a_set and not check_set(a_set).primitive:
        raise PreconditionError("family is not primitive")
    members = [a for a in a_set if is_l_multiple(a, n)]
    offenders = [a for a in members if is_deep(a, v)]
    if offenders:
        raise PreconditionError(
            "too deep for the shallow hypothesis: " + ", ".join(map(str, offenders))
        )
    q = factorize(n).big_prime
    lhs = math.fsum(l_density(a).density_float for a in members)
    rhs = math.sqrt(v) * r_ratio(q) * l_density(n).density_float
    if lhs > rhs + _SLACK * max(1.0, rhs):
        return False
    # overlap witness search; members of L_n are composite (a prime in L_n
    # would equal n), so c_spec's composite precondition is safe
    products = []
    for a in members:
        cs = c_set(c_spec(a, v), witness_bound // a)
        products.extend(a * c for c in cs[:64])
    products.sort()
    for i, x in enumerate(products):
        for y in products[i + 1 :]:
            if trichotomy(x, y) is not LRelation.DISJOINT:
                return False
    return True


def double_ratio_check(q: float) -> bool:
    """Whether b_q exceeds log(q) / log(2q).

    Computed directly for q <= 47. Past 47 the answer is always False: b_q
    is below (pi/4) * (M / m(47))^2 while the threshold has risen past its
    value at 47; both sides of that envelope argument are re-verified at
    call time.
    """
    if q <= 2:
        raise DomainError(f"need q > 2, got {q}")
    threshold = math.log(q) / math.log(2 * q)
    if q <= 47:
        return b_value(q) > threshold
    cap = PI_OVER_4 * (M_BIG / m_true(47)) ** 2
    pivot = math.log(47) / math.log(94)
    if not (cap < pivot <= threshold):
        raise IntegrityError("envelope argument for large q fell through")
    return False
