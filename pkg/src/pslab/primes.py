"""Prime generation and factorization substrate.

The sieve is segmented and oddness-compressed: bit i of the table stands for
the odd number 2i+1, so a table to 10^8 costs ~6 MB. Segments are a fixed
size regardless of worker count, and construction touches one segment at a
time, so memory stays O(segment) beyond the packed output.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .errors import DomainError, IntegrityError

# Odd numbers per construction segment. 2^20 odds = 1 MiB boolean scratch,
# sized for a typical L2 cache; must stay a multiple of 8 so segments pack
# to whole bytes.
DEFAULT_SEGMENT_ODDS = 1 << 20

PSLB_MAGIC = b"PSLB"
PSLB_VERSION = 1
_HEADER = struct.Struct("<4sIQ")  # magic, version u32, limit u64


def _dense_sieve(limit: int) -> np.ndarray:
    """Plain boolean sieve, used for base primes only (limit ~ sqrt(target))."""
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _odd_segment_mask(lo: int, n_odds: int, odd_base: np.ndarray) -> np.ndarray:
    """Composite-mark the odd values lo, lo+2, ..., lo+2(n_odds-1); lo odd >= 3."""
    mask = np.ones(n_odds, dtype=bool)
    hi = lo + 2 * n_odds
    for p in odd_base:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start < hi:
            mask[(start - lo) // 2 :: p] = False
    return mask


class PrimeTable:
    """Immutable primality table for 2..limit.

    Membership of odd n is bit (n-1)/2 of the packed stream (little bit
    order within each byte); 2 is handled separately. Safe to share across
    threads once built.
    """

    __slots__ = ("limit", "count", "_words")

    def __init__(self, limit: int, count: int, words: np.ndarray):
        self.limit = limit
        self.count = count
        self._words = words

    def membership(self, n: int) -> bool:
        if n > self.limit:
            raise DomainError(f"membership({n}) beyond table limit {self.limit}")
        if n < 2:
            return False
        if n == 2:
            return True
        if n % 2 == 0:
            return False
        i = (n - 1) // 2
        return bool((self._words[i >> 3] >> (i & 7)) & 1)

    __contains__ = membership

    def __iter__(self) -> Iterator[int]:
        if self.limit >= 2:
            yield 2
        block = 1 << 15  # bytes per unpacked block
        for b0 in range(0, len(self._words), block):
            bits = np.unpackbits(self._words[b0 : b0 + block], bitorder="little")
            base = b0 * 8
            for i in np.flatnonzero(bits):
                yield 2 * (base + int(i)) + 1

    def primes(self) -> np.ndarray:
        """All primes <= limit as an int64 array (materialized)."""
        bits = np.unpackbits(self._words, bitorder="little")
        odds = 2 * np.flatnonzero(bits).astype(np.int64) + 1
        return np.concatenate(([2], odds)) if self.limit >= 2 else odds

    # binary dump: header {magic "PSLB", version u32, limit u64}, then the
    # odd-only bitset as little-endian 64-bit words (bit i <-> 2i+1).
    def dump(self, path: str) -> None:
        pad = (-len(self._words)) % 8
        with open(path, "wb") as fh:
            fh.write(_HEADER.pack(PSLB_MAGIC, PSLB_VERSION, self.limit))
            fh.write(self._words.tobytes())
            if pad:
                fh.write(b"\x00" * pad)

    @classmethod
    def load(cls, path: str) -> "PrimeTable":
        with open(path, "rb") as fh:
            head = fh.read(_HEADER.size)
            if len(head) != _HEADER.size:
                raise IntegrityError("dump too short for header")
            magic, version, limit = _HEADER.unpack(head)
            if magic != PSLB_MAGIC:
                raise IntegrityError(f"bad magic {magic!r}")
            if version != PSLB_VERSION:
                raise IntegrityError(f"unsupported version {version}")
            body = fh.read()
        n_odds = (limit + 1) // 2
        nbytes = (n_odds + 7) // 8
        expect = nbytes + ((-nbytes) % 8)
        if len(body) != expect:
            raise IntegrityError(f"dump body {len(body)} bytes, expected {expect}")
        words = np.frombuffer(body[:nbytes], dtype=np.uint8).copy()
        bits = np.unpackbits(words, bitorder="little")
        if bits[0]:
            raise IntegrityError("bit for n=1 is set")
        if n_odds < len(bits) and bits[n_odds:].any():
            raise IntegrityError("padding bits are not zero")
        count = int(bits[:n_odds].sum()) + (1 if limit >= 2 else 0)
        return cls(limit, count, words)


def sieve_primes(limit: int, segment_odds: int = DEFAULT_SEGMENT_ODDS) -> PrimeTable:
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    if segment_odds % 8:
        raise DomainError("segment_odds must be a multiple of 8")
    odd_base = _dense_sieve(math.isqrt(limit))[1:]
    n_odds = (limit + 1) // 2
    chunks = []
    count = 1  # the prime 2
    for i0 in range(0, n_odds, segment_odds):
        n = min(segment_odds, n_odds - i0)
        mask = _odd_segment_mask(2 * i0 + 1 + (0 if i0 else 2), n - (0 if i0 else 1), odd_base)
        if i0 == 0:
            mask = np.concatenate(([False], mask))  # n = 1
        count += int(mask.sum())
        pad = (-len(mask)) % 8
        if pad:
            mask = np.concatenate((mask, np.zeros(pad, dtype=bool)))
        chunks.append(np.packbits(mask, bitorder="little"))
    return PrimeTable(limit, count, np.concatenate(chunks))


def iter_odd_prime_segments(
    limit: int, span: int, start_segment: int = 0
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (k, odd primes in [3 + k*span, 3 + (k+1)*span)) for fixed spans.

    The segment grid depends only on span, never on thread count or resume
    point; that is what makes the long scan's folds reproducible. span must
    be even so every boundary stays odd.
    """
    if span % 2 or span <= 0:
        raise DomainError("span must be positive and even")
    odd_base = _dense_sieve(math.isqrt(limit))[1:]
    k = start_segment
    while True:
        lo = 3 + k * span
        if lo > limit:
            return
        n_odds = (min(lo + span, limit + 1) - lo + 1) // 2
        if n_odds <= 0:
            return
        mask = _odd_segment_mask(lo, n_odds, odd_base)
        yield k, lo + 2 * np.flatnonzero(mask).astype(np.int64)
        k += 1


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple  # ((prime, exponent), ...) ascending
    big_prime: int  # largest prime factor
    small_prime: int  # smallest prime factor
    omega: int  # number of prime factors with multiplicity
    star: int  # n with one copy of its largest prime removed


_base_cache = _dense_sieve(1000)


def _base_primes_for(n: int) -> np.ndarray:
    global _base_cache
    root = math.isqrt(n)
    if _base_cache[-1] < root:
        _base_cache = _dense_sieve(max(root + 1, 2 * int(_base_cache[-1])))
    return _base_cache


def factorize(n: int) -> Factorization:
    if n < 2:
        raise DomainError(f"factorize requires n >= 2, got {n}")
    m = n
    factors = []
    for p in _base_primes_for(n):
        p = int(p)
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    if m > 1:
        factors.append((m, 1))
    omega = sum(e for _, e in factors)
    big = factors[-1][0]
    return Factorization(
        n=n,
        factors=tuple(factors),
        big_prime=big,
        small_prime=factors[0][0],
        omega=omega,
        star=n // big,
    )


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise DomainError(f"smallest_prime_factor requires n >= 2, got {n}")
    for p in _base_primes_for(n):
        p = int(p)
        if p * p > n:
            break
        if n % p == 0:
            return p
    return n


def spf_table(limit: int) -> np.ndarray:
    """spf[n] = smallest prime factor of n for 2 <= n <= limit; spf[0]=spf[1]=0."""
    if limit < 2:
        raise DomainError(f"spf_table limit must be >= 2, got {limit}")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            sl = spf[p::p]
            sl[sl == 0] = p
    rest = spf == 0
    rest[:2] = False
    idx = np.flatnonzero(rest)
    spf[idx] = idx
    return spf


def omega_sieve(limit: int) -> np.ndarray:
    """omega[n] = number of prime factors of n with multiplicity, one sieve pass.

    omega[0] and omega[1] are 0; entries for 2..limit are the real counts.
    """
    if limit < 2:
        raise DomainError(f"omega_sieve limit must be >= 2, got {limit}")
    om = np.zeros(limit + 1, dtype=np.uint8)
    prod = np.ones(limit + 1, dtype=np.int64)
    for p in _dense_sieve(math.isqrt(limit)):
        p = int(p)
        q = p
        while q <= limit:
            om[q::q] += 1
            prod[q::q] *= p
            q *= p
    # whatever is not reconstructed has exactly one prime factor > sqrt(limit)
    left = prod != np.arange(limit + 1, dtype=np.int64)
    left[:2] = False
    om[left] += 1
    return om
