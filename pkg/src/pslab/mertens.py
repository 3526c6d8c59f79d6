"""Mertens products, their certified envelopes, and the long prime scan.

Everything here revolves around

    mu(x) = e^gamma * log(x) * prod_{p < x} (1 - 1/p),

the product running over primes strictly below x. mu is computed in log
space with compensated summation, and every value carries a rounding
budget [lo, hi] so downstream inequality checks can be made robust to
floating error without hand-waving.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .accum import Neumaier
from .consts import EPS, GAMMA, M_BIG, M_MID_LIMIT, ROUNDING_BUDGET_K
from .errors import DomainError, IntegrityError
from .primes import _dense_sieve, _odd_segment_mask

# Fixed segment width (in integers) for the scan. The segment grid never
# moves, so folds and checkpoints are reproducible across runs and thread
# counts.
SCAN_SPAN = 16_000_000

CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class MuValue:
    x: float
    value: float
    lo: float  # certified-floor side of the rounding budget
    hi: float
    primes_used: int


def rs_lower(x: float) -> float:
    """1 - 1/(2 log^2 x); a true lower bound for mu only when x > 285."""
    return 1.0 - 1.0 / (2.0 * math.log(x) ** 2)


def rs_upper(x: float) -> float:
    return 1.0 + 1.0 / (2.0 * math.log(x) ** 2)


_prime_cache = _dense_sieve(10_000)


def _primes_below(x: float) -> np.ndarray:
    """All primes strictly less than x, ascending."""
    global _prime_cache
    if x > _prime_cache[-1] + 1:
        need = max(int(x) + 100, 2 * int(_prime_cache[-1]))
        _prime_cache = _dense_sieve(need)
    k = int(np.searchsorted(_prime_cache, x, side="left"))
    return _prime_cache[:k]


def _budget(value: float, terms: int) -> tuple[float, float]:
    rel = ROUNDING_BUDGET_K * EPS * (terms + 8)
    return value * (1.0 - rel), value * (1.0 + rel)


def mu(x: float) -> MuValue:
    if x <= 1:
        raise DomainError(f"mu requires x > 1, got {x}")
    ps = _primes_below(x)
    log_sum = math.fsum(math.log1p(-1.0 / int(p)) for p in ps)
    value = math.exp(GAMMA + math.log(math.log(x)) + log_sum)
    lo, hi = _budget(value, len(ps))
    return MuValue(x=float(x), value=value, lo=lo, hi=hi, primes_used=len(ps))


def mu_from_log_sum(x: float, log_sum: float, primes_used: int) -> MuValue:
    """mu at x given the already-accumulated sum of log(1 - 1/p), p < x."""
    if x <= 1:
        raise DomainError(f"mu requires x > 1, got {x}")
    value = math.exp(GAMMA + math.log(math.log(x)) + log_sum)
    lo, hi = _budget(value, primes_used)
    return MuValue(x=float(x), value=value, lo=lo, hi=hi, primes_used=primes_used)


# Forward minima of p -> mu(p): at each of these primes, mu is smaller than
# at every later prime, so inf_{p >= q} mu(p) is a step function through
# them. Verified exhaustively to 300 and by rs_lower beyond.
_BOLD_PRIMES = (7, 19, 23, 31, 47, 113, 199)
_bold_values: dict[int, float] = {}


def _bold(p: int) -> float:
    v = _bold_values.get(p)
    if v is None:
        v = mu(p).value
        _bold_values[p] = v
    return v


def m_true(q: float) -> float:
    """Certified value of inf over primes p >= q of mu(p).

    Exact (up to rounding budget) for q <= 199 via the forward-minima
    table; for q <= 300 a scan down to the analytic floor; beyond 300 the
    analytic floor itself.
    """
    if q < 2:
        raise DomainError(f"m_true requires q >= 2, got {q}")
    if q <= 199:
        for p in _BOLD_PRIMES:
            if q <= p:
                return _bold(p)
    if q <= 300:
        floor300 = rs_lower(300.0)
        best = floor300
        for p in _primes_below(301.0):
            if p >= q:
                best = min(best, mu(int(p)).value)
        return best
    return rs_lower(q)


def m_envelope(q: float) -> float:
    """Two-anchor lower envelope for inf_{p >= q} mu(p); coarser than m_true."""
    if q < 2:
        raise DomainError(f"m_envelope requires q >= 2, got {q}")
    if q <= 7:
        return _bold(7)
    if q <= 300:
        return _bold(19)
    return rs_lower(q)


def M_envelope(x: float) -> float:
    """Upper envelope for sup over y >= x of mu(y)."""
    if x <= 1:
        raise DomainError(f"M_envelope requires x > 1, got {x}")
    if x <= 2:
        return mu(2).value
    if x <= M_MID_LIMIT:
        return M_BIG
    return rs_upper(x)


def r_ratio(q: float) -> float:
    """Envelope oscillation ratio M/m at q; q = 2 is pinned to the q = 3 value."""
    if q < 2:
        raise DomainError(f"r_ratio requires q >= 2, got {q}")
    if q == 2:
        q = 3
    return M_envelope(q) / m_envelope(q)


@dataclass(frozen=True)
class ScanSample:
    index: int  # 1-based position among odd primes
    prime: int
    mu: float


@dataclass(frozen=True)
class ScanReport:
    prime_count: int
    last_prime: int
    min_mu: float
    min_at: int
    witnesses: tuple  # odd primes p with mu(p) >= 1 (expected empty)
    samples: tuple
    log_sum: float
    resumed: bool
    wall_time: float


def _checkpoint_payload(seg: int, last_prime: int, done: int, acc: Neumaier,
                        min_mu: float, min_at: int) -> dict:
    return {
        "version": CHECKPOINT_VERSION,
        "segment": seg,
        "last_prime": last_prime,
        "primes_done": done,
        "log_sum": acc.total,
        "compensation": acc.comp,
        "min_mu": min_mu,
        "min_at": min_at,
    }


def _write_checkpoint(path: str, payload: dict) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".muscan-")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_CKPT_KEYS = {"version", "segment", "last_prime", "primes_done", "log_sum",
              "compensation", "min_mu", "min_at"}


def _read_checkpoint(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise IntegrityError(f"unreadable checkpoint {path}: {exc}") from exc
    if not isinstance(data, dict) or set(data) != _CKPT_KEYS:
        raise IntegrityError(f"checkpoint {path} has wrong shape")
    if data["version"] != CHECKPOINT_VERSION:
        raise IntegrityError(f"checkpoint version {data['version']} unsupported")
    return data


def _nth_prime_bound(n: int) -> int:
    if n < 6:
        return 16
    ln = math.log(n)
    return int(n * (ln + math.log(ln))) + 10


def _segment_primes(k: int, odd_base: np.ndarray, limit: int) -> np.ndarray:
    lo = 3 + k * SCAN_SPAN
    n_odds = (min(lo + SCAN_SPAN, limit + 1) - lo + 1) // 2
    if n_odds <= 0:
        return np.empty(0, dtype=np.int64)
    mask = _odd_segment_mask(lo, n_odds, odd_base)
    return lo + 2 * np.flatnonzero(mask).astype(np.int64)


def mu_scan(
    prime_count: int,
    checkpoint: Optional[str] = None,
    threads: int = 1,
    sample_indices: Optional[Sequence[int]] = None,
) -> ScanReport:
    """Scan the first `prime_count` odd primes, checking mu(p) < 1 at each.

    A witness is an odd prime where the check fails; none are expected.
    Progress checkpoints (JSON) are written at fixed segment boundaries and
    validated on resume by re-sieving the boundary segment; a corrupt or
    inconsistent checkpoint raises IntegrityError rather than silently
    starting over. The fold order over segments is fixed, so results are
    bit-identical for any thread count.
    """
    if prime_count < 1:
        raise DomainError(f"prime_count must be >= 1, got {prime_count}")
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads}")
    t0 = time.perf_counter()
    wanted = sorted(set(int(i) for i in sample_indices)) if sample_indices else []
    if wanted and wanted[0] < 1:
        raise DomainError("sample indices are 1-based")

    limit = _nth_prime_bound(prime_count + 1)  # +1: skipping the prime 2
    odd_base = _dense_sieve(math.isqrt(limit))[1:]

    acc = Neumaier()
    acc.add(math.log1p(-0.5))  # the prime 2 sits below every odd prime
    done = 0
    seg = 0
    min_mu = math.inf
    min_at = 0
    last_prime = 0
    resumed = False

    if checkpoint and os.path.exists(checkpoint):
        st = _read_checkpoint(checkpoint)
        if st["primes_done"] >= prime_count:
            raise DomainError(
                f"checkpoint already covers {st['primes_done']} odd primes; "
                f"requested {prime_count}"
            )
        seg = st["segment"] + 1
        boundary_limit = max(limit, 3 + seg * SCAN_SPAN)
        base = _dense_sieve(math.isqrt(boundary_limit))[1:]
        ref = _segment_primes(st["segment"], base, boundary_limit)
        if len(ref) == 0 or int(ref[-1]) != st["last_prime"]:
            raise IntegrityError(
                f"checkpoint last_prime {st['last_prime']} does not close "
                f"segment {st['segment']}"
            )
        acc = Neumaier(total=st["log_sum"], comp=st["compensation"])
        done = st["primes_done"]
        min_mu = st["min_mu"]
        min_at = st["min_at"]
        last_prime = st["last_prime"]
        resumed = True
        if wanted and wanted[0] <= done:
            raise DomainError("sample indices must lie beyond the checkpoint")

    witnesses: list[int] = []
    samples: list[ScanSample] = []

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    pending: dict[int, object] = {}

    def fetch(k: int) -> np.ndarray:
        if pool is None:
            return _segment_primes(k, odd_base, limit)
        if k not in pending:
            pending[k] = pool.submit(_segment_primes, k, odd_base, limit)
        return pending.pop(k).result()

    try:
        while done < prime_count:
            if 3 + seg * SCAN_SPAN > limit:
                # bound estimate fell short; widen and rebuild the base sieve
                limit = int(limit * 1.3) + SCAN_SPAN
                odd_base = _dense_sieve(math.isqrt(limit))[1:]
                pending.clear()
            if pool is not None:
                for k in range(seg, seg + threads):
                    if k not in pending and 3 + k * SCAN_SPAN <= limit:
                        pending[k] = pool.submit(_segment_primes, k, odd_base, limit)
            p = fetch(seg)
            if len(p) == 0:
                seg += 1
                continue
            full_segment = True
            if done + len(p) > prime_count:
                p = p[: prime_count - done]
                full_segment = False
            logs = np.log1p(-1.0 / p)
            before = acc.value
            prefix = before + (np.cumsum(logs) - logs)  # excludes p itself
            crit = GAMMA + np.log(np.log(p)) + prefix
            bad = np.flatnonzero(crit >= 0.0)
            for i in bad:
                witnesses.append(int(p[i]))
            i_min = int(np.argmin(crit))
            seg_min = math.exp(float(crit[i_min]))
            if seg_min < min_mu:
                min_mu = seg_min
                min_at = int(p[i_min])
            while wanted and wanted[0] <= done + len(p):
                j = wanted.pop(0) - done - 1
                samples.append(
                    ScanSample(
                        index=done + j + 1,
                        prime=int(p[j]),
                        mu=math.exp(float(crit[j])),
                    )
                )
            # fold the segment in order; per-segment fsum keeps each partial
            # tight, the Neumaier fold keeps the running total stable
            acc.add(math.fsum(logs.tolist()))
            done += len(p)
            last_prime = int(p[-1])
            seg += 1
            if checkpoint and full_segment:
                _write_checkpoint(
                    checkpoint,
                    _checkpoint_payload(seg - 1, last_prime, done, acc, min_mu, min_at),
                )
    finally:
        if pool is not None:
            pool.shutdown(wait=False, cancel_futures=True)

    return ScanReport(
        prime_count=done,
        last_prime=last_prime,
        min_mu=min_mu,
        min_at=min_at,
        witnesses=tuple(witnesses),
        samples=tuple(samples),
        log_sum=acc.value,
        resumed=resumed,
        wall_time=time.perf_counter() - t0,
    )
