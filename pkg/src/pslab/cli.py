"""Command line front end.

One binary, subcommand style. JSON is the canonical output (keys sorted,
floats printed to a fixed number of significant digits), CSV exists for the
flat table commands only, and a plain text rendering is available for eyes.
Runs with the same (command, seed, threads=1) emit byte-identical output;
--threads only moves wall time. Flags beat the config file, the config file
beats PSLAB_THREADS, and everything has a documented default.
"""
from __future__ import annotations

import argparse
import csv
import enum
import io
import json
import math
import numbers
import os
import random
import sys
import time
from dataclasses import asdict, dataclass, is_dataclass
from fractions import Fraction
from typing import Optional

try:
    import tomllib
except ModuleNotFoundError:  # 3.10
    import tomli as tomllib

from . import bounds, lsets, mertens, series, verify
from .consts import GAMMA
from .errors import (
    BoundaryAmbiguityError,
    DomainError,
    IntegrityError,
    PreconditionError,
)
from .primes import sieve_primes

_USAGE_ERRORS = (DomainError, PreconditionError, BoundaryAmbiguityError)
_CSV_COMMANDS = ("bq", "mu-table", "verify")
_CONFIG_KEYS = {"seed", "threads", "format", "digits", "checkpoint", "timing"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int
    threads: int
    fmt: str
    digits: int
    checkpoint: Optional[str]
    timing: bool


# --- serialization -----------------------------------------------------------


def _jsonable(x, digits: int):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, numbers.Integral):
        return int(x)
    if isinstance(x, numbers.Real):
        v = float(x)
        if not math.isfinite(v):
            return None
        return float(f"{v:.{digits}g}")
    if isinstance(x, enum.Enum):
        return x.value
    if is_dataclass(x):
        return _jsonable(asdict(x), digits)
    if isinstance(x, dict):
        return {str(k): _jsonable(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v, digits) for v in x]
    return str(x)


def _text_lines(x, prefix: str = ""):
    if isinstance(x, dict):
        for k in sorted(x):
            yield from _text_lines(x[k], f"{prefix}{k}.")
    elif isinstance(x, list):
        for i, v in enumerate(x):
            yield from _text_lines(v, f"{prefix}{i}.")
    else:
        yield f"{prefix[:-1]} = {'null' if x is None else x}"


def _csv_rows(command: str, payload: dict) -> tuple[list, list]:
    if command == "verify":
        reports = payload.get("suites", [payload])
        rows = []
        for rep in reports:
            if rep["failures"]:
                for i, w in enumerate(rep["failures"]):
                    rows.append([rep["suite"], i, "fail", w])
            else:
                rows.append([rep["suite"], "", "pass", ""])
        return ["suite", "case_id", "status", "witness"], rows
    if command == "mu-table":
        return (
            ["q", "value", "display", "erratum"],
            [[r["q"], r["value"], r["display"], r["erratum"]] for r in payload["rows"]],
        )
    # bq
    return (
        ["q", "m_q", "M_q", "r_q", "b_q"],
        [[r["q"], r["m_q"], r["M_q"], r["r_q"], r["b_q"]] for r in payload["rows"]],
    )


def _emit(payload: dict, rc: RunConfig) -> None:
    data = _jsonable(payload, rc.digits)
    if rc.fmt == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    elif rc.fmt == "text":
        sys.stdout.write("\n".join(_text_lines(data)) + "\n")
    else:
        header, rows = _csv_rows(rc.command, data)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())


# --- small input helpers -----------------------------------------------------


def _parse_int_list(text: str) -> list:
    out = []
    for tok in text.replace(",", " ").split():
        out.append(int(tok))
    if not out:
        raise DomainError("empty integer list")
    return out


def _read_int_file(path: str) -> list:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            body = line.split("#", 1)[0].strip()
            if body:
                out.append(int(body))
    if not out:
        raise DomainError(f"no integers found in {path}")
    return out


def _gather_elements(ns) -> list:
    given = [
        opt
        for opt in ("list", "file", "range")
        if getattr(ns, opt.replace("-", "_"), None)
    ]
    if len(given) != 1:
        raise DomainError("provide exactly one of --list, --file, --range")
    if given[0] == "list":
        return _parse_int_list(ns.list)
    if given[0] == "file":
        return _read_int_file(ns.file)
    lo, _, hi = ns.range.partition(":")
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError as exc:
        raise DomainError(f"bad --range {ns.range!r}, want LO:HI") from exc
    if hi_i < lo_i:
        raise DomainError(f"empty range {ns.range!r}")
    return list(range(lo_i, hi_i + 1))


def _report_dict(rep, rc: RunConfig) -> dict:
    d = {
        "suite": rep.suite,
        "cases": rep.cases,
        "passes": rep.passes,
        "failures": list(rep.failures),
        "ok": rep.ok,
        "meta": dict(rep.meta),
    }
    if rc.timing:
        d["wall_time"] = rep.wall_time
    return d


# --- subcommand handlers ------------------------------------------------------


def _cmd_sieve(ns, rc: RunConfig):
    table = sieve_primes(ns.limit)
    payload = {
        "limit": ns.limit,
        "count": table.count,
        "last_prime": int(table.primes()[-1]) if table.count else None,
    }
    if ns.out:
        table.dump(ns.out)
        payload["out"] = ns.out
    return payload, 0


def _cmd_mu(ns, rc: RunConfig):
    m = mertens.mu(ns.x)
    return {
        "x": ns.x,
        "mu": {"value": m.value, "lo": m.lo, "hi": m.hi},
        "primes_used": m.primes_used,
    }, 0


def _cmd_mu_table(ns, rc: RunConfig):
    rows = [
        {"q": q, "value": mertens.mu(q).value, "display": disp, "erratum": bool(err)}
        for q, disp, err in verify._MU_DISPLAY
    ]
    return {"rows": rows, "display_errata": list(verify.MU_DISPLAY_ERRATA)}, 0


def _cmd_mu_scan(ns, rc: RunConfig):
    samples = _parse_int_list(ns.samples) if ns.samples else None
    rep = mertens.mu_scan(
        ns.count,
        checkpoint=rc.checkpoint,
        threads=rc.threads,
        sample_indices=samples,
    )
    payload = {
        "prime_count": rep.prime_count,
        "last_prime": rep.last_prime,
        "min_mu": rep.min_mu,
        "min_at": rep.min_at,
        "witnesses": list(rep.witnesses),
        "samples": [asdict(s) for s in rep.samples],
        "log_sum": rep.log_sum,
        "resumed": rep.resumed,
    }
    if rc.timing:
        payload["wall_time"] = rep.wall_time
    return payload, 0 if not rep.witnesses else 1


def _cmd_constants(ns, rc: RunConfig):
    c = bounds.constants()
    tau = series.solve_tau()
    fp = series.f_prime_total()
    return {
        "C1": c.C1,
        "C2": c.C2,
        "inner_sum": c.inner_sum,
        "final_bound": c.final_bound,
        "ess_const": c.ess_const,
        "tau": {
            "value": tau.value,
            "lo": tau.value - tau.tail_bound,
            "hi": tau.value + tau.tail_bound,
        },
        "fP": {
            "value": fp.value,
            "lo": fp.value - fp.tail_bound,
            "hi": fp.value + fp.tail_bound,
        },
    }, 0


def _cmd_fnk(ns, rc: RunConfig):
    sv = series.f_nk_partial(ns.k, ns.bound)
    return {
        "k": ns.k,
        "bound": ns.bound,
        "value": sv.value,
        "tail_bound": sv.tail_bound,  # null in JSON when unbounded
        "terms_used": sv.terms_used,
    }, 0


def _cmd_lset(ns, rc: RunConfig):
    if ns.b is None:
        d = lsets.l_density(ns.a)
        return {
            "a": ns.a,
            "big_prime": d.fact.big_prime,
            "star": d.fact.star,
            "density": {"float": d.density_float, "exact": d.density_exact},
        }, 0
    return {
        "a": ns.a,
        "b": ns.b,
        "relation": lsets.trichotomy(ns.a, ns.b),
        "b_in_L_a": lsets.is_l_multiple(ns.b, ns.a),
        "a_in_L_b": lsets.is_l_multiple(ns.a, ns.b),
    }, 0


def _cmd_gen_set(ns, rc: RunConfig):
    xs = _gather_elements(ns)
    gens = lsets.generating_set(xs)
    return {"input_count": len(set(xs)), "count": len(gens), "generators": list(gens)}, 0


def _cmd_cset(ns, rc: RunConfig):
    spec = lsets.c_spec(ns.a, ns.v)
    elems = lsets.c_set(spec, ns.bound)
    shown = elems[:500]
    return {
        "a": ns.a,
        "v": ns.v,
        "window": list(spec.window),
        "count": len(elems),
        "elements": shown,
        "truncated": len(elems) > len(shown),
        "harmonic_exact": lsets.c_set_harmonic(spec),
        "harmonic_float": float(lsets.c_set_harmonic(spec)),
    }, 0


def _cmd_dickman(ns, rc: RunConfig):
    modes = [m for m in ("x", "integral", "samples") if getattr(ns, m) is not None]
    if len(modes) != 1:
        raise DomainError("provide exactly one of --x, --integral, --samples")
    if ns.x is not None:
        return {"mode": "rho", "x": ns.x, "value": lsets.dickman_rho(ns.x)}, 0
    if ns.integral is not None:
        return {
            "mode": "integral",
            "x": ns.integral,
            "value": lsets.dickman_integral(ns.integral),
        }, 0
    rng = random.Random(f"pslab:dickman:{rc.seed}:v1")
    sample = [rng.randint(10**7, 10**8) for _ in range(ns.samples)]
    stat = lsets.dickman_statistic(sample, ns.v)
    return {
        "mode": "statistic",
        "v": ns.v,
        "sample_size": stat.count,
        "mean": stat.mean,
        "theory": stat.theory,
        "limit_e_minus_gamma": math.exp(-GAMMA),
    }, 0


def _cmd_bq(ns, rc: RunConfig):
    qs = (ns.q,) if ns.q is not None else bounds.TABLE_QS
    rows = [asdict(bounds.bq_entry(q)) for q in qs]
    return {"rows": rows}, 0


def _cmd_check(ns, rc: RunConfig):
    if ns.exponent is not None:
        if ns.lemma is not None:
            raise DomainError("--exponent and --lemma are mutually exclusive")
        return {
            "theta": ns.exponent,
            "savings": bounds.exponent_savings(ns.exponent),
        }, 0
    if ns.lemma is None:
        raise DomainError("pick --lemma or --exponent")
    if ns.lemma == "double-ratio" and ns.q is not None:
        verdict = bounds.double_ratio_check(ns.q)
        payload = {
            "lemma": "double-ratio",
            "q": ns.q,
            "verdict": verdict,
            "threshold": math.log(ns.q) / math.log(2 * ns.q),
        }
        if ns.q <= 10**5:
            payload["b_q"] = bounds.b_value(ns.q)
        return payload, 0 if verdict else 1
    if ns.q is not None:
        raise DomainError("--q only applies to --lemma double-ratio")
    rep = verify.run_suite(ns.lemma, seed=rc.seed, cases=ns.cases, threads=rc.threads)
    return _report_dict(rep, rc), 0 if rep.ok else 1


def _cmd_verify(ns, rc: RunConfig):
    if ns.suite == "all":
        reports = [
            verify.run_suite(s, seed=rc.seed, cases=ns.cases, threads=rc.threads)
            for s in verify.suite_names()
        ]
        return {
            "suites": [_report_dict(r, rc) for r in reports],
            "ok": all(r.ok for r in reports),
        }, 0 if all(r.ok for r in reports) else 1
    rep = verify.run_suite(ns.suite, seed=rc.seed, cases=ns.cases, threads=rc.threads)
    return _report_dict(rep, rc), 0 if rep.ok else 1


def _cmd_search(ns, rc: RunConfig):
    checked, value = verify.exhaustive_primitive_max(
        ns.limit, use_pruning=not ns.no_prune
    )
    return {
        "limit": ns.limit,
        "pruning": not ns.no_prune,
        "elements": list(checked.elements),
        "value": value,
        "primitive": checked.primitive,
        "l_primitive": checked.l_primitive,
    }, 0


def _cmd_chain(ns, rc: RunConfig):
    xs = _gather_elements(ns)
    res = verify.longest_l_chain(xs)
    valid = verify.validate_chain(res)
    return {
        "input_count": len(set(xs)),
        "length": len(res.elements),
        "elements": list(res.elements),
        "certificates": [list(c) for c in res.certificates],
        "valid": valid,
    }, 0 if valid else 1


def _cmd_density(ns, rc: RunConfig):
    picked = [o for o in ("gens", "list", "file") if getattr(ns, o, None)]
    if len(picked) != 1:
        raise DomainError("provide exactly one of --gens, --list, --file")
    if picked[0] == "gens":
        spec = verify.LFamily(tuple(_parse_int_list(ns.gens)))
    elif picked[0] == "list":
        spec = _parse_int_list(ns.list)
    else:
        spec = _read_int_file(ns.file)
    est = verify.density_estimate(spec, ns.x)
    payload = {
        "x": est.x,
        "mode": "l-union" if isinstance(spec, verify.LFamily) else "explicit",
        "nat": est.nat,
        "log_d": est.log_d,
        "loglog_d": est.loglog_d,
        "exact_sum": est.exact_sum,
    }
    if isinstance(est.descriptor, verify.LFamily):
        payload["generators"] = list(est.descriptor.generators)
    return payload, 0


_HANDLERS = {
    "sieve": _cmd_sieve,
    "mu": _cmd_mu,
    "mu-table": _cmd_mu_table,
    "mu-scan": _cmd_mu_scan,
    "constants": _cmd_constants,
    "fnk": _cmd_fnk,
    "lset": _cmd_lset,
    "gen-set": _cmd_gen_set,
    "cset": _cmd_cset,
    "dickman": _cmd_dickman,
    "bq": _cmd_bq,
    "check": _cmd_check,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "chain": _cmd_chain,
    "density": _cmd_density,
}


# --- argument wiring ----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="rng seed (default 1)")
    common.add_argument(
        "--threads", type=int, default=None, help="worker budget (default $PSLAB_THREADS or 1)"
    )
    common.add_argument(
        "--format", choices=("json", "csv", "text"), default=None,
        help="output format (default json; csv for table commands only)",
    )
    common.add_argument(
        "--digits", type=int, default=None, help="significant digits printed (default 10)"
    )
    common.add_argument("--config", default=None, help="TOML config file; flags win")
    common.add_argument(
        "--timing", action="store_const", const=True, default=None,
        help="include wall times (off by default to keep output reproducible)",
    )
    common.add_argument("--checkpoint", default=None, help="checkpoint path (mu-scan)")

    p = argparse.ArgumentParser(
        prog="pslab",
        description="Mertens products, L-set densities, and the verification suites.",
        allow_abbrev=False,
    )
    sub = p.add_subparsers(dest="command")

    s = sub.add_parser("sieve", parents=[common], help="sieve primes, optionally dump a table")
    s.add_argument("--limit", type=int, required=True)
    s.add_argument("--out", default=None, help="write a PSLB prime table dump")

    s = sub.add_parser("mu", parents=[common], help="the Mertens ratio at x")
    s.add_argument("--x", type=float, required=True)

    sub.add_parser("mu-table", parents=[common], help="mu at the first 46 primes vs display")

    s = sub.add_parser("mu-scan", parents=[common], help="scan mu over the first N odd primes")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--samples", default=None, help="comma-separated 1-based indices to record")

    sub.add_parser("constants", parents=[common], help="tau, f over primes, C1/C2 and friends")

    s = sub.add_parser("fnk", parents=[common], help="partial f over integers with k prime factors")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--bound", type=int, required=True)

    s = sub.add_parser("lset", parents=[common], help="L-set density, or the relation of two L-sets")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, default=None)

    s = sub.add_parser("gen-set", parents=[common], help="reduce a set to its generating family")
    s.add_argument("--list", default=None)
    s.add_argument("--file", default=None)
    s.add_argument("--range", default=None, help="LO:HI inclusive")

    s = sub.add_parser("cset", parents=[common], help="window-smooth companion set of a")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--v", type=float, required=True)
    s.add_argument("--bound", type=int, required=True)

    s = sub.add_parser("dickman", parents=[common], help="rho, its integral, or the sample statistic")
    s.add_argument("--x", type=float, default=None)
    s.add_argument("--integral", type=float, default=None)
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--v", type=float, default=1.0)

    s = sub.add_parser("bq", parents=[common], help="the b_q weight table (or one q)")
    s.add_argument("--q", type=int, default=None)

    s = sub.add_parser("check", parents=[common], help="run one inequality checker batch")
    s.add_argument(
        "--lemma",
        choices=("mass", "deep", "shallow", "partition", "double-ratio"),
        default=None,
    )
    s.add_argument("--q", type=int, default=None, help="single-q query (double-ratio only)")
    s.add_argument("--cases", type=int, default=None)
    s.add_argument("--exponent", type=float, default=None, help="exploratory savings integral")

    s = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    s.add_argument("--suite", required=True, help="a suite name, or 'all'")
    s.add_argument("--cases", type=int, default=None)

    s = sub.add_parser("search", parents=[common], help="exhaustive primitive-set maximizer")
    s.add_argument("--limit", type=int, required=True)
    s.add_argument("--no-prune", action="store_true")

    s = sub.add_parser("chain", parents=[common], help="longest L-divisibility chain")
    s.add_argument("--list", default=None)
    s.add_argument("--file", default=None)
    s.add_argument("--range", default=None, help="LO:HI inclusive")

    s = sub.add_parser("density", parents=[common], help="truncated density estimators")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--gens", default=None, help="generators of an L-set union")
    s.add_argument("--list", default=None)
    s.add_argument("--file", default=None)

    return p


def _resolve(ns) -> RunConfig:
    cfg = {}
    if getattr(ns, "config", None):
        with open(ns.config, "rb") as fh:
            cfg = tomllib.load(fh)
        unknown = set(cfg) - _CONFIG_KEYS
        if unknown:
            raise DomainError(f"unknown config keys: {', '.join(sorted(unknown))}")

    def pick(name, fallback):
        v = getattr(ns, name, None)
        if v is not None:
            return v
        return cfg.get(name, fallback)

    env_threads = os.environ.get("PSLAB_THREADS")
    threads = int(pick("threads", int(env_threads) if env_threads else 1))
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads}")
    fmt = str(pick("format", "json"))
    if fmt not in ("json", "csv", "text"):
        raise DomainError(f"unknown format {fmt!r}")
    digits = int(pick("digits", 10))
    if not 1 <= digits <= 17:
        raise DomainError(f"digits must be in [1, 17], got {digits}")
    return RunConfig(
        command=ns.command,
        seed=int(pick("seed", 1)),
        threads=threads,
        fmt=fmt,
        digits=digits,
        checkpoint=pick("checkpoint", None),
        timing=bool(pick("timing", False)),
    )


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already wrote the message
        return 0 if exc.code in (0, None) else 2
    if ns.command is None:
        parser.print_help()
        return 2
    try:
        rc = _resolve(ns)
        if rc.fmt == "csv" and ns.command not in _CSV_COMMANDS:
            raise DomainError(
                f"csv output only exists for: {', '.join(_CSV_COMMANDS)}"
            )
        t0 = time.perf_counter()
        payload, code = _HANDLERS[ns.command](ns, rc)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IntegrityError as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return 1
    out = {"command": ns.command, "seed": rc.seed, **payload}
    if rc.timing and "wall_time" not in out:
        out["wall_time"] = time.perf_counter() - t0
    _emit(out, rc)
    return code


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
