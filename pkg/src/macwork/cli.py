"""Command-line front end.

Exit codes: 0 success (and passing checks), 1 failed check (the JSON report
says where), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from math import factorial
from pathlib import Path

from . import __version__

log = logging.getLogger("macwork")

VERBS = (
    "htilde", "ktable", "positivity", "nfact", "frobenius", "check-fh",
    "polygraph-hilbert", "polygraph-freeness", "polygraph-basis2",
    "jpower", "coinv", "denominator",
)


class UsageError(Exception):
    pass


def dumps(payload) -> str:
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)


# -- cache -------------------------------------------------------------------

def cache_dir() -> Path:
    env = os.environ.get("MSW_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "macwork"


def cache_key(verb: str, params: dict) -> str:
    canon = ",".join(f"{k}={params[k]}" for k in sorted(params) if params[k] is not None)
    return f"{verb}|{canon}|v{__version__}"


def _cache_path(key: str) -> Path:
    import hashlib

    return cache_dir() / (hashlib.sha256(key.encode()).hexdigest()[:32] + ".json")


def cache_get_or_compute(key: str, thunk, use_cache: bool = True):
    """Return ``(payload, ok)``, from the cache when a valid entry exists."""
    if not use_cache:
        return thunk()
    path = _cache_path(key)
    if path.exists():
        try:
            entry = json.loads(path.read_text(encoding="utf-8"))
            if entry["key"] == key and entry["version"] == __version__:
                return entry["payload"], bool(entry["ok"])
        except (ValueError, KeyError, TypeError, OSError):
            log.warning("corrupt cache entry %s; recomputing", path)
    payload, ok = thunk()
    # round-trip so that fresh and cached output are the same bytes
    payload = json.loads(dumps(payload))
    entry = {"key": key, "version": __version__, "ok": ok, "payload": payload}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps(entry))
        os.replace(tmp, path)
    except OSError as exc:
        log.warning("could not write cache entry: %s", exc)
    return payload, ok


# -- parameter handling ------------------------------------------------------

def parse_partition(text: str):
    from .partcomb import Partition

    try:
        parts = [int(p) for p in text.replace(" ", "").strip("[]()").split(",") if p]
        mu = Partition(parts)
    except ValueError as exc:
        raise UsageError(f"malformed partition {text!r}: {exc}") from None
    if not mu:
        raise UsageError("partition must be nonempty")
    return mu


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.verb} needs --{name.replace('_', '-')}")


def _bounded(value: int, name: str, lo: int, hi: int | None = None):
    if value < lo or (hi is not None and value > hi):
        rng = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
        raise UsageError(f"--{name} must be {rng}, got {value}")


def _mu_size_guard(mu, args, limit: int = 5):
    if mu.size > limit and not args.long:
        raise UsageError(f"n = {mu.size} is a heavy instance; pass --long")


def _arrangement(args):
    from .polygraph import y_arrangement_spec, z_spec

    _need(args, "n", "l")
    _bounded(args.n, "n", 1)
    _bounded(args.l, "l", 0)
    ys = (args.m, args.r, args.k)
    if all(v is None for v in ys):
        return z_spec(args.n, args.l)
    if any(v is None for v in ys):
        raise UsageError("--m, --r and --k go together")
    _bounded(args.r, "r", 0, args.n)
    _bounded(args.k, "k", 0, args.l)
    return y_arrangement_spec(args.n, args.l, args.m, args.r, args.k)


def _truncation(args, default: int):
    dx = default if args.dx is None else args.dx
    dy = default if args.dy is None else args.dy
    _bounded(dx, "dx", 0)
    _bounded(dy, "dy", 0)
    return dx, dy


# -- verbs -------------------------------------------------------------------
# each returns (params, thunk); thunk() -> (payload, ok)

def v_htilde(args):
    from .macdonald import htilde

    _need(args, "mu")
    mu = parse_partition(args.mu)
    _mu_size_guard(mu, args, 6)
    return {"mu": str(mu)}, lambda: (htilde(mu).to_json(), True)


def v_ktable(args):
    from .macdonald import ktilde_table

    _need(args, "n")
    _bounded(args.n, "n", 1, 6)
    return {"n": args.n}, lambda: (ktilde_table(args.n).to_json(), True)


def v_positivity(args):
    from .macdonald import positivity_report

    n = 6 if args.n is None else args.n
    _bounded(n, "n", 1, 6)

    def run():
        rep = positivity_report(n)
        ok = rep.all_positive and not rep.specialization_mismatches
        return rep.to_json(), ok

    return {"n": n}, run


def v_nfact(args):
    from .ghmodule import dmu_basis
    from .partcomb import enumerate_partitions

    max_n = 4 if args.max_n is None else args.max_n
    _bounded(max_n, "max-n", 1, 6)
    if max_n > 5 and not args.long:
        raise UsageError("--max-n 6 is a heavy instance; pass --long")

    def run():
        rows = []
        for n in range(1, max_n + 1):
            for mu in enumerate_partitions(n):
                dim = dmu_basis(mu).total
                rows.append({"mu": list(mu), "dim": dim, "nfact": factorial(n), "equal": dim == factorial(n)})
        ok = all(r["equal"] for r in rows)
        return {"max_n": max_n, "pass": ok, "rows": rows}, ok

    return {"max_n": max_n}, run


def v_frobenius(args):
    from .ghmodule import bigraded_frobenius

    _need(args, "mu")
    mu = parse_partition(args.mu)
    _mu_size_guard(mu, args)

    def run():
        out = {"mu": list(mu)}
        out.update(bigraded_frobenius(mu).to_json())
        return out, True

    return {"mu": str(mu)}, run


def v_check_fh(args):
    from .ghmodule import verify_f_equals_h
    from .partcomb import enumerate_partitions

    if args.mu is not None:
        mus = [parse_partition(args.mu)]
        _mu_size_guard(mus[0], args, 4 if not args.long else 5)
        params = {"mu": str(mus[0])}
    else:
        max_n = 4 if args.max_n is None else args.max_n
        _bounded(max_n, "max-n", 1, 5)
        if max_n > 4 and not args.long:
            raise UsageError("--max-n 5 is a heavy instance; pass --long")
        mus = [mu for n in range(1, max_n + 1) for mu in enumerate_partitions(n)]
        params = {"max_n": max_n}

    def run():
        reports = [verify_f_equals_h(mu).to_json() for mu in mus]
        ok = all(r["pass"] for r in reports)
        first = next((r for r in reports if not r["pass"]), None)
        return {"check": "f_equals_h", "pass": ok, "first_discrepancy": first, "reports": reports}, ok

    return params, run


def v_polygraph_hilbert(args):
    from .polygraph import hilbert_data

    spec = _arrangement(args)
    dx, dy = _truncation(args, 6)
    params = {"n": args.n, "l": args.l, "m": args.m, "r": args.r, "k": args.k, "dx": dx, "dy": dy}
    return params, lambda: (hilbert_data(spec, dx, dy).to_json(), True)


def v_polygraph_freeness(args):
    from .polygraph import freeness_certificate, generic_ranks, hilbert_data, y_generic_enumerator

    spec = _arrangement(args)
    dx, dy = _truncation(args, 6)
    params = {"n": args.n, "l": args.l, "m": args.m, "r": args.r, "k": args.k, "dx": dx, "dy": dy}

    def run():
        cert = freeness_certificate(spec, dx, dy).to_json()
        m, r, k = (args.m or 0), (args.r or 0), (args.k or 0)
        enum = y_generic_enumerator(spec.n, spec.l, m, r, k, dx)
        ranks, stable = generic_ranks(hilbert_data(spec, dx, dy))
        cert["generic"] = {"enumerated": enum, "stabilized": ranks, "stable": stable,
                           "pass": enum == ranks and all(stable)}
        cert.update(spec.to_json_header())
        cert["Dx"], cert["Dy"] = dx, dy
        return cert, cert["pass"] and cert["generic"]["pass"]

    return params, run


def v_polygraph_basis2(args):
    from .polygraph import n2_common_basis, n2_ideal_generators, n2_ideal_generators_check, y_parameter_triples

    l = 1 if args.l is None else args.l
    _bounded(l, "l", 0)
    if args.n not in (None, 2):
        raise UsageError("polygraph-basis2 is for n = 2 only")
    dx, dy = _truncation(args, 6)

    def run():
        out = n2_common_basis(l, dx, dy).to_json()
        gens = []
        for m, r, k in y_parameter_triples(2, l):
            if n2_ideal_generators(l, m, r, k) is None:
                continue
            cert = n2_ideal_generators_check(l, m, r, k, dx, dy).to_json()
            gens.append(cert)
        out["generators"] = gens
        ok = out["pass"] and all(g["pass"] for g in gens)
        return out, ok

    return {"l": l, "dx": dx, "dy": dy}, run


def v_jpower(args):
    from .polygraph import jpower_check

    _need(args, "n", "d")
    _bounded(args.n, "n", 2)
    _bounded(args.d, "d", 1)
    dx, dy = _truncation(args, 5)
    if (args.n >= 3 and args.d >= 2 or args.n >= 4) and not args.long:
        raise UsageError("this J^d instance is heavy; pass --long")

    def run():
        rep = jpower_check(args.n, args.d, dx, dy)
        return rep.to_json(), rep.passed

    return {"n": args.n, "d": args.d, "dx": dx, "dy": dy}, run


def v_coinv(args):
    from .ghmodule import diagonal_coinvariants_dims

    _need(args, "n")
    _bounded(args.n, "n", 1, 5)
    if args.n > 4 and not args.long:
        raise UsageError("n = 5 is a heavy instance; pass --long")

    def run():
        dims = diagonal_coinvariants_dims(args.n)
        total = sum(dims.values())
        expected = (args.n + 1) ** (args.n - 1)
        out = {
            "n": args.n,
            "dims": {f"({r},{s})": d for (r, s), d in sorted(dims.items())},
            "total": total,
            "expected": expected,
            "pass": total == expected,
        }
        return out, total == expected

    return {"n": args.n}, run


def v_denominator(args):
    from .macdonald import local_hilbert_denominator
    from .symfunc import coeff_str

    _need(args, "mu")
    mu = parse_partition(args.mu)
    return {"mu": str(mu)}, lambda: ({"mu": list(mu), "denominator": coeff_str(local_hilbert_denominator(mu))}, True)


HANDLERS = {
    "htilde": v_htilde,
    "ktable": v_ktable,
    "positivity": v_positivity,
    "nfact": v_nfact,
    "frobenius": v_frobenius,
    "check-fh": v_check_fh,
    "polygraph-hilbert": v_polygraph_hilbert,
    "polygraph-freeness": v_polygraph_freeness,
    "polygraph-basis2": v_polygraph_basis2,
    "jpower": v_jpower,
    "coinv": v_coinv,
    "denominator": v_denominator,
}


# -- output ------------------------------------------------------------------

def _table_rows(verb: str, payload: dict) -> tuple[list[str], list[list]] | None:
    if verb == "htilde":
        return ["lam", "coeff"], [[k, v] for k, v in payload["coeffs"].items()]
    if verb == "ktable":
        return ["mu", "lam", "coeff"], [
            [mu, lam, c] for mu, col in payload["table"].items() for lam, c in col.items()
        ]
    if verb == "nfact":
        return ["mu", "dim", "nfact", "equal"], [
            [str(r["mu"]).replace(" ", ""), r["dim"], r["nfact"], r["equal"]] for r in payload["rows"]
        ]
    if verb == "frobenius":
        return ["bidegree", "lam", "coeff"], [
            [bd, lam, c] for bd, f in payload["slices"].items() for lam, c in f["coeffs"].items()
        ]
    if verb in ("polygraph-hilbert", "coinv"):
        key = "hilbert" if verb == "polygraph-hilbert" else "dims"
        return ["bidegree", "dim"], [[bd, v] for bd, v in payload[key].items()]
    if verb == "jpower":
        return ["bidegree", "dim"], [[bd, v] for bd, v in payload["dims"].items()]
    if verb == "check-fh":
        return ["mu", "pass"], [[str(r["mu"]).replace(" ", ""), r["pass"]] for r in payload["reports"]]
    return None


def render(verb: str, payload: dict, mode: str) -> str:
    if mode == "json":
        return dumps(payload)
    table = _table_rows(verb, payload)
    if mode == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if table is None:
            w.writerow(["key", "value"])
            for k, v in payload.items():
                w.writerow([k, v if isinstance(v, (str, int, bool)) or v is None else dumps(v)])
        else:
            w.writerow(table[0])
            w.writerows(table[1])
        return buf.getvalue().rstrip("\n")
    lines = []
    for k, v in payload.items():
        if not isinstance(v, (dict, list)):
            lines.append(f"{k}: {v}")
    if table is not None:
        head, rows = table
        widths = [max(len(str(x)) for x in col) for col in zip(head, *rows)]
        lines.append("  ".join(str(h).ljust(w) for h, w in zip(head, widths)))
        for row in rows:
            lines.append("  ".join(str(x).ljust(w) for x, w in zip(row, widths)))
    else:
        for k, v in payload.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{k}: {dumps(v)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="macwork", description="Exact Macdonald / polygraph workbench")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--mu", help="partition, comma separated parts (e.g. 2,1)")
    for name in ("n", "l", "m", "r", "k", "d", "dx", "dy", "max-n"):
        p.add_argument(f"--{name}", type=int)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--long", action="store_true", help="allow heavy instances")
    p.add_argument("--version", action="version", version=__version__)
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        params, thunk = HANDLERS[args.verb](args)
    except UsageError as exc:
        print(f"macwork: error: {exc}", file=sys.stderr)
        return 2
    payload, ok = cache_get_or_compute(cache_key(args.verb, params), thunk, use_cache=not args.no_cache)
    mode = "json" if args.json else "csv" if args.csv else "plain"
    print(render(args.verb, payload, mode), file=out)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
