"""Command line: solve, check, generate and bench.

Results go to standard output as one JSON document (CSV for bench);
diagnostics go to standard error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
import timeit

import numpy as np

from .arrangements import ArrangementSpace, lemma3_sort
from .estimator import ENGINES, run_engine
from .instance import (
    INFEASIBLE,
    InstanceParseError,
    InstanceValidationError,
    generate_instance,
    load_instance,
    serialize_instance,
)
from .oracle import DEFAULT_BUDGET, OracleBudgetError, oracle_states

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_INFEASIBLE = 4
EXIT_BUDGET = 5
EXIT_PARTIAL = 6

BENCH_FIELDS = ["engine", "T", "m", "rep", "seconds", "loops", "moves", "inserts", "removals", "bound"]
PARTIAL_MARKER = "#partial"


def _err(msg):
    print(msg, file=sys.stderr)


def _emit(doc, out=None):
    text = json.dumps(doc, indent=2, sort_keys=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load(path):
    """Returns (instance, exit code)."""
    try:
        return load_instance(path), EXIT_OK
    except OSError as exc:
        _err(f"error: cannot read {path}: {exc.strerror}")
        return None, EXIT_PARSE
    except InstanceParseError as exc:
        _err(f"error: malformed instance {path}: {exc}")
        return None, EXIT_PARSE
    except InstanceValidationError as exc:
        _err(f"error: invalid instance {path}:")
        for v in exc.violations:
            _err(f"  - {v}")
        return None, EXIT_INVALID


def dump_sequences(instance, path):
    """Write the sorted completion and prefix sequences as CSV."""
    space = ArrangementSpace.for_instance(instance)
    seqs = lemma3_sort(instance, space)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["side", "t", "position", "index", "counts", "key"])
        for side, idx, keys in (("hat", seqs.hat, seqs.hat_keys), ("tilde", seqs.tilde, seqs.tilde_keys)):
            for t in sorted(idx):
                for pos, (n, k) in enumerate(zip(idx[t], keys[t])):
                    w.writerow([side, t, pos, n, " ".join(map(str, space.counts[n])), k])


def cmd_solve(args) -> int:
    instance, code = _load(args.instance)
    if instance is None:
        return code
    if args.dump_sequences:
        dump_sequences(instance, args.dump_sequences)
    try:
        result = run_engine(instance, args.engine, args.budget_states)
    except OracleBudgetError as exc:
        _err(f"error: {exc}")
        return EXIT_BUDGET
    _emit(result.to_dict(), args.out)
    if not result.feasible:
        _err("instance is infeasible")
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_check(args) -> int:
    instance, code = _load(args.instance)
    if instance is None:
        return code
    results = {}
    notes = []
    for engine in ENGINES:
        if engine == "oracle" and oracle_states(instance) > args.budget_states:
            notes.append(f"oracle skipped: {oracle_states(instance)} states exceed budget {args.budget_states}")
            continue
        results[engine] = run_engine(instance, engine, args.budget_states)
    names = list(results)
    mismatches = []
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if results[a].cost != results[b].cost:
                mismatches.append(f"cost {a}={results[a].cost} != {b}={results[b].cost}")
    fast, base = results["fast"].psi, results["baseline"].psi
    for u, (x, y) in enumerate(zip(fast, base), start=1):
        if x != y:
            mismatches.append(f"Psi[{u}] fast={x} != baseline={y}")
    for name, r in results.items():
        if r.schedule is not None and r.schedule.total_cost != r.cost:
            mismatches.append(f"{name} schedule evaluates to {r.schedule.total_cost}, reported {r.cost}")
    verdict = f"{len(names)} engines agree" if not mismatches else "mismatch"
    doc = {
        "verdict": verdict,
        "engines": names,
        "costs": {k: (r.cost if r.feasible else "infeasible") for k, r in results.items()},
        "mismatches": mismatches,
        "notes": notes,
        "digest": instance.digest,
    }
    _emit(doc, args.out)
    for n in notes:
        _err(f"note: {n}")
    if mismatches:
        for m in mismatches:
            _err(f"mismatch: {m}")
        return EXIT_MISMATCH
    if not results["fast"].feasible:
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        instance = generate_instance(
            args.seed,
            args.T,
            args.m,
            demand_max=args.demand_max,
            breakpoint_max=args.breakpoint_max,
            uncapacitated=args.uncapacitated,
            regular=args.regular,
        )
    except ValueError as exc:
        _err(f"error: {exc}")
        return EXIT_INVALID
    text = serialize_instance(instance)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        _err(f"wrote {args.out} (T={instance.T}, m={instance.m}, digest {instance.digest})")
    else:
        print(text)
    return EXIT_OK


def bench_instance(seed: int, T: int, m: int):
    # uncapacitated, no downward cost jumps: arrangement levels are exactly 0, B_1..B_m
    return generate_instance(seed + T, T, m, uncapacitated=True, regular=True)


def run_bench(Ts, m, repetitions=1, engines=("fast", "baseline"), seed=1000, budget_seconds=None, writer=None):
    """Time each (engine, T) cell; returns (rows, completed).

    Every cell first gets an untimed warm-up solve, which also supplies its
    counters. Repetitions then run in rounds over all cells, so slow drift
    in machine speed spreads across cells instead of landing on one. A
    repetition times enough back-to-back solves to last at least 0.2 s
    (``timeit.autorange``) and reports seconds per solve. Once the elapsed
    time passes ``budget_seconds`` nothing new starts and ``completed`` is
    False.
    """
    rows = []
    start = time.perf_counter()

    def over_budget():
        return budget_seconds is not None and time.perf_counter() - start > budget_seconds

    cells = []
    for T in Ts:
        instance = bench_instance(seed, T, m)
        for engine in engines:
            if over_budget():
                return rows, False
            counters = run_engine(instance, engine).counters
            timer = timeit.Timer(lambda instance=instance, engine=engine: run_engine(instance, engine))
            cells.append((T, engine, timer, counters))
    for rep in range(repetitions):
        for T, engine, timer, c in cells:
            if over_budget():
                return rows, False
            loops, total = timer.autorange()
            row = {
                "engine": engine,
                "T": T,
                "m": m,
                "rep": rep,
                "seconds": f"{total / loops:.6f}",
                "loops": loops,
                "moves": c.get("moves", ""),
                "inserts": c.get("inserts", ""),
                "removals": c.get("removals", ""),
                "bound": c.get("bound", ""),
            }
            rows.append(row)
            if writer is not None:
                writer.writerow(row)
    return rows, True


def fit_loglog_slope(Ts, seconds) -> float:
    """Least-squares slope of log(seconds) against log(T)."""
    return float(np.polyfit(np.log(np.asarray(Ts, float)), np.log(np.asarray(seconds, float)), 1)[0])


def bench_slopes(rows) -> dict:
    """Slope per engine using the fastest repetition of each T."""
    best = {}
    for r in rows:
        key = (r["engine"], int(r["T"]))
        best[key] = min(best.get(key, float("inf")), float(r["seconds"]))
    out = {}
    for engine in sorted({e for e, _ in best}):
        Ts = sorted(T for e, T in best if e == engine)
        if len(Ts) >= 2:
            out[engine] = fit_loglog_slope(Ts, [best[engine, T] for T in Ts])
    return out


def cmd_bench(args) -> int:
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(fh, fieldnames=BENCH_FIELDS)
        writer.writeheader()
        rows, completed = run_bench(
            args.T, args.m, args.repetitions, tuple(args.engines), args.seed, args.budget_seconds, writer
        )
        if not completed:
            fh.write(f"{PARTIAL_MARKER},budget of {args.budget_seconds}s exceeded\n")
    finally:
        if args.out:
            fh.close()
    for engine, slope in bench_slopes(rows).items():
        _err(f"{engine}: log-log slope {slope:.3f}")
    if not completed:
        _err(f"bench stopped early: budget of {args.budget_seconds}s exceeded")
        return EXIT_PARTIAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elspl", description="Exact lot sizing with piecewise-linear production costs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("instance")
    s.add_argument("--engine", choices=ENGINES, default="fast")
    s.add_argument("--budget-states", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--out", help="write the result here instead of stdout")
    s.add_argument("--dump-sequences", metavar="CSV", help="debug: write the sorted arrangement sequences")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("check", help="cross-check all engines on an instance")
    c.add_argument("instance")
    c.add_argument("--budget-states", type=int, default=DEFAULT_BUDGET)
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("generate", help="write a random instance")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--T", type=int, required=True)
    g.add_argument("--m", type=int, default=1)
    g.add_argument("--demand-max", type=int, default=10)
    g.add_argument("--breakpoint-max", type=int, default=30)
    g.add_argument("--uncapacitated", action="store_true")
    g.add_argument("--regular", action="store_true", help="no cost drop right after a breakpoint")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("bench", help="time the engines over a range of horizons (CSV)")
    b.add_argument("--m", type=int, default=1)
    b.add_argument("--T", type=int, nargs="+", default=[10, 14, 20, 28, 40])
    b.add_argument("--repetitions", type=int, default=1)
    b.add_argument("--engines", nargs="+", choices=("fast", "baseline"), default=["fast", "baseline"])
    b.add_argument("--seed", type=int, default=1000)
    b.add_argument("--budget-seconds", type=float, default=None)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
