"""Command-line front end.

Subcommands: gen (write a random instance), solve (run one solver on one
file), bench (sweep grid -> CSV/SVG), audit (property suites), oracle
(exact enumeration).  Exit codes: 0 ok, 1 audit violation, 2 I/O or
parse failure, 3 invalid arguments.

Schedule flags may also come from a key=value config file; precedence is
CLI flag > config file > built-in default.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .audits import AUDIT_SUITES
from .bench import fit_scaling_exponent, render_svg, run_sweep, sweep_cells, write_csv
from .errors import GraphError, IsingcutError, ParseError, RetryExhaustedError, TooLargeError
from .graph import gen_d_regular, gen_erdos_renyi, read_graph, write_graph
from .oracle import brute_force_maxcut
from .solvers import SOLVER_NAMES, solver_by_name

SCHEDULE_KEYS = ("restarts", "dt0", "steps0", "step_growth", "dt_shrink")


def _read_config(path) -> dict[str, str]:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, val = line.split("=", 1)
            out[key.strip()] = val.strip()
    return out


def _merge(args, key, default, cast):
    cli_val = getattr(args, key, None)
    if cli_val is not None:
        return cli_val
    if args.config and key in args._config_values:
        return cast(args._config_values[key])
    return default


def _schedule_kwargs(args) -> dict:
    kwargs = {}
    casts = {"restarts": int, "dt0": float, "steps0": int,
             "step_growth": float, "dt_shrink": float}
    for key in SCHEDULE_KEYS:
        val = _merge(args, key, None, casts[key])
        if val is not None:
            kwargs[key] = val
    return kwargs


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--dt0", type=float, default=None)
    p.add_argument("--steps0", type=int, default=None)
    p.add_argument("--step-growth", dest="step_growth", type=float, default=None)
    p.add_argument("--dt-shrink", dest="dt_shrink", type=float, default=None)
    p.add_argument("--tries", type=int, default=None, help="local-search multistart tries")
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isingcut", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a random instance file")
    p_gen.add_argument("family", choices=("er", "reg3", "reg4"))
    p_gen.add_argument("n", type=int)
    p_gen.add_argument("param", help="edge probability for er; '-' for regular")
    p_gen.add_argument("gen_seed", type=int)
    p_gen.add_argument("path")
    p_gen.add_argument("--connected", action="store_true",
                       help="regenerate er instances until connected")
    _add_common_flags(p_gen)

    p_solve = sub.add_parser("solve", help="run one solver on a graph file")
    p_solve.add_argument("graph")
    p_solve.add_argument("--solver", choices=SOLVER_NAMES, default="gw2")
    _add_common_flags(p_solve)

    p_bench = sub.add_parser("bench", help="sweep instances x solvers into a CSV")
    p_bench.add_argument("--families", default="er", help="comma list: er,reg3,reg4")
    p_bench.add_argument("--sizes", required=True, help="comma list of node counts")
    p_bench.add_argument("--p", type=float, default=0.1, help="er edge probability")
    p_bench.add_argument("--seeds", default="1", help="comma list of instance seeds")
    p_bench.add_argument("--solvers", default="gw2,ls2", help=f"comma list from {SOLVER_NAMES}")
    p_bench.add_argument("--svg", default=None, help="also render a scatter SVG here")
    _add_common_flags(p_bench)

    p_audit = sub.add_parser("audit", help="run a property audit suite")
    p_audit.add_argument("suite", choices=sorted(AUDIT_SUITES))
    p_audit.add_argument("--trials", type=int, default=None)
    _add_common_flags(p_audit)

    p_oracle = sub.add_parser("oracle", help="exact max cut by enumeration (n <= 26)")
    p_oracle.add_argument("graph")
    _add_common_flags(p_oracle)
    return parser


def _cmd_gen(args) -> int:
    if args.family == "er":
        g = gen_erdos_renyi(args.n, float(args.param), seed=args.gen_seed,
                            require_connected=args.connected)
    else:
        d = int(args.family[3:])
        g = gen_d_regular(args.n, d, seed=args.gen_seed)
    write_graph(g, args.path)
    print(f"wrote {args.path}: n={g.n} m={g.m}")
    return 0


def _record_text(rec: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec, sort_keys=True)
    return " ".join(f"{k}={v}" for k, v in rec.items())


def _cmd_solve(args) -> int:
    g = read_graph(args.graph)
    seed = _merge(args, "seed", 0, int)
    fmt = _merge(args, "format", "csv", str)
    kwargs = _schedule_kwargs(args)
    tries = _merge(args, "tries", None, int)
    if tries is not None:
        kwargs["tries"] = tries
    est = solver_by_name(args.solver, seed=seed, **kwargs)
    est.fit(g)
    res = est.result_
    rec = {
        "graph": args.graph, "n": g.n, "m": g.m, "solver": args.solver,
        "seed": seed, "cut": res.cut, "steps": res.steps,
        "restarts": res.restarts, "time_ms": round(res.time_ms, 3),
        "converged": res.converged,
    }
    if args.solver == "brute":
        rec["best_known"] = res.cut
    print(_record_text(rec, fmt))
    return 0


def _cmd_bench(args) -> int:
    families = [f for f in args.families.split(",") if f]
    sizes = [int(s) for s in args.sizes.split(",") if s]
    seeds = [int(s) for s in args.seeds.split(",") if s]
    solvers = [s for s in args.solvers.split(",") if s]
    cells = sweep_cells(families, sizes, args.p, seeds)
    if not cells or not solvers:
        raise ValueError("empty sweep: need at least one cell and one solver")
    out = _merge(args, "out", None, str)
    if out is None:
        raise ValueError("bench requires --out for the CSV")
    records = run_sweep(
        cells,
        solvers,
        master_seed=_merge(args, "seed", 0, int),
        threads=_merge(args, "threads", 1, int),
        schedule_kwargs=_schedule_kwargs(args),
        tries=_merge(args, "tries", 1000, int),
    )
    write_csv(records, out)
    n_ok = sum(r.status == "ok" for r in records)
    print(f"wrote {out}: {len(records)} rows, {n_ok} ok")
    for solver in solvers:
        exp = fit_scaling_exponent(records, solver)
        if exp is not None:
            print(f"scaling exponent time~edges [{solver}]: {exp:.3f}")
    if args.svg:
        render_svg(records, args.svg)
        print(f"wrote {args.svg}")
    return 0 if n_ok >= 0.9 * len(records) else 2


def _cmd_audit(args) -> int:
    suite = AUDIT_SUITES[args.suite]
    kwargs = {"seed": _merge(args, "seed", 1, int)}
    if args.trials is not None:
        kwargs["trials"] = args.trials
    report = suite(**kwargs)
    print(report.summary())
    return 0 if report.passed else 1


def _cmd_oracle(args) -> int:
    g = read_graph(args.graph)
    fmt = _merge(args, "format", "csv", str)
    t0 = time.perf_counter()
    cut, sigma = brute_force_maxcut(g)
    elapsed = (time.perf_counter() - t0) * 1000.0
    bits = "".join("1" if s > 0 else "0" for s in sigma)
    print(_record_text(
        {"graph": args.graph, "n": g.n, "m": g.m, "max_cut": cut,
         "partition": bits, "time_ms": round(elapsed, 3)}, fmt))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args._config_values = _read_config(args.config) if args.config else {}
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    handlers = {
        "gen": _cmd_gen,
        "solve": _cmd_solve,
        "bench": _cmd_bench,
        "audit": _cmd_audit,
        "oracle": _cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except (ParseError, GraphError, RetryExhaustedError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TooLargeError, IsingcutError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
