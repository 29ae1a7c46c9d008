"""Benchmark sweeps: instance grid x solvers -> CSV rows, SVG scatter.

A sweep cell is (family, n, param, seed); each cell generates its graph
from a stream derived from the master seed and the cell key, runs every
requested solver, and emits one record per run.  Cells are independent,
so they parallelize over a thread pool without changing any output
except the timing columns; rows are sorted before writing.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .graph import Graph, from_edge_list, gen_d_regular, gen_erdos_renyi, read_graph
from .objectives import discrepancy_delta
from .solvers import SOLVER_NAMES, solver_by_name

__all__ = [
    "BenchRecord",
    "sweep_cells",
    "run_sweep",
    "fit_scaling_exponent",
    "write_csv",
    "read_csv",
    "render_svg",
]

CSV_FIELDS = [
    "graph_id", "n", "m", "family", "param", "seed", "solver",
    "cut", "best_known", "delta_pct", "time_ms", "steps", "restarts", "status",
]


@dataclass
class BenchRecord:
    graph_id: str
    n: int
    m: int
    family: str
    param: str
    seed: int
    solver: str
    cut: float
    best_known: float | None
    delta_pct: float | None
    time_ms: float
    steps: int
    restarts: int
    status: str = "ok"

    def to_row(self) -> list[str]:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            out.append("" if v is None else str(v))
        return out

    @classmethod
    def from_row(cls, row: list[str]) -> "BenchRecord":
        (gid, n, m, family, param, seed, solver, cut, best, delta,
         time_ms, steps, restarts, status) = row
        return cls(
            graph_id=gid, n=int(n), m=int(m), family=family, param=param,
            seed=int(seed), solver=solver, cut=float(cut),
            best_known=float(best) if best else None,
            delta_pct=float(delta) if delta else None,
            time_ms=float(time_ms), steps=int(steps), restarts=int(restarts),
            status=status,
        )

    def sort_key(self):
        return (self.family, self.n, self.param, self.seed, self.solver)


def _make_graph(family: str, n: int, param: str, seed: int) -> Graph:
    if family == "er":
        return gen_erdos_renyi(n, float(param), seed=seed)
    if family == "reg3":
        return gen_d_regular(n, 3, seed=seed)
    if family == "reg4":
        return gen_d_regular(n, 4, seed=seed)
    if family == "file":
        return read_graph(param)
    raise ValueError(f"unknown graph family {family!r}")


def sweep_cells(families, sizes, param, seeds) -> list[tuple[str, int, str, int]]:
    """Cross product of families x sizes x seeds (param is per-family: the
    edge probability for er, ignored for regular families)."""
    cells = []
    for family in families:
        for n in sizes:
            cell_param = str(param) if family == "er" else "-"
            for seed in seeds:
                cells.append((family, int(n), cell_param, int(seed)))
    return cells


def _warmup():
    # compile/load the kernels outside the timed region
    g = from_edge_list(2, [(0, 1, 1.0)])
    solver_by_name("gw2", seed=0, restarts=1, steps0=4).fit(g)
    solver_by_name("ls2", seed=0, tries=1).fit(g)


def _run_cell(cell, solvers, master_seed, schedule_kwargs, tries):
    family, n, param, seed = cell
    graph_id = f"{family}-n{n}-p{param}-s{seed}"
    records = []
    try:
        g = _make_graph(family, n, param, seed)
    except Exception as exc:  # record the whole cell as failed rows
        for solver in solvers:
            records.append(BenchRecord(
                graph_id, n, 0, family, param, seed, solver,
                cut=float("nan"), best_known=None, delta_pct=None,
                time_ms=0.0, steps=0, restarts=0, status=f"error:{exc}",
            ))
        return records

    cuts: dict[str, float] = {}
    for solver in solvers:
        kwargs = dict(schedule_kwargs)
        if solver in ("ls1", "ls2"):
            kwargs = {"tries": tries}
        elif solver == "brute":
            kwargs = {}
        try:
            est = solver_by_name(solver, seed=master_seed * 1_000_003 + seed, **kwargs)
            est.fit(g)
            res = est.result_
            cuts[solver] = res.cut
            records.append(BenchRecord(
                graph_id, g.n, g.m, family, param, seed, solver,
                cut=res.cut, best_known=None, delta_pct=None,
                time_ms=res.time_ms, steps=res.steps, restarts=res.restarts,
            ))
        except Exception as exc:
            records.append(BenchRecord(
                graph_id, g.n, g.m, family, param, seed, solver,
                cut=float("nan"), best_known=None, delta_pct=None,
                time_ms=0.0, steps=0, restarts=0, status=f"error:{exc}",
            ))

    # reference cut for the discrepancy column: exact if present, else
    # the strongest local search in the sweep
    ref = next((s for s in ("brute", "ls2", "ls1") if s in cuts), None)
    for rec in records:
        if rec.status != "ok":
            continue
        if "brute" in cuts:
            rec.best_known = cuts["brute"]
        if ref is not None and rec.solver != ref and cuts[ref] + rec.cut > 0:
            rec.delta_pct = discrepancy_delta(cuts[ref], rec.cut)
    return records


def run_sweep(
    cells,
    solvers,
    master_seed: int = 0,
    threads: int = 1,
    schedule_kwargs: dict | None = None,
    tries: int = 1000,
) -> list[BenchRecord]:
    """Run all cells x solvers; returns records sorted by cell key.

    Output is identical at any thread count except the time_ms column.
    """
    if not cells:
        raise ValueError("empty sweep: no cells to run")
    unknown = [s for s in solvers if s not in SOLVER_NAMES]
    if unknown:
        raise ValueError(f"unknown solvers {unknown}; choose from {SOLVER_NAMES}")
    _warmup()
    schedule_kwargs = schedule_kwargs or {}
    if threads <= 1:
        batches = [_run_cell(c, solvers, master_seed, schedule_kwargs, tries) for c in cells]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(
                lambda c: _run_cell(c, solvers, master_seed, schedule_kwargs, tries), cells
            ))
    records = [rec for batch in batches for rec in batch]
    records.sort(key=BenchRecord.sort_key)
    return records


def fit_scaling_exponent(records, solver: str) -> float | None:
    """Least-squares slope of log(time) vs log(edge count) for one solver."""
    pts = [
        (r.m, r.time_ms)
        for r in records
        if r.solver == solver and r.status == "ok" and r.m > 0 and r.time_ms > 0
    ]
    if len(pts) < 2:
        return None
    x = np.log10([p[0] for p in pts])
    y = np.log10([p[1] for p in pts])
    if np.ptp(x) == 0:
        return None
    return float(np.polyfit(x, y, 1)[0])


def write_csv(records, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for rec in records:
            writer.writerow(rec.to_row())


def read_csv(path) -> list[BenchRecord]:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_FIELDS:
            raise ValueError(f"unexpected CSV header: {header}")
        return [BenchRecord.from_row(row) for row in reader]


def records_digest(records) -> str:
    """Canonical text of a record list with timing stripped (for
    determinism comparisons)."""
    buf = io.StringIO()
    for rec in sorted(records, key=BenchRecord.sort_key):
        row = rec.to_row()
        row[CSV_FIELDS.index("time_ms")] = "-"
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Minimal SVG scatter (no plotting dependency; CSV is the primary artifact)
# ---------------------------------------------------------------------------

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _axis(vals):
    lo, hi = min(vals), max(vals)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def render_svg(records, path) -> None:
    """Log-log scatter of run time vs edge count, one color per solver,
    with a second panel of the discrepancy column when present."""
    ok = [r for r in records if r.status == "ok" and r.m > 0 and r.time_ms > 0]
    if not ok:
        raise ValueError("nothing to plot: no successful rows")
    solvers = sorted({r.solver for r in ok})
    width, height, margin = 540, 400, 55
    panel_w = width - 2 * margin

    xs = [math.log10(r.m) for r in ok]
    ys = [math.log10(r.time_ms / 1000.0) for r in ok]
    x0, x1 = _axis(xs)
    y0, y1 = _axis(ys)

    def sx(v):
        return margin + (v - x0) / (x1 - x0) * panel_w

    def sy(v):
        return height - margin - (v - y0) / (y1 - y0) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 260}" height="{height}">',
        f'<rect x="{margin}" y="{margin}" width="{panel_w}" height="{height - 2 * margin}" '
        'fill="none" stroke="#333"/>',
        f'<text x="{width / 2}" y="{height - 12}" text-anchor="middle" font-size="12">'
        "log10(edges)</text>",
        f'<text x="16" y="{height / 2}" font-size="12" '
        f'transform="rotate(-90 16 {height / 2})" text-anchor="middle">log10(time, s)</text>',
    ]
    for i, solver in enumerate(solvers):
        color = _COLORS[i % len(_COLORS)]
        for r in ok:
            if r.solver != solver:
                continue
            parts.append(
                f'<circle cx="{sx(math.log10(r.m)):.1f}" '
                f'cy="{sy(math.log10(r.time_ms / 1000.0)):.1f}" r="3.5" '
                f'fill="{color}" fill-opacity="0.75"/>'
            )
        exp = fit_scaling_exponent(ok, solver)
        label = solver if exp is None else f"{solver} (slope {exp:.2f})"
        parts.append(
            f'<circle cx="{width + 14}" cy="{margin + 18 * i}" r="4" fill="{color}"/>'
            f'<text x="{width + 24}" y="{margin + 18 * i + 4}" font-size="12">{label}</text>'
        )

    deltas = [r for r in ok if r.delta_pct is not None]
    if deltas:
        # inset: discrepancy (percent) vs log10(edges)
        iw, ih = 180, 120
        ix, iy = width + 10, height - margin - ih
        dvals = [r.delta_pct for r in deltas]
        d0, d1 = _axis(dvals)

        def isx(v):
            return ix + (v - x0) / (x1 - x0) * iw

        def isy(v):
            return iy + ih - (v - d0) / (d1 - d0) * ih

        parts.append(
            f'<rect x="{ix}" y="{iy}" width="{iw}" height="{ih}" fill="none" stroke="#666"/>'
            f'<text x="{ix + iw / 2}" y="{iy - 6}" text-anchor="middle" font-size="11">'
            "discrepancy, %</text>"
        )
        for r in deltas:
            i = solvers.index(r.solver)
            parts.append(
                f'<circle cx="{isx(math.log10(r.m)):.1f}" cy="{isy(r.delta_pct):.1f}" '
                f'r="2.5" fill="{_COLORS[i % len(_COLORS)]}" fill-opacity="0.75"/>'
            )
        if d0 < 0 < d1:
            parts.append(
                f'<line x1="{ix}" y1="{isy(0):.1f}" x2="{ix + iw}" y2="{isy(0):.1f}" '
                'stroke="#999" stroke-dasharray="3,3"/>'
            )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts))
