"""Time evolution of the relaxation machines.

Two integrators live here.  The piecewise-linear machine evolves the
split state (sigma, X) by Euler steps of the level velocities with
boundary wrapping; its objective is a Lyapunov function, so each restart
leg climbs until the objective stalls, then the continuous component is
redrawn at a shrinking amplitude while the spins are kept.  The smooth
relaxations (SDP, triangular) evolve the raw state xi by plain gradient
ascent and feed the piecewise-linear stage in the heterogeneous
pipeline.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .graph import Graph
from .objectives import ModelKind, core_phi_deriv, cut_size, node_field, relaxed_objective
from .rng import derive_rng
from .staterep import EPS_GROUP, SxState, decompose, group_levels, snap_levels, update
from .validation import check_xi

__all__ = [
    "Schedule",
    "Trajectory",
    "RunResult",
    "HeteroConfig",
    "gw2_velocity",
    "gw2_step",
    "gw2_step_instrumented",
    "gw2_run",
    "equilibrium_test",
    "run_until_equilibrium",
    "polish_to_equilibrium",
    "relax_gradient",
    "relax_run",
    "hetero_run",
    "random_xi",
]

DEFAULT_DT0 = 0.05


@dataclass(frozen=True)
class Schedule:
    """Restart schedule for the piecewise-linear machine.

    Per restart k the leg runs ``steps0 * step_growth**k`` steps at time
    step ``dt0 * dt_shrink**k``; afterwards the levels are redrawn
    uniformly at amplitude ``reinit_amplitude * dt_shrink**k`` while the
    spins are kept.  ``dt0=None`` picks ``min(0.05, 1/(max_deg * max_w))``
    for the graph at hand, which keeps every Euler step well inside the
    wrap limit.  A leg ends early once the objective gains no more than
    ``equilibrium_tol`` over a sweep of 2n steps.
    """

    restarts: int = 50
    steps0: int = 200
    dt0: float | None = None
    step_growth: float = 1.05
    dt_shrink: float = 0.95
    equilibrium_tol: float = 1e-9
    reinit_amplitude: float = 0.5

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.steps0 < 1:
            raise ValueError("steps0 must be >= 1")
        if self.dt0 is not None and self.dt0 <= 0:
            raise ValueError("dt0 must be positive")
        if self.step_growth < 1.0:
            raise ValueError("step_growth must be >= 1")
        if not 0.0 < self.dt_shrink <= 1.0:
            raise ValueError("dt_shrink must be in (0, 1]")
        if not 0.0 <= self.reinit_amplitude < 1.0:
            raise ValueError("reinit_amplitude must be in [0, 1)")

    def resolve_dt0(self, g: Graph) -> float:
        """Concrete initial time step for this graph; raises if infeasible."""
        cap = g.max_degree * g.max_weight
        dt0 = self.dt0 if self.dt0 is not None else min(DEFAULT_DT0, 1.0 / max(cap, 1e-12))
        if dt0 * cap >= 2.0:
            raise ValueError(
                f"infeasible schedule: dt0 * max_degree * max_weight = {dt0 * cap:.3g} >= 2"
            )
        return dt0


@dataclass
class Trajectory:
    """Outcome of one multi-restart run."""

    terminal: SxState  # best-cut spins with zero levels
    objective_series: np.ndarray  # objective checkpoints, one per sweep
    cut_series: np.ndarray  # cut of the terminal spins of each restart
    flips: int
    converged: bool
    steps_taken: int
    last_state: SxState  # raw integrator state at the end of the final leg
    best_restart: int


@dataclass
class RunResult:
    """Solver-level summary shared by all pipelines."""

    sigma: np.ndarray
    cut: float
    steps: int
    restarts: int
    time_ms: float
    converged: bool
    flips: int = 0


def gw2_velocity(g: Graph, state: SxState, eps: float = EPS_GROUP) -> np.ndarray:
    """Level velocities: each edge pushes its endpoints' levels apart when
    the spins agree and together when they disagree, at rate w/2, with no
    force inside ``eps`` of coincidence or of the antipodal gap 2."""
    vel = np.empty(g.n, dtype=np.float64)
    _kernels.velocity_into(g.eu, g.ev, g.ew, state.sigma, state.x, eps, vel)
    return vel


def gw2_step(g: Graph, state: SxState, dt: float, eps: float = EPS_GROUP) -> SxState:
    """One Euler step with boundary wrapping."""
    vel = gw2_velocity(g, state, eps)
    dx = dt * vel
    return update(state, dx)


def gw2_step_instrumented(g: Graph, state: SxState, dt: float, eps: float = EPS_GROUP):
    """Like :func:`gw2_step` but also reports, for every spin that
    flipped, its node field just before the crossing.

    Returns (new_state, {node: field_before_flip}).
    """
    vel = gw2_velocity(g, state, eps)
    new = update(state, dt * vel)
    crossed = np.nonzero(new.sigma != state.sigma)[0]
    fields = {int(m): node_field(g, state.sigma, int(m)) for m in crossed}
    return new, fields


def _objective_buffer(max_steps: int, sweep: int) -> np.ndarray:
    return np.empty(max_steps // sweep + 2, dtype=np.float64)


def gw2_run(g: Graph, init: SxState, sched: Schedule, seed: int) -> Trajectory:
    """Multi-restart Euler integration of the piecewise-linear flow.

    Restart k keeps the spins of the previous terminal state and redraws
    the levels at the schedule's shrinking amplitude.  The best terminal
    cut over all restarts wins (ties to the earlier restart), and the
    returned terminal state carries those spins with the levels zeroed.
    """
    if init.n != g.n:
        raise ValueError(f"initial state has {init.n} nodes, graph has {g.n}")
    dt0 = sched.resolve_dt0(g)
    sweep = max(2 * g.n, 8)
    sig = init.sigma.copy()
    x = init.x.copy()
    obj_parts: list[np.ndarray] = []
    cut_series = np.empty(sched.restarts, dtype=np.float64)
    best_cut = -np.inf
    best_sigma = sig.copy()
    best_restart = 0
    total_steps = 0
    total_flips = 0
    early_stop = False
    for k in range(sched.restarts):
        if k > 0:
            amp = sched.reinit_amplitude * sched.dt_shrink**k
            rng = derive_rng(seed, k)
            x = amp * (2.0 * rng.random(g.n) - 1.0)
        dt_k = dt0 * sched.dt_shrink**k
        steps_k = max(1, int(round(sched.steps0 * sched.step_growth**k)))
        obj_out = _objective_buffer(steps_k, sweep)
        steps, flips, n_obj = _kernels.gw2_leg(
            g.eu, g.ev, g.ew, sig, x, dt_k, steps_k,
            EPS_GROUP, sched.equilibrium_tol, sweep, obj_out,
        )
        total_steps += int(steps)
        total_flips += int(flips)
        early_stop = steps < steps_k
        obj_parts.append(obj_out[:n_obj].copy())
        cut_k = _kernels.cut_value(g.eu, g.ev, g.ew, sig)
        cut_series[k] = cut_k
        if cut_k > best_cut:
            best_cut = cut_k
            best_sigma = sig.copy()
            best_restart = k
    last_state = SxState(sig.copy(), x.copy())
    terminal = SxState.binary(best_sigma)
    return Trajectory(
        terminal=terminal,
        objective_series=np.concatenate(obj_parts) if obj_parts else np.empty(0),
        cut_series=cut_series,
        flips=total_flips,
        converged=early_stop,
        steps_taken=total_steps,
        last_state=last_state,
        best_restart=best_restart,
    )


def equilibrium_test(g: Graph, state: SxState, eps: float = EPS_GROUP) -> bool:
    """True iff the velocity vanishes identically and every level group
    is balanced (zero grouped derivative of the objective)."""
    vel = gw2_velocity(g, state, eps)
    if np.any(vel != 0.0):
        return False
    for idx in group_levels(state.x, eps):
        if vel[idx].sum() != 0.0:
            return False
    return True


def grouped_critical_test(g: Graph, state: SxState, eps: float = EPS_GROUP) -> bool:
    """True iff every level group has exactly zero grouped derivative.

    This is the stationarity notion of the sliding regime: a coincident
    group whose members pull in opposite directions but whose net force
    vanishes stays put as a unit.  Strict equilibria (zero velocity per
    node) are a subset.
    """
    vel = gw2_velocity(g, state, eps)
    for idx in group_levels(state.x, eps):
        if vel[idx].sum() != 0.0:
            return False
    return True


def _snap_ladder(dt: float, g: Graph) -> list[float]:
    scale = dt * max(g.max_degree * g.max_weight, 1.0)
    tols = [EPS_GROUP, 1e-6, 0.25 * scale, 0.75 * scale, 1.5 * scale, 3.0 * scale]
    return [t for t in sorted(set(tols)) if t <= 0.25]


def try_snap_equilibrium(g: Graph, state: SxState, dt: float):
    """Snap chatter bands at increasing tolerances until the snapped
    state passes the exact equilibrium test; None if none does."""
    for tol in _snap_ladder(dt, g):
        snapped = snap_levels(state, tol)
        if equilibrium_test(g, snapped):
            return snapped
    return None


def run_until_equilibrium(
    g: Graph,
    state: SxState,
    dt: float,
    max_steps: int,
    eps: float = EPS_GROUP,
):
    """Integrate at fixed dt until a snapped equilibrium appears.

    Checks once per sweep of 2n steps.  Returns (state, steps, converged)
    where the state is the snapped equilibrium when converged.
    """
    sig = state.sigma.copy()
    x = state.x.copy()
    sweep = max(2 * g.n, 8)
    steps_done = 0
    while True:
        candidate = try_snap_equilibrium(g, SxState(sig.copy(), x.copy()), dt)
        if candidate is not None:
            return candidate, steps_done, True
        if steps_done >= max_steps:
            return SxState(sig, x), steps_done, False
        burst = min(sweep, max_steps - steps_done)
        obj_out = _objective_buffer(burst, sweep)
        _kernels.gw2_leg(
            g.eu, g.ev, g.ew, sig, x, dt, burst, eps, -1.0, burst + 1, obj_out
        )
        steps_done += burst


def polish_to_equilibrium(g: Graph, state: SxState, dt: float, rounds: int = 5) -> SxState:
    """Drive a near-terminal state to an exact critical point.

    Retries with halved time steps; if no non-binary critical point is
    isolated the levels are dropped entirely, which is always critical.
    """
    st = state
    for r in range(rounds):
        dt_r = dt * 0.5**r
        st, _, ok = run_until_equilibrium(g, st, dt_r, max_steps=8 * g.n + 200)
        if ok:
            return st
    return SxState.binary(st.sigma)


def relax_gradient(g: Graph, xi, model) -> np.ndarray:
    """Ascent direction of the smooth relaxed objectives (SDP, triangular)."""
    model = ModelKind.coerce(model)
    if model not in (ModelKind.SDP, ModelKind.TRIANGULAR):
        raise ValueError(f"gradient flow is defined for SDP/Triangular, got {model}")
    x = check_xi(xi, n=g.n)
    c = g.ew * core_phi_deriv(model, x[g.eu] - x[g.ev])
    return (
        np.bincount(g.eu, weights=c, minlength=g.n)
        - np.bincount(g.ev, weights=c, minlength=g.n)
    )


def relax_run(g: Graph, xi0, model, steps: int, dt: float) -> np.ndarray:
    """Euler gradient ascent of a smooth relaxation; returns the final state."""
    x = check_xi(xi0, n=g.n).copy()
    for _ in range(steps):
        x += dt * relax_gradient(g, x, model)
    return x


def random_xi(n: int, rng: np.random.Generator) -> np.ndarray:
    """Generic state: i.i.d. uniform on the principal period (-2, 2]."""
    return 2.0 - 4.0 * rng.random(n)


@dataclass(frozen=True)
class HeteroConfig:
    """Two-stage pipeline settings: a smooth relaxation stage feeding the
    piecewise-linear stage that rounds and post-processes dynamically."""

    first_stage: ModelKind | str = ModelKind.TRIANGULAR
    stage1_steps: int = 500
    stage1_dt: float | None = None
    schedule: Schedule = field(default_factory=Schedule)
    # None = check the rounding bound on graphs small enough to afford it
    check_rounding_bound: bool | None = None

    def resolved_stage1_dt(self, g: Graph) -> float:
        if self.stage1_dt is not None:
            return self.stage1_dt
        return min(DEFAULT_DT0, 1.0 / max(g.max_degree * g.max_weight, 1e-12))


def hetero_run(g: Graph, config: HeteroConfig, seed: int) -> RunResult:
    """Smooth-relaxation stage from a generic random state, then the
    piecewise-linear stage started from its split decomposition.

    The second stage's terminal cut must be at least the best rounding of
    the first stage's terminal state; this bound is asserted when the
    graph is small enough (or when explicitly requested).
    """
    t0 = time.perf_counter()
    model = ModelKind.coerce(config.first_stage)
    rng = derive_rng(seed, 0xA11CE)
    xi0 = random_xi(g.n, rng)
    xi1 = relax_run(g, xi0, model, config.stage1_steps, config.resolved_stage1_dt(g))
    check = config.check_rounding_bound
    if check is None:
        check = g.n <= 1024
    bound = None
    if check:
        from .staterep import best_rounding

        bound = best_rounding(g, xi1)[1]
    traj = gw2_run(g, SxState.from_xi(xi1), config.schedule, seed)
    cut = cut_size(g, traj.terminal.sigma)
    if bound is not None:
        assert cut >= bound - 1e-9, (
            f"second stage cut {cut} fell below the stage-1 rounding bound {bound}"
        )
    elapsed = (time.perf_counter() - t0) * 1000.0
    return RunResult(
        sigma=traj.terminal.sigma,
        cut=cut,
        steps=config.stage1_steps + traj.steps_taken,
        restarts=config.schedule.restarts,
        time_ms=elapsed,
        converged=traj.converged,
        flips=traj.flips,
    )
