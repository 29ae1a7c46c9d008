"""Estimator-style solver front-ends.

Each solver is a scikit-learn ``BaseEstimator``: hyperparameters go to
``__init__`` unchanged (so ``get_params``/``set_params``/cloning work),
``fit(graph)`` runs the solve, and results land in trailing-underscore
attributes (``sigma_``, ``cut_``, ...).  ``fit`` accepts a
:class:`~isingcut.graph.Graph`, a dense adjacency matrix, or an edge
list ``(n, [(u, v, w), ...])``.
"""

from __future__ import annotations

import time

import numpy as np
from sklearn.base import BaseEstimator

from .dynamics import HeteroConfig, RunResult, Schedule, gw2_run, hetero_run, random_xi
from .graph import Graph, from_edge_list
from .localsearch import multistart
from .objectives import cut_size
from .oracle import brute_force_maxcut
from .rng import derive_rng
from .staterep import SxState

__all__ = [
    "as_graph",
    "GW2Machine",
    "HeteroMachine",
    "LocalSearchSolver",
    "BruteForceSolver",
    "solver_by_name",
    "SOLVER_NAMES",
]


def as_graph(obj) -> Graph:
    """Coerce supported inputs into a Graph."""
    if isinstance(obj, Graph):
        return obj
    if isinstance(obj, tuple) and len(obj) == 2:
        n, edges = obj
        return from_edge_list(int(n), edges)
    arr = np.asarray(obj)
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        if not np.allclose(arr, arr.T):
            raise ValueError("adjacency matrix must be symmetric")
        iu, iv = np.nonzero(np.triu(arr, k=1))
        return from_edge_list(arr.shape[0], zip(iu.tolist(), iv.tolist(), arr[iu, iv].tolist()))
    raise TypeError(f"cannot interpret {type(obj).__name__} as a graph")


class _CutSolverMixin:
    """Shared plumbing: fit bookkeeping and prediction helpers."""

    def fit_predict(self, graph, y=None) -> np.ndarray:
        self.fit(graph)
        return self.sigma_

    def _finish(self, result: RunResult):
        self.sigma_ = result.sigma
        self.cut_ = result.cut
        self.result_ = result
        return self


class GW2Machine(_CutSolverMixin, BaseEstimator):
    """Piecewise-linear machine started from a random non-binary state.

    Parameters mirror :class:`~isingcut.dynamics.Schedule`; ``dt0=None``
    adapts the step to the graph's maximum degree.
    """

    def __init__(
        self,
        restarts: int = 50,
        steps0: int = 200,
        dt0: float | None = None,
        step_growth: float = 1.05,
        dt_shrink: float = 0.95,
        equilibrium_tol: float = 1e-9,
        reinit_amplitude: float = 0.5,
        seed: int = 0,
    ):
        self.restarts = restarts
        self.steps0 = steps0
        self.dt0 = dt0
        self.step_growth = step_growth
        self.dt_shrink = dt_shrink
        self.equilibrium_tol = equilibrium_tol
        self.reinit_amplitude = reinit_amplitude
        self.seed = seed

    def schedule(self) -> Schedule:
        return Schedule(
            restarts=self.restarts,
            steps0=self.steps0,
            dt0=self.dt0,
            step_growth=self.step_growth,
            dt_shrink=self.dt_shrink,
            equilibrium_tol=self.equilibrium_tol,
            reinit_amplitude=self.reinit_amplitude,
        )

    def fit(self, graph, y=None):
        g = as_graph(graph)
        t0 = time.perf_counter()
        init = SxState.from_xi(random_xi(g.n, derive_rng(self.seed, 0x1711)))
        traj = gw2_run(g, init, self.schedule(), self.seed)
        elapsed = (time.perf_counter() - t0) * 1000.0
        self.trajectory_ = traj
        return self._finish(
            RunResult(
                sigma=traj.terminal.sigma,
                cut=cut_size(g, traj.terminal.sigma),
                steps=traj.steps_taken,
                restarts=self.restarts,
                time_ms=elapsed,
                converged=traj.converged,
                flips=traj.flips,
            )
        )


class HeteroMachine(_CutSolverMixin, BaseEstimator):
    """Smooth relaxation stage (SDP or triangular) feeding the
    piecewise-linear stage, which rounds and post-processes dynamically."""

    def __init__(
        self,
        first_stage: str = "triangular",
        stage1_steps: int = 500,
        stage1_dt: float | None = None,
        restarts: int = 50,
        steps0: int = 200,
        dt0: float | None = None,
        step_growth: float = 1.05,
        dt_shrink: float = 0.95,
        seed: int = 0,
    ):
        self.first_stage = first_stage
        self.stage1_steps = stage1_steps
        self.stage1_dt = stage1_dt
        self.restarts = restarts
        self.steps0 = steps0
        self.dt0 = dt0
        self.step_growth = step_growth
        self.dt_shrink = dt_shrink
        self.seed = seed

    def fit(self, graph, y=None):
        g = as_graph(graph)
        config = HeteroConfig(
            first_stage=self.first_stage,
            stage1_steps=self.stage1_steps,
            stage1_dt=self.stage1_dt,
            schedule=Schedule(
                restarts=self.restarts,
                steps0=self.steps0,
                dt0=self.dt0,
                step_growth=self.step_growth,
                dt_shrink=self.dt_shrink,
            ),
        )
        return self._finish(hetero_run(g, config, self.seed))


class LocalSearchSolver(_CutSolverMixin, BaseEstimator):
    """Multistart 1-opt or 2-opt local search."""

    def __init__(self, variant: str = "two_opt", tries: int = 1000, seed: int = 0):
        self.variant = variant
        self.tries = tries
        self.seed = seed

    def fit(self, graph, y=None):
        g = as_graph(graph)
        t0 = time.perf_counter()
        res = multistart(g, self.variant, self.tries, self.seed)
        elapsed = (time.perf_counter() - t0) * 1000.0
        return self._finish(
            RunResult(
                sigma=res.sigma,
                cut=res.cut,
                steps=res.flips,
                restarts=res.restarts_used,
                time_ms=elapsed,
                converged=True,
                flips=res.flips,
            )
        )


class BruteForceSolver(_CutSolverMixin, BaseEstimator):
    """Exact enumeration (n <= 26)."""

    def __init__(self):
        pass

    def fit(self, graph, y=None):
        g = as_graph(graph)
        t0 = time.perf_counter()
        cut, sigma = brute_force_maxcut(g)
        elapsed = (time.perf_counter() - t0) * 1000.0
        return self._finish(
            RunResult(
                sigma=sigma, cut=cut, steps=0, restarts=1,
                time_ms=elapsed, converged=True,
            )
        )


def solver_by_name(name: str, seed: int = 0, **schedule_kwargs) -> BaseEstimator:
    """Build the solver behind a CLI name.

    Names: gw2, tr_gw2, sdp_gw2, ls1, ls2, brute.  ``schedule_kwargs``
    are forwarded to the machine schedules; ``tries`` configures the
    local searches.
    """
    tries = schedule_kwargs.pop("tries", None)
    if name == "gw2":
        return GW2Machine(seed=seed, **schedule_kwargs)
    if name == "tr_gw2":
        return HeteroMachine(first_stage="triangular", seed=seed, **schedule_kwargs)
    if name == "sdp_gw2":
        return HeteroMachine(first_stage="sdp", seed=seed, **schedule_kwargs)
    if name == "ls1":
        return LocalSearchSolver(variant="one_opt", tries=tries or 1000, seed=seed)
    if name == "ls2":
        return LocalSearchSolver(variant="two_opt", tries=tries or 1000, seed=seed)
    if name == "brute":
        return BruteForceSolver()
    raise ValueError(f"unknown solver {name!r}; expected one of {sorted(SOLVER_NAMES)}")


SOLVER_NAMES = ("gw2", "tr_gw2", "sdp_gw2", "ls1", "ls2", "brute")
