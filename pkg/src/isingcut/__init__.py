"""Max-cut solvers built on relaxation-driven Ising machine dynamics.

The package couples a piecewise-linear gradient flow on split states
(spins plus bounded level offsets) with smooth SDP/triangular
relaxations, classic 1-opt/2-opt local search, exact enumeration, and a
benchmark CLI.  Solver front-ends follow the scikit-learn estimator
convention (``fit`` on a graph, trailing-underscore attributes).
"""

from .errors import (
    DuplicateEdgeError,
    GraphError,
    IsingcutError,
    KinkProximityError,
    NodeIndexError,
    ParseError,
    RetryExhaustedError,
    SelfLoopError,
    TooLargeError,
)
from .graph import Graph, from_edge_list, gen_d_regular, gen_erdos_renyi, read_graph, write_graph
from .objectives import (
    ModelKind,
    core_phi,
    core_phi_deriv,
    cut_size,
    discrepancy_delta,
    gw_objective_sx,
    ising_energy,
    node_field,
    relaxed_objective,
)
from .staterep import (
    EPS_GROUP,
    RoundingOrbit,
    SxState,
    best_rounding,
    compose,
    decompose,
    round_at,
    rounding_orbit,
    update,
)
from .dynamics import (
    HeteroConfig,
    RunResult,
    Schedule,
    Trajectory,
    equilibrium_test,
    gw2_run,
    gw2_step,
    gw2_velocity,
    hetero_run,
    relax_gradient,
    relax_run,
)
from .localsearch import LsResult, multistart, one_opt, two_opt
from .oracle import brute_force_maxcut, finite_diff_check, saddle_probe, verify_identities
from .solvers import (
    BruteForceSolver,
    GW2Machine,
    HeteroMachine,
    LocalSearchSolver,
    solver_by_name,
)

__version__ = "0.1.0"
