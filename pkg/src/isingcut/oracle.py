"""Ground-truth engines: exact enumeration, identity verifiers,
nondifferentiable-point classification, and gradient cross-checks.

These are the independent references the test suite measures the
solvers against; none of them share code with the integration paths
they validate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import KinkProximityError, TooLargeError
from .graph import Graph
from .objectives import (
    ModelKind,
    core_phi,
    cut_size,
    gw_objective_sx,
    principal_value,
    relaxed_objective,
)
from .dynamics import gw2_velocity, relax_gradient
from .rng import derive_rng, random_spins
from .validation import check_spins, check_xi

__all__ = [
    "brute_force_maxcut",
    "verify_identities",
    "IdentityReport",
    "saddle_probe",
    "SaddleReport",
    "finite_diff_check",
]

BRUTE_FORCE_LIMIT = 26


def brute_force_maxcut(g: Graph) -> tuple[float, np.ndarray]:
    """Exact maximum cut by Gray-code enumeration over 2^(n-1) states.

    Node 0 is pinned to +1 (global spin flip leaves the cut unchanged).
    """
    if g.n > BRUTE_FORCE_LIMIT:
        raise TooLargeError(f"brute force limited to n <= {BRUTE_FORCE_LIMIT}, got {g.n}")
    if g.n == 1:
        return 0.0, np.ones(1, dtype=np.int8)
    best, code = _kernels.brute_force_gray(g.indptr, g.nbr, g.nbr_w, g.n)
    sigma = np.ones(g.n, dtype=np.int8)
    for j in range(g.n - 1):
        if (int(code) >> j) & 1:
            sigma[j + 1] = -1
    return float(best), sigma


@dataclass
class IdentityReport:
    samples: int
    max_violation: float
    per_identity: dict[str, float] = field(default_factory=dict)

    def ok(self, tol: float = 1e-12) -> bool:
        return self.max_violation <= tol


def verify_identities(g: Graph, samples: int, seed: int) -> IdentityReport:
    """Evaluate the algebraic identities tying the split objective to cuts.

    Per random sample: the edgewise split of the relaxed counting
    function, the homogeneity of the continuous correction under level
    scaling, the half-cut-difference formula along 0/1 indicator
    directions, and the sign-homogeneity of the velocity field.  Reports
    the worst absolute violation across everything.
    """
    rng = derive_rng(seed, g.n, g.m)
    worst = {"split": 0.0, "scaling": 0.0, "cut_variation": 0.0, "grad_sign": 0.0}
    for _ in range(samples):
        sigma = random_spins(g.n, rng)
        x = 2.0 * rng.random(g.n) - 1.0

        # edgewise split of the counting function
        dx = x[g.eu] - x[g.ev]
        ds = sigma[g.eu].astype(np.float64) - sigma[g.ev]
        ss = (sigma[g.eu] * sigma[g.ev]).astype(np.float64)
        lhs = core_phi(ModelKind.GW, dx + ds)
        rhs = 0.5 * (1.0 - ss) + ss * core_phi(ModelKind.GW, dx)
        if g.m:
            worst["split"] = max(worst["split"], float(np.max(np.abs(lhs - rhs))))

        # homogeneity under level scaling
        lam = float(rng.uniform(-1.0, 1.0))
        base_cut = cut_size(g, sigma)
        corr = gw_objective_sx(g, sigma, x) - base_cut
        lhs_s = gw_objective_sx(g, sigma, lam * x)
        rhs_s = base_cut + abs(lam) * corr
        worst["scaling"] = max(worst["scaling"], abs(lhs_s - rhs_s))

        # half-cut-difference along an indicator direction
        sigma2 = random_spins(g.n, rng)
        delta = (sigma2 != sigma).astype(np.float64)
        corr_delta = gw_objective_sx(g, sigma, delta) - base_cut
        target = 0.5 * (cut_size(g, sigma2) - base_cut)
        worst["cut_variation"] = max(worst["cut_variation"], abs(corr_delta - target))

        # velocity field flips sign with the scaling sign
        y = 0.9 * (2.0 * rng.random(g.n) - 1.0)
        lam2 = float(rng.uniform(0.25, 1.0)) * (1 if rng.random() < 0.5 else -1)
        from .staterep import SxState

        v_scaled = gw2_velocity(g, SxState(sigma, lam2 * y))
        v_base = gw2_velocity(g, SxState(sigma, y))
        worst["grad_sign"] = max(
            worst["grad_sign"], float(np.max(np.abs(v_scaled - np.sign(lam2) * v_base)))
        )
    return IdentityReport(
        samples=samples,
        max_violation=max(worst.values()),
        per_identity=worst,
    )


@dataclass
class SaddleReport:
    cut: float
    max_cut: float
    classification: str  # "minimum" | "saddle" | "maximum"
    slope_down: float | None
    slope_up: float | None
    linearity_violation: float


def saddle_probe(g: Graph, sigma) -> SaddleReport:
    """Classify a binary state of the piecewise-linear objective.

    States with 0 < cut < max cut admit both an ascent and a descent
    direction along 0/1 indicator vectors (slopes are half the cut
    difference); the zero-cut states admit no descent and the max-cut
    states no ascent.  The directional objective is checked to be exactly
    linear along the probed segments.
    """
    if g.n > 20:
        raise TooLargeError(f"saddle probe needs enumeration, limited to n <= 20, got {g.n}")
    s = check_spins(sigma, n=g.n)
    cbar, smax = brute_force_maxcut(g)
    c = cut_size(g, s)

    def directional_violation(target: np.ndarray) -> tuple[float, float]:
        delta = (target != s).astype(np.float64)
        slope = 0.5 * (cut_size(g, target) - c)
        dev = 0.0
        for t in (0.25, 0.5, 0.75):
            val = relaxed_objective(g, s + t * delta, ModelKind.GW)
            dev = max(dev, abs(val - (c + t * slope)))
        return slope, dev

    slope_up = slope_down = None
    violation = 0.0
    if c < cbar:
        slope_up, dev = directional_violation(smax)
        violation = max(violation, dev)
    if c > 0:
        ones = np.ones(g.n, dtype=np.int8)
        slope_down, dev = directional_violation(ones)
        violation = max(violation, dev)

    if c == 0:
        kind = "minimum"
    elif c == cbar:
        kind = "maximum"
    else:
        kind = "saddle"
    return SaddleReport(
        cut=c,
        max_cut=cbar,
        classification=kind,
        slope_down=slope_down,
        slope_up=slope_up,
        linearity_violation=violation,
    )


_TR_KINKS = (1.0, 2.0)


def finite_diff_check(g: Graph, xi, model, h: float = 1e-5) -> float:
    """Max deviation between the analytic gradient and central differences.

    Refuses states whose edge differences come within 10h of a
    nondifferentiable point of the core function (triangular kinks at
    |d| = 1 and the period peak |d| = 2).
    """
    model = ModelKind.coerce(model)
    x = check_xi(xi, n=g.n)
    d = np.abs(principal_value(x[g.eu] - x[g.ev]))
    if model is ModelKind.TRIANGULAR and g.m:
        margin = min(float(np.min(np.abs(d - k))) for k in _TR_KINKS)
        if margin <= 10.0 * h:
            raise KinkProximityError(
                f"edge difference within {margin:.2g} of a kink (need > {10 * h:.2g})"
            )
    grad = relax_gradient(g, x, model)
    worst = 0.0
    for m in range(g.n):
        xp = x.copy()
        xm = x.copy()
        xp[m] += h
        xm[m] -= h
        fd = (relaxed_objective(g, xp, model) - relaxed_objective(g, xm, model)) / (2 * h)
        worst = max(worst, abs(grad[m] - fd))
    return worst
