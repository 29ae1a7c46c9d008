"""Split representation of circle-valued states and rounding centers.

Any real ``xi`` decomposes uniquely as ``sigma + X + 4k`` with
``sigma in {-1, +1}``, ``X in (-1, 1]`` and integer ``k``: the binary
part plus a bounded continuous perturbation.  Shifting the reference
point by ``r`` before decomposing yields the rounding family
``sigma(r)``; scanning ``r`` over a half period visits every binary
state obtainable from ``xi`` by directional rounding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .objectives import cut_size
from .validation import check_levels, check_spins, check_xi

__all__ = [
    "EPS_GROUP",
    "SxState",
    "decompose",
    "compose",
    "update",
    "round_at",
    "best_rounding",
    "rounding_orbit",
    "RoundingOrbit",
    "group_levels",
    "snap_levels",
]

# Two levels closer than this count as coincident: they exert no force
# on each other and belong to the same rounding group.
EPS_GROUP = 1e-9


@dataclass(frozen=True)
class SxState:
    """A state split into spins and bounded level offsets."""

    sigma: np.ndarray  # int8, entries +-1
    x: np.ndarray  # float64, entries in (-1, 1]

    def __post_init__(self):
        object.__setattr__(self, "sigma", check_spins(self.sigma))
        object.__setattr__(self, "x", check_levels(self.x, n=len(self.sigma)))

    @property
    def n(self) -> int:
        return len(self.sigma)

    def xi(self) -> np.ndarray:
        """The circle-valued state sigma + X."""
        return self.sigma.astype(np.float64) + self.x

    def copy(self) -> "SxState":
        return SxState(self.sigma.copy(), self.x.copy())

    @classmethod
    def from_xi(cls, xi) -> "SxState":
        sigma, x, _ = decompose(xi)
        return cls(sigma, x)

    @classmethod
    def binary(cls, sigma) -> "SxState":
        sigma = check_spins(sigma)
        return cls(sigma, np.zeros(len(sigma)))


def decompose(xi):
    """Split xi (scalar or vector) into (sigma, X, k) with xi = sigma + X + 4k.

    The boundary convention X in (-1, 1] makes the split unique; in
    particular xi on an even integer resolves to sigma = -1, X = 1
    (for xi = 0 mod 4) or sigma = +1, X = 1 (for xi = 2 mod 4).
    """
    arr = np.asarray(xi, dtype=np.float64)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    k = np.floor((arr + 2.0) / 4.0)
    y = arr - 4.0 * k  # in [-2, 2)
    at_low_edge = y == -2.0
    y = np.where(at_low_edge, 2.0, y)
    k = np.where(at_low_edge, k - 1.0, k)
    sigma = np.where(y > 0.0, 1, -1).astype(np.int8)
    x = y - sigma
    k = k.astype(np.int64)
    if scalar:
        return int(sigma[0]), float(x[0]), int(k[0])
    return sigma, x, k


def compose(sigma, x) -> np.ndarray:
    """Inverse of :func:`decompose` on the principal period: sigma + X."""
    sigma = check_spins(sigma)
    x = check_levels(x, n=len(sigma))
    return sigma.astype(np.float64) + x


def update(state: SxState, dx) -> SxState:
    """Advance the levels by dx and wrap across the (-1, 1] boundaries.

    A component leaving the interval re-enters from the opposite end
    with its spin inverted, so the result represents the same point of
    the period-4 circle as xi + dx.  Requires ||dx||_inf < 2 (one wrap
    at most).
    """
    dx = np.asarray(dx, dtype=np.float64)
    if dx.shape != state.x.shape:
        raise ValueError(f"step has shape {dx.shape}, state has {state.x.shape}")
    if np.max(np.abs(dx)) >= 2.0:
        raise ValueError("step too large: ||dx||_inf must be < 2")
    x = state.x + dx
    sigma = state.sigma.copy()
    high = x > 1.0
    low = x <= -1.0
    x = np.where(high, x - 2.0, x)
    x = np.where(low, x + 2.0, x)
    sigma[high | low] *= -1
    return SxState(sigma, x)


def round_at(g: Graph, xi, r: float) -> np.ndarray:
    """Binary state obtained by decomposing xi - r (the rounding at center r)."""
    x = check_xi(xi, n=g.n)
    sigma, _, _ = decompose(x - r)
    return sigma


def group_levels(x, eps: float = EPS_GROUP) -> list[np.ndarray]:
    """Partition indices into level groups, ordered by ascending level.

    Groups are formed by chaining: consecutive sorted levels closer than
    eps join the same group.
    """
    x = np.asarray(x, dtype=np.float64)
    order = np.argsort(x, kind="stable")
    groups: list[np.ndarray] = []
    start = 0
    for i in range(1, len(order)):
        if x[order[i]] - x[order[i - 1]] > eps:
            groups.append(order[start:i])
            start = i
    groups.append(order[start:])
    return groups


def snap_levels(state: SxState, tol: float) -> SxState:
    """Collapse levels within tol of each other onto their group mean.

    Euler integration leaves would-be coincident levels jittering within
    a band proportional to the time step; snapping removes the jitter so
    that exact criticality tests can be applied.
    """
    x = state.x.copy()
    for idx in group_levels(x, tol):
        if len(idx) > 1:
            x[idx] = float(np.mean(x[idx]))
    return SxState(state.sigma.copy(), x)


@dataclass(frozen=True)
class RoundingOrbit:
    """All roundings of a state over half a period of the center.

    ``centers[i]`` is the breakpoint where group i flips; ``states[i]``
    is the rounding anywhere in [centers[i], centers[i+1]) and
    ``cuts[i]`` its cut value.
    """

    centers: np.ndarray
    states: list[np.ndarray]
    cuts: np.ndarray


def _breakpoints(xi, eps: float) -> np.ndarray:
    _, x0, _ = decompose(np.asarray(xi, dtype=np.float64))
    reps = np.array([x0[idx[0]] for idx in group_levels(x0, eps)])
    return np.sort(np.mod(1.0 + reps, 2.0))


def rounding_orbit(g: Graph, xi, eps: float = EPS_GROUP) -> RoundingOrbit:
    """Enumerate the rounding per interval between consecutive breakpoints.

    States are sampled strictly inside each interval (rounding exactly
    at a breakpoint is ill-defined for the flipping group).
    """
    x = check_xi(xi, n=g.n)
    bps = _breakpoints(x, eps)
    states = []
    cuts = []
    for i, r in enumerate(bps):
        r_next = bps[i + 1] if i + 1 < len(bps) else bps[0] + 2.0
        probe = (r + r_next) / 2.0
        s = round_at(g, x, probe)
        states.append(s)
        cuts.append(cut_size(g, s))
    return RoundingOrbit(centers=bps, states=states, cuts=np.asarray(cuts))


def best_rounding(g: Graph, xi, eps: float = EPS_GROUP):
    """Exact maximizer of the cut over all rounding centers in [0, 2).

    The cut is constant between breakpoints, so probing one interior
    point per interval plus r = 0 is exhaustive.

    Returns (sigma, cut, r_star).
    """
    x = check_xi(xi, n=g.n)
    bps = _breakpoints(x, eps)
    candidates = [0.0]
    for i, r in enumerate(bps):
        r_next = bps[i + 1] if i + 1 < len(bps) else bps[0] + 2.0
        candidates.append(np.mod((r + r_next) / 2.0, 2.0))
    best_sigma = None
    best_cut = -np.inf
    best_r = 0.0
    for r in candidates:
        s = round_at(g, x, r)
        c = cut_size(g, s)
        if c > best_cut:
            best_sigma, best_cut, best_r = s, c, r
    return best_sigma, best_cut, best_r
