"""Cut objectives: discrete energy/cut, relaxed edge scores, node fields.

Every relaxation scores an edge by a period-4 "core" function of the
difference of its endpoint variables.  On the principal period (-2, 2]:

* Ising     : x^2 / 4, defined only on binary differences {-2, 0, 2}
* SDP       : (1 - cos(pi x / 2)) / 2
* Triangular: x^2 / 2 for |x| <= 1, else 1 - (|x| - 2)^2 / 2
* GW        : |x| / 2

All of them vanish at 0 and reach 1 at +-2, so on binary states every
relaxed objective coincides with the plain cut size.  Edge sums here
iterate each undirected edge once; coefficients already absorb the
factor 2 that a sum over ordered pairs would carry.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import NodeIndexError
from .graph import Graph
from .validation import check_lengths, check_spins, check_levels, check_xi

__all__ = [
    "ModelKind",
    "principal_value",
    "ising_energy",
    "cut_size",
    "node_field",
    "core_phi",
    "core_phi_deriv",
    "relaxed_objective",
    "gw_objective_sx",
    "discrepancy_delta",
]


class ModelKind(Enum):
    ISING = "ising"
    SDP = "sdp"
    TRIANGULAR = "triangular"
    GW = "gw"

    @classmethod
    def coerce(cls, value) -> "ModelKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown model kind: {value!r}") from None


def principal_value(x):
    """Reduce mod 4 into the principal period (-2, 2]."""
    y = np.mod(np.asarray(x, dtype=np.float64), 4.0)
    y = np.where(y > 2.0, y - 4.0, y)
    return y if y.ndim else float(y)


def ising_energy(g: Graph, sigma) -> float:
    """Spin-coupling energy: sum over edges of w * s_u * s_v."""
    s = check_spins(sigma)
    check_lengths(g, s, "spin state")
    return float(np.sum(g.ew * s[g.eu] * s[g.ev]))


def cut_size(g: Graph, sigma) -> float:
    """Total weight of edges joining the +1 and -1 parts.

    Equals (total_weight - energy) / 2, which is exact in floats for
    integer weights.
    """
    return (g.total_weight - ising_energy(g, sigma)) / 2.0


def node_field(g: Graph, sigma, m: int) -> float:
    """Field F_m = s_m * sum_n w_mn s_n.

    Flipping spin m changes the cut by exactly F_m, so F_m <= 0 for all
    m is 1-opt stability.
    """
    s = check_spins(sigma)
    check_lengths(g, s, "spin state")
    if not 0 <= m < g.n:
        raise NodeIndexError(f"node {m} outside [0, {g.n})")
    lo, hi = g.indptr[m], g.indptr[m + 1]
    return float(s[m] * np.sum(g.nbr_w[lo:hi] * s[g.nbr[lo:hi]]))


def all_node_fields(g: Graph, sigma) -> np.ndarray:
    """Vector of F_m for every node (see :func:`node_field`)."""
    s = check_spins(sigma)
    check_lengths(g, s, "spin state")
    contrib = g.ew * s[g.eu] * s[g.ev]
    f = np.bincount(g.eu, weights=contrib, minlength=g.n)
    f += np.bincount(g.ev, weights=contrib, minlength=g.n)
    return f


def core_phi(model, x):
    """Evaluate the period-4 core function of a model at x (scalar or array)."""
    model = ModelKind.coerce(model)
    y = np.asarray(principal_value(x))
    a = np.abs(y)
    if model is ModelKind.ISING:
        if not np.all((a < 1e-9) | (np.abs(a - 2.0) < 1e-9)):
            raise ValueError("Ising core function is defined only on binary differences")
        out = y * y / 4.0
    elif model is ModelKind.SDP:
        out = (1.0 - np.cos(np.pi * y / 2.0)) / 2.0
    elif model is ModelKind.TRIANGULAR:
        out = np.where(a <= 1.0, y * y / 2.0, 1.0 - (a - 2.0) ** 2 / 2.0)
    else:  # GW
        out = a / 2.0
    return out if out.ndim else float(out)


def core_phi_deriv(model, x):
    """Derivative of the core function on the principal period.

    Conventions at the nondifferentiable points: sign(0) = 0 for GW, and
    the value at the period peak x = 2 is 0 for GW and Triangular (both
    one-sided slopes meet there antisymmetrically).  The Triangular kink
    at |x| = 1 has equal one-sided slopes, so the common value is used.
    """
    model = ModelKind.coerce(model)
    if model is ModelKind.ISING:
        raise ValueError("the Ising core function has no derivative")
    y = np.asarray(principal_value(x))
    a = np.abs(y)
    if model is ModelKind.SDP:
        out = (np.pi / 4.0) * np.sin(np.pi * y / 2.0)
    elif model is ModelKind.TRIANGULAR:
        out = np.where(a <= 1.0, y, (2.0 - a) * np.sign(y))
    else:  # GW
        out = np.where(a == 2.0, 0.0, np.sign(y) / 2.0)
    return out if out.ndim else float(out)


def relaxed_objective(g: Graph, xi, model) -> float:
    """Sum over edges of w * Phi_model(xi_u - xi_v), with periodic Phi."""
    x = check_xi(xi)
    check_lengths(g, x)
    return float(np.sum(g.ew * core_phi(model, x[g.eu] - x[g.ev])))


def gw_objective_sx(g: Graph, sigma, x_levels) -> float:
    """GW objective in split form: cut(sigma) + continuous correction.

    The correction is (1/2) sum over edges of w * s_u * s_v * |X_u - X_v|
    and the total equals relaxed_objective(g, sigma + X, "gw") exactly.
    """
    s = check_spins(sigma)
    lv = check_levels(x_levels)
    check_lengths(g, s, "spin state")
    check_lengths(g, lv, "level vector")
    corr = 0.5 * np.sum(g.ew * s[g.eu] * s[g.ev] * np.abs(lv[g.eu] - lv[g.ev]))
    return cut_size(g, s) + float(corr)


def discrepancy_delta(c_ref: float, c_other: float) -> float:
    """Relative cut discrepancy in percent: 2(a - b)/(a + b) * 100."""
    denom = c_ref + c_other
    if denom <= 0:
        raise ZeroDivisionError(f"degenerate denominator: {c_ref} + {c_other} <= 0")
    return 200.0 * (c_ref - c_other) / denom
