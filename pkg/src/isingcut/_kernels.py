"""Compiled inner loops.

Everything here is deliberately allocation-free and sequential so that a
run is reproducible bit-for-bit regardless of thread count.  The sign
convention for the piecewise-linear flow lives in one place
(:func:`velocity_into`): a pair of levels exerts no force when the gap
is inside ``eps`` of either switching point (0 or the period peak 2),
which keeps the field invariant under shifts of the rounding reference.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = [
    "velocity_into",
    "gw_objective",
    "cut_value",
    "gw2_leg",
    "one_opt_inplace",
    "two_opt_inplace",
    "brute_force_gray",
]


@njit(cache=True)
def cut_value(eu, ev, ew, sig):
    """Total weight of edges with opposite endpoint spins."""
    tot = 0.0
    for i in range(len(eu)):
        if sig[eu[i]] != sig[ev[i]]:
            tot += ew[i]
    return tot


@njit(cache=True)
def gw_objective(eu, ev, ew, sig, x):
    """Piecewise-linear relaxed objective in split (sigma, X) form."""
    tot = 0.0
    for i in range(len(eu)):
        u, v = eu[i], ev[i]
        ss = sig[u] * sig[v]
        d = x[u] - x[v]
        if d < 0.0:
            d = -d
        tot += ew[i] * (0.5 * (1.0 - ss) + 0.5 * ss * d)
    return tot


@njit(cache=True)
def velocity_into(eu, ev, ew, sig, x, eps, vel):
    """Accumulate the level velocities into ``vel`` (overwritten)."""
    vel[:] = 0.0
    for i in range(len(eu)):
        u, v = eu[i], ev[i]
        d = x[u] - x[v]
        ad = -d if d < 0.0 else d
        if ad <= eps or ad >= 2.0 - eps:
            continue
        s = 0.5 if d > 0.0 else -0.5
        c = ew[i] * sig[u] * sig[v] * s
        vel[u] += c
        vel[v] -= c


@njit(cache=True)
def gw2_leg(eu, ev, ew, sig, x, dt, max_steps, eps, improve_tol, sweep_len, obj_out):
    """Integrate one restart leg in place.

    Runs Euler steps with boundary wrapping until ``max_steps`` or until
    the objective gained no more than ``improve_tol`` over one sweep of
    ``sweep_len`` steps.  Objective checkpoints (one per sweep) are
    written into ``obj_out``.

    Returns (steps_taken, spin_flips, checkpoints_written).
    """
    n = len(sig)
    vel = np.empty(n, dtype=np.float64)
    flips = 0
    obj_prev = gw_objective(eu, ev, ew, sig, x)
    n_obj = 0
    obj_out[n_obj] = obj_prev
    n_obj += 1
    steps = 0
    next_check = sweep_len
    while steps < max_steps:
        velocity_into(eu, ev, ew, sig, x, eps, vel)
        for u in range(n):
            xu = x[u] + dt * vel[u]
            if xu > 1.0:
                xu -= 2.0
                sig[u] = -sig[u]
                flips += 1
            elif xu <= -1.0:
                xu += 2.0
                sig[u] = -sig[u]
                flips += 1
            x[u] = xu
        steps += 1
        if steps >= next_check:
            obj = gw_objective(eu, ev, ew, sig, x)
            if n_obj < len(obj_out):
                obj_out[n_obj] = obj
                n_obj += 1
            if obj - obj_prev <= improve_tol:
                break
            obj_prev = obj
            next_check = steps + sweep_len
    return steps, flips, n_obj


@njit(cache=True)
def _flip_update(indptr, nbr, nbr_w, sig, f, u):
    """Flip spin u and refresh the field vector incrementally."""
    sig[u] = -sig[u]
    f[u] = -f[u]
    for j in range(indptr[u], indptr[u + 1]):
        v = nbr[j]
        f[v] += 2.0 * nbr_w[j] * sig[v] * sig[u]


@njit(cache=True)
def _fields_into(indptr, nbr, nbr_w, sig, f):
    n = len(sig)
    for u in range(n):
        acc = 0.0
        for j in range(indptr[u], indptr[u + 1]):
            acc += nbr_w[j] * sig[nbr[j]]
        f[u] = sig[u] * acc


@njit(cache=True)
def _one_opt_loop(indptr, nbr, nbr_w, sig, f):
    flips = 0
    while True:
        moved = False
        for u in range(len(sig)):
            if f[u] > 0.0:
                _flip_update(indptr, nbr, nbr_w, sig, f, u)
                flips += 1
                moved = True
                break
        if not moved:
            return flips


@njit(cache=True)
def one_opt_inplace(indptr, nbr, nbr_w, sig):
    """Greedy single-flip descent: repeat the first improving flip in node order."""
    f = np.empty(len(sig), dtype=np.float64)
    _fields_into(indptr, nbr, nbr_w, sig, f)
    return _one_opt_loop(indptr, nbr, nbr_w, sig, f)


@njit(cache=True)
def two_opt_inplace(eu, ev, ew, indptr, nbr, nbr_w, sig):
    """Single-flip descent plus pair flips across cut edges.

    After 1-opt stability, scans cut edges in fixed order; a cut edge
    (u, v) with f_u + f_v > -2w is flipped as a pair (which raises the
    cut by f_u + f_v + 2w > 0), then 1-opt is re-run and the scan
    restarts.  Terminal states satisfy f_u <= 0 everywhere and
    f_u + f_v <= -2w on every cut edge.
    """
    f = np.empty(len(sig), dtype=np.float64)
    _fields_into(indptr, nbr, nbr_w, sig, f)
    flips = _one_opt_loop(indptr, nbr, nbr_w, sig, f)
    while True:
        moved = False
        for i in range(len(eu)):
            u, v = eu[i], ev[i]
            if sig[u] == sig[v]:
                continue
            if f[u] + f[v] > -2.0 * ew[i]:
                _flip_update(indptr, nbr, nbr_w, sig, f, u)
                _flip_update(indptr, nbr, nbr_w, sig, f, v)
                flips += 2
                flips += _one_opt_loop(indptr, nbr, nbr_w, sig, f)
                moved = True
                break
        if not moved:
            return flips


@njit(cache=True)
def brute_force_gray(indptr, nbr, nbr_w, n):
    """Exact max cut by Gray-code enumeration with sigma_0 pinned to +1.

    Each Gray step flips one spin; the cut is updated in O(deg) through
    the node field.  Returns (best_cut, best_code) where bit j of
    best_code means node j+1 is -1.
    """
    sig = np.ones(n, dtype=np.int8)
    cut = 0.0
    best = 0.0
    best_code = np.int64(0)
    code = np.int64(0)
    total = np.int64(1) << (n - 1)
    for i in range(np.int64(1), total):
        t = i
        b = 0
        while t & 1 == 0:
            t >>= 1
            b += 1
        node = b + 1
        acc = 0.0
        for j in range(indptr[node], indptr[node + 1]):
            acc += nbr_w[j] * sig[nbr[j]]
        cut += sig[node] * acc
        sig[node] = -sig[node]
        code ^= np.int64(1) << b
        if cut > best:
            best = cut
            best_code = code
    return best, best_code
