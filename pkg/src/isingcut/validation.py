"""Input validation helpers shared by the functional API and estimators."""

from __future__ import annotations

import numpy as np

__all__ = ["check_spins", "check_levels", "check_xi", "check_lengths"]


def check_spins(sigma, n: int | None = None) -> np.ndarray:
    """Coerce to an int8 vector and require every entry to be exactly +-1."""
    s = np.asarray(sigma)
    if s.ndim != 1:
        raise ValueError(f"spin state must be 1-D, got shape {s.shape}")
    if n is not None and len(s) != n:
        raise ValueError(f"spin state has length {len(s)}, expected {n}")
    if not np.all(np.abs(s) == 1):
        raise ValueError("spin entries must be exactly -1 or +1")
    return s.astype(np.int8)


def check_levels(x, n: int | None = None) -> np.ndarray:
    """Coerce to float64 and require every entry to lie in (-1, 1]."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"level vector must be 1-D, got shape {arr.shape}")
    if n is not None and len(arr) != n:
        raise ValueError(f"level vector has length {len(arr)}, expected {n}")
    if np.any(arr <= -1.0) or np.any(arr > 1.0):
        raise ValueError("level entries must lie in (-1, 1]")
    return arr


def check_xi(xi, n: int | None = None) -> np.ndarray:
    """Coerce to a finite float64 vector."""
    arr = np.asarray(xi, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"state must be 1-D, got shape {arr.shape}")
    if n is not None and len(arr) != n:
        raise ValueError(f"state has length {len(arr)}, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("state entries must be finite")
    return arr


def check_lengths(g, vec, what: str = "state") -> None:
    if len(vec) != g.n:
        raise ValueError(f"{what} has length {len(vec)}, graph has {g.n} nodes")
