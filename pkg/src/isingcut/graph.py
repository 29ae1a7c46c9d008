"""Weighted undirected graphs in compressed adjacency form.

A :class:`Graph` is immutable once built: edge arrays for fast
whole-graph sweeps, plus a CSR adjacency for O(deg) neighbor iteration.
Node ids are 0-based in memory; the text format (see :func:`read_graph`)
is 1-based, matching the usual max-cut instance corpora, and the
conversion happens only at the I/O boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DuplicateEdgeError,
    GraphError,
    InfeasibleDegreeError,
    NodeIndexError,
    ParseError,
    RetryExhaustedError,
    SelfLoopError,
)
from .rng import derive_rng

__all__ = [
    "Graph",
    "from_edge_list",
    "gen_erdos_renyi",
    "gen_d_regular",
    "read_graph",
    "write_graph",
]


@dataclass(frozen=True)
class Graph:
    """Immutable weighted undirected graph.

    Attributes
    ----------
    n : int
        Node count (nodes are 0..n-1).
    eu, ev, ew : ndarray
        Edge endpoint and weight arrays, one entry per undirected edge,
        with eu[i] < ev[i].
    indptr, nbr, nbr_w : ndarray
        CSR adjacency: neighbors of node u are nbr[indptr[u]:indptr[u+1]]
        with weights nbr_w over the same slice.  Each edge appears twice.
    """

    n: int
    eu: np.ndarray
    ev: np.ndarray
    ew: np.ndarray
    indptr: np.ndarray = field(repr=False)
    nbr: np.ndarray = field(repr=False)
    nbr_w: np.ndarray = field(repr=False)

    def __post_init__(self):
        for arr in (self.eu, self.ev, self.ew, self.indptr, self.nbr, self.nbr_w):
            arr.setflags(write=False)

    @property
    def m(self) -> int:
        return len(self.eu)

    @property
    def total_weight(self) -> float:
        return float(self.ew.sum())

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    @property
    def max_weight(self) -> float:
        return float(np.abs(self.ew).max()) if self.m else 0.0

    @property
    def is_unit_weighted(self) -> bool:
        return bool(np.all(self.ew == 1.0))

    def edges(self) -> list[tuple[int, int, float]]:
        """Edge list as (u, v, w) tuples with u < v."""
        return [
            (int(u), int(v), float(w))
            for u, v, w in zip(self.eu, self.ev, self.ew)
        ]

    def neighbors(self, u: int) -> zip:
        """Iterate (neighbor, weight) pairs of node u."""
        lo, hi = self.indptr[u], self.indptr[u + 1]
        return zip(self.nbr[lo:hi].tolist(), self.nbr_w[lo:hi].tolist())

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = np.zeros(self.n, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            u = stack.pop()
            for v in self.nbr[self.indptr[u]:self.indptr[u + 1]]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
        return bool(seen.all())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and sorted(self.edges()) == sorted(other.edges())

    def __hash__(self):
        return hash((self.n, self.m))


def from_edge_list(n: int, edges) -> Graph:
    """Build a graph from an iterable of (u, v) or (u, v, w) entries.

    Weights default to 1.  Rejects out-of-range ids, self-loops, and
    duplicate undirected edges (including the (v, u) mirror).
    """
    if n < 1:
        raise GraphError(f"node count must be >= 1, got {n}")
    us, vs, ws = [], [], []
    seen: set[tuple[int, int]] = set()
    for entry in edges:
        if len(entry) == 2:
            u, v = entry
            w = 1.0
        else:
            u, v, w = entry
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise NodeIndexError(f"edge ({u}, {v}) outside [0, {n})")
        if u == v:
            raise SelfLoopError(f"self-loop at node {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen.add(key)
        us.append(key[0])
        vs.append(key[1])
        ws.append(float(w))

    eu = np.asarray(us, dtype=np.int64)
    ev = np.asarray(vs, dtype=np.int64)
    ew = np.asarray(ws, dtype=np.float64)

    # CSR with both directions of every edge
    deg = np.zeros(n, dtype=np.int64)
    np.add.at(deg, eu, 1)
    np.add.at(deg, ev, 1)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    nbr = np.zeros(indptr[-1], dtype=np.int64)
    nbr_w = np.zeros(indptr[-1], dtype=np.float64)
    cursor = indptr[:-1].copy()
    for u, v, w in zip(us, vs, ws):
        nbr[cursor[u]] = v
        nbr_w[cursor[u]] = w
        cursor[u] += 1
        nbr[cursor[v]] = u
        nbr_w[cursor[v]] = w
        cursor[v] += 1
    return Graph(n=n, eu=eu, ev=ev, ew=ew, indptr=indptr, nbr=nbr, nbr_w=nbr_w)


def gen_erdos_renyi(
    n: int,
    p: float,
    seed: int,
    require_connected: bool = False,
    max_retries: int = 100,
) -> Graph:
    """G(n, p) random graph with unit weights.

    Each unordered pair is included independently with probability p.
    With ``require_connected`` the whole graph is redrawn (up to
    ``max_retries`` times) until connected, which preserves the G(n, p)
    distribution conditioned on connectivity.
    """
    if n < 2:
        raise GraphError(f"need n >= 2, got {n}")
    if not (0.0 < p <= 1.0):
        raise GraphError(f"need 0 < p <= 1, got {p}")
    for attempt in range(max_retries):
        rng = derive_rng(seed, attempt)
        us, vs = [], []
        for i in range(n - 1):
            hits = np.nonzero(rng.random(n - 1 - i) < p)[0]
            us.append(np.full(len(hits), i, dtype=np.int64))
            vs.append(hits.astype(np.int64) + i + 1)
        eu = np.concatenate(us)
        ev = np.concatenate(vs)
        g = from_edge_list(n, zip(eu.tolist(), ev.tolist()))
        if not require_connected or g.is_connected():
            return g
    raise RetryExhaustedError(
        f"no connected G({n}, {p}) sample in {max_retries} attempts"
    )


def gen_d_regular(n: int, d: int, seed: int, max_retries: int = 1000) -> Graph:
    """Simple d-regular graph via the pairing model with rejection.

    Stubs (d per node) are shuffled and paired; a pairing producing a
    self-loop or a repeated edge is discarded and redrawn, so accepted
    graphs are uniform over simple d-regular graphs.
    """
    if d >= n or d < 1 or (n * d) % 2 != 0:
        raise InfeasibleDegreeError(f"no simple {d}-regular graph on {n} nodes")
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for attempt in range(max_retries):
        rng = derive_rng(seed, attempt)
        perm = rng.permutation(stubs)
        a, b = perm[0::2], perm[1::2]
        if np.any(a == b):
            continue
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        keys = lo * n + hi
        if len(np.unique(keys)) != len(keys):
            continue
        return from_edge_list(n, zip(lo.tolist(), hi.tolist()))
    raise RetryExhaustedError(
        f"pairing model failed for ({n}, {d}) after {max_retries} attempts"
    )


def write_graph(g: Graph, path) -> None:
    """Write the 1-based edge-list text format: header "N M", then M lines "u v w"."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v, w in g.edges():
            wtxt = str(int(w)) if w == int(w) else repr(w)
            fh.write(f"{u + 1} {v + 1} {wtxt}\n")


def read_graph(path) -> Graph:
    """Parse the edge-list text format written by :func:`write_graph`.

    Lines starting with '#' and blank lines are ignored.  The first data
    line is "N M"; each following data line is "u v [w]" with 1-based
    ids and an optional weight defaulting to 1.
    """
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int, float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if header is None:
                if len(tokens) != 2:
                    raise ParseError("expected header 'N M'", line=lineno)
                try:
                    header = (int(tokens[0]), int(tokens[1]))
                except ValueError:
                    raise ParseError("non-integer header field", line=lineno) from None
                continue
            if len(tokens) not in (2, 3):
                raise ParseError("expected 'u v [w]'", line=lineno)
            try:
                u, v = int(tokens[0]), int(tokens[1])
                w = float(tokens[2]) if len(tokens) == 3 else 1.0
            except ValueError:
                raise ParseError("malformed edge line", line=lineno) from None
            edges.append((u - 1, v - 1, w))
    if header is None:
        raise ParseError("empty file: no 'N M' header found")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header promised {m} edges, file has {len(edges)}")
    return from_edge_list(n, edges)
