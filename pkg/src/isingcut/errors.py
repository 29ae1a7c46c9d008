"""Exception types shared across the package.

Everything derives from :class:`IsingcutError` so callers can catch the
package's failures with a single except clause.  Graph-construction
problems get dedicated subclasses because the file parser and the
generators report them separately.
"""

from __future__ import annotations


class IsingcutError(Exception):
    """Base class for all errors raised by isingcut."""


class GraphError(IsingcutError, ValueError):
    """Invalid graph construction input."""


class NodeIndexError(GraphError):
    """Node id outside ``[0, n)``."""


class SelfLoopError(GraphError):
    """Edge (u, u); diagonal adjacency entries are forbidden."""


class DuplicateEdgeError(GraphError):
    """Same undirected edge listed twice."""


class ParseError(IsingcutError, ValueError):
    """Malformed graph file.  Carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RetryExhaustedError(IsingcutError, RuntimeError):
    """A bounded rejection-sampling loop ran out of attempts."""


class InfeasibleDegreeError(GraphError):
    """No simple d-regular graph exists for the requested (n, d)."""


class TooLargeError(IsingcutError, ValueError):
    """Instance exceeds the size limit of an exhaustive routine."""


class KinkProximityError(IsingcutError, ValueError):
    """State too close to a nondifferentiable point for a finite-difference check."""
