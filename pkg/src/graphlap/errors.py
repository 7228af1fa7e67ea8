"""Exception types raised across the package.

Every error carries a stable class name; the command-line front end reports
that name verbatim and maps each family to an exit code.
"""


class GraphLapError(Exception):
    """Base class for all package errors."""

    exit_code = 4


class InvalidData(GraphLapError, ValueError):
    exit_code = 2


class InvalidEdgeList(GraphLapError, ValueError):
    exit_code = 2


class UsageError(GraphLapError, ValueError):
    """Malformed command line."""

    exit_code = 2


class InvalidRecipe(GraphLapError, ValueError):
    exit_code = 3


class ShapeError(GraphLapError, ValueError):
    exit_code = 3


class InvalidExpansion(GraphLapError, ValueError):
    exit_code = 3


class PlotDimension(GraphLapError, ValueError):
    exit_code = 3


class IsolatedNode(GraphLapError, ValueError):
    """A node with zero degree where a normalized quantity needs ``1/d_i``."""

    def __init__(self, index, message=None):
        self.index = int(index)
        super().__init__(message or f"node {self.index} has zero degree")


class NotSymmetric(GraphLapError, ValueError):
    pass


class NoConvergence(GraphLapError, RuntimeError):
    pass


class SingularConstraint(GraphLapError, ValueError):
    def __init__(self, rank, message=None):
        self.rank = int(rank)
        super().__init__(message or f"constraint matrix has numerical rank {self.rank}")


class UnstableStep(GraphLapError, ValueError):
    pass


class DisconnectedGraph(GraphLapError, ValueError):
    exit_code = 5

    def __init__(self, n_components, message=None):
        self.n_components = int(n_components)
        super().__init__(
            message
            or f"graph has {self.n_components} connected components; "
            "use spectral clustering or embed each component separately"
        )
