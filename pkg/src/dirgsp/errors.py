"""Exception hierarchy shared by every module of the package."""


class DirGSPError(Exception):
    """Base class for all errors raised by dirgsp."""


# graph construction and ingestion


class GraphError(DirGSPError, ValueError):
    pass


class VertexIndexError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class EdgeWeightError(GraphError):
    pass


class EdgeListFormatError(GraphError):
    pass


# dense linear algebra


class LinAlgError(DirGSPError):
    pass


class SingularMatrixError(LinAlgError):
    pass


class ConvergenceError(LinAlgError):
    pass


class RankDeficientError(LinAlgError):
    pass


class NearDefectiveError(LinAlgError):
    """The eigendecomposition is too ill-conditioned to be trusted.

    Carries the eigenvector condition number and the relative eigen-residual
    so the caller can decide whether to accept the decomposition anyway.
    """

    def __init__(self, message, kappa, residual, eigensystem=None):
        super().__init__(message)
        self.kappa = kappa
        self.residual = residual
        self.eigensystem = eigensystem


class NumericallyDefectiveError(LinAlgError):
    pass


# transforms and sampling


class DomainError(DirGSPError, ValueError):
    """A signal was passed in the wrong domain or with the wrong length."""


class ConsistencyError(DirGSPError):
    pass


class UnrecoverableError(DirGSPError):
    pass
