"""Exception hierarchy shared by the pipeline."""


class QNAError(Exception):
    """Base class for all library errors."""


class PresentationError(QNAError, ValueError):
    """Malformed presentation data (wrong shapes, supports, skew-symmetry)."""


class NotQNAError(QNAError):
    """The presentation fails one of the QNA axioms that the pipeline needs."""


class InhomogeneousError(QNAError, ValueError):
    """A weight was requested for an element that is not homogeneous."""

    def __init__(self, weights):
        self.weights = sorted(weights)
        super().__init__(f"element is not homogeneous; weights present: {self.weights}")


class SupportError(QNAError, ValueError):
    """An element uses generators outside the allowed index range."""


class GYUniquenessError(QNAError):
    """Zero or several normal candidates survived while building y_k."""


class ConsistencyError(QNAError):
    """Two modules disagree; signals a bug or inconsistent input."""


class DecompositionRefused(QNAError):
    """The decomposition preconditions do not hold."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)
