"""Exception hierarchy shared by all modules."""


class CoprimeNetError(Exception):
    pass


class DomainError(CoprimeNetError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ResourceCapError(CoprimeNetError):
    """A requested size exceeds a configured resource cap."""


class ConsistencyError(CoprimeNetError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class DisconnectedError(CoprimeNetError):
    def __init__(self, message, components):
        super().__init__(message)
        self.components = components


class ConvergenceError(CoprimeNetError):
    """Iterative eigensolver ran out of iterations.

    The last Rayleigh quotient, iterate and residual are kept so callers can
    decide whether the partial answer is usable.
    """

    def __init__(self, message, value, vector, residual, iterations):
        super().__init__(message)
        self.value = value
        self.vector = vector
        self.residual = residual
        self.iterations = iterations
