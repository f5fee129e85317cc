"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed user input: files, labels, parameters, dimensions."""


class NotDistanceRegularError(ValueError):
    """Distance matrices of the graph do not close into an association scheme.

    ``triple`` holds the first violated product (i, j, k): the entries of
    A_i A_j are not constant on the support of A_k.
    """

    def __init__(self, message: str, triple: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.triple = triple


class NotEquitableError(ValueError):
    """Operation requires an equitable partition but got a non-equitable one."""


class NotAutomorphismError(ValueError):
    """Permutation matrix does not commute with every relation matrix."""


class IrrationalSpectrumError(ValueError):
    """Exact arithmetic requested but some relation has irrational eigenvalues."""


class InternalConsistencyError(RuntimeError):
    """A mathematical identity the pipeline guarantees failed to hold."""
