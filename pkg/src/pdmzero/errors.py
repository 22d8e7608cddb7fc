"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class InadmissibleError(ValueError):
    """A radicand went negative (fall-to-center / non-normalizable regime).

    ``reason`` is a short machine-readable tag used by the CLI.
    """

    def __init__(self, message, reason):
        super().__init__(message)
        self.reason = reason


class SeparationMismatch(ValueError):
    """Radial and axial parts do not share a separation constant."""


class GridTooCoarse(ValueError):
    pass


class EigenSolveError(RuntimeError):
    pass
