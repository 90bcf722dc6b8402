"""Exception types raised by the solvers."""


class DomainError(ValueError):
    """An input lies outside the domain where an operation is defined."""


class NoBoundState(ValueError):
    """No classically allowed radial interval exists for the requested energy.

    ``side`` is ``"inner"``, ``"outer"`` or ``"both"`` and names the turning
    point that could not be found.
    """

    def __init__(self, message, side="both"):
        super().__init__(message)
        self.side = side


class NumericalError(RuntimeError):
    """An iterative method failed to converge.

    ``estimate`` carries the best value reached, when one exists.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class NoPhysicalRoot(ValueError):
    """The septic spectral equation has no root on the weak-field branch."""


class UnconvergedLevel(RuntimeError):
    """A finite-difference level moved by more than the tolerance under grid refinement."""


class TruncationError(RuntimeError):
    """A finite-difference eigenstate is not confined inside the radial box."""
