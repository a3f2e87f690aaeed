"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operands have incompatible or non-conforming dimensions."""


class DomainError(ValueError):
    """A value violates a mathematical precondition (non-Hermitian operator,
    invalid probabilities, non-positive spectrum, ...)."""


class NumericalError(RuntimeError):
    """A result failed a numerical sanity check (stray imaginary part,
    residual above tolerance, ...)."""


class ConvergenceError(NumericalError):
    """An iterative routine exhausted its sweep budget without converging."""
