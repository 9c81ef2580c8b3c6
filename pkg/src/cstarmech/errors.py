"""Exception types shared across the toolkit."""


class CstarmechError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatchError(CstarmechError, ValueError):
    """Operands live in algebras of different matrix dimension."""


class InvalidInputError(CstarmechError, ValueError):
    """Input violates a documented precondition."""


class InvalidStateError(InvalidInputError):
    """A density matrix or abstract functional fails the state axioms."""


class NonObservableError(InvalidInputError):
    """An operation requiring a self-adjoint element received one that is not."""


class ClosureError(InvalidInputError):
    """A basis expected to be multiplicatively closed is not."""


class EvaluationDomainError(CstarmechError, ValueError):
    """A scalar function or potential produced non-finite values."""


class NumericalError(CstarmechError, RuntimeError):
    """An eigensolver or time stepper failed or went unstable."""
