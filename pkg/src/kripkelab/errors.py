"""Exception types shared across the workbench."""


class KripkelabError(Exception):
    """Base class for every error raised by this package."""


class InvalidSizeError(KripkelabError):
    """A size or cutoff parameter is out of its allowed range."""


class InvalidNodeError(KripkelabError):
    """A node id does not belong to the poset at hand."""


class StructureError(KripkelabError):
    """An order-theoretic side condition fails (partial-order laws, downward closure)."""


class EmptyRestrictionError(KripkelabError):
    """A node restriction came out empty; the restricted model would have no nodes."""


class BudgetError(KripkelabError):
    """An enumeration would exceed the configured element budget."""

    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


class MonotonicityError(KripkelabError):
    """An extent shrinks along the node order."""


class ClosureError(KripkelabError):
    """An extent references an id that is not in the universe table."""


class OrderError(KripkelabError):
    """Two nodes were expected to be comparable but are not."""


class EvalError(KripkelabError):
    """Formula evaluation hit an unbound variable or a stale parameter."""


class ParseError(KripkelabError):
    """Formula text could not be parsed."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ArityError(KripkelabError):
    """A formula has the wrong free variables for the operation requested."""


class DomainError(KripkelabError):
    """An evaluation node lies outside the restricted node set."""


class IncompatibilityError(KripkelabError):
    """A forcing condition would assign a grid cell twice."""


class NoRoomError(KripkelabError):
    """Every pair of the target relation is already decided by the condition."""


class GridTooSmallError(KripkelabError):
    """A density requirement cannot be met on the finite grid (truncation artifact)."""


class SaturationError(KripkelabError):
    """A set of density requirements is jointly unsatisfiable on the grid."""
