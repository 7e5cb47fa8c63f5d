"""Exception types raised across the package."""


class EquigraphError(Exception):
    """Base class for all package-specific errors."""


class EmptyGraph(EquigraphError):
    """An operation that needs at least one vertex received a 0-vertex graph."""


class TooFewVertices(EquigraphError):
    """An operation needs more vertices than the graph has."""


class SubgraphTooLarge(EquigraphError):
    """A subgraph has more vertices than the complete graph it is removed from."""


class EdgeListFormatError(EquigraphError, ValueError):
    """Malformed edge-list text: bad header, bad line, out-of-range or duplicate edge."""


class NoConvergence(EquigraphError):
    """The eigensolver hit its sweep cap with the off-diagonal norm above threshold."""


class KindMismatch(EquigraphError):
    """Two spectra of different matrix kinds were combined or compared."""


class NotLaplacian(EquigraphError):
    """A rule that is only valid for Laplacian spectra received something else."""


class LengthMismatch(EquigraphError):
    """A predicted spectrum does not have one value per vertex of the built graph."""


class OrderMismatch(EquigraphError):
    """Two graphs that must share a vertex count do not."""


class MismatchedPair(EquigraphError):
    """Input graphs to a recipe must share vertex and edge counts."""


class Disconnected(EquigraphError):
    """A recipe requires connected inputs and at least one input is not."""


class ConditionUnsatisfiable(EquigraphError):
    """No padding parameter p can satisfy the recipe's threshold inequality."""


class PreconditionFailed(EquigraphError):
    """A construction was attempted at a p that fails the recipe's precondition."""


class NoClosedForm(EquigraphError):
    """The recipe has no printed closed-form energy expression."""


class NotEquienergeticInput(EquigraphError):
    """Join-of-pairs recipes need input pairs with verified equal energies."""


class TooFewPairs(EquigraphError):
    """The multi-join recipe needs at least two input pairs."""
