"""Exception hierarchy for the boxscreen package."""


class BoxScreenError(Exception):
    """Base class for all boxscreen errors."""


class DimensionMismatch(BoxScreenError):
    pass


class InfeasiblePoint(BoxScreenError):
    """Primal point violates its box constraint."""


class DualInfeasible(BoxScreenError):
    """Dual point violates the dual feasible set."""


class WrongVariant(BoxScreenError):
    """Operation called on the wrong problem variant (e.g. dual scaling
    on a problem with infinite upper bounds)."""


class NotInterior(BoxScreenError):
    """Translation vector is not strictly interior to the dual feasible set."""


class NoInteriorPoint(BoxScreenError):
    """No strictly interior translation vector could be constructed; either
    the chosen strategy does not apply to this matrix or the interior of the
    dual feasible set is empty."""


class SingularGram(BoxScreenError):
    """Gram matrix is singular (rank-deficient A)."""


class NegativeGap(BoxScreenError):
    """A negative duality gap was passed where a clamped one is required."""


class InternalConsistency(BoxScreenError):
    """A quantity violated weak duality / bookkeeping beyond round-off."""


class IndexOutOfPreserved(BoxScreenError):
    """Tried to screen a coordinate that is not in the preserved set."""


class StepSizeTooLarge(BoxScreenError):
    """A projected-gradient step increased the objective; the step size is
    not a valid 1/L bound."""


class SingularSubproblem(BoxScreenError):
    """The passive-column least-squares system of the active-set solver is
    numerically singular."""


class BadSpec(BoxScreenError):
    """Invalid synthetic-problem generation spec."""


class ParseError(BoxScreenError):
    """Malformed input file; message carries line/column context."""


class ZeroColumn(BoxScreenError):
    """Matrix contains an all-zero column."""


class ZeroRow(BoxScreenError):
    """Matrix contains an all-zero row."""
