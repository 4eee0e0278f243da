"""Exception hierarchy shared by all modules."""


class PricingError(Exception):
    """Base class for every error raised by this package."""


class MalformedDescriptor(PricingError, ValueError):
    pass


class OutOfRange(PricingError, IndexError):
    pass


class SeedDependent(PricingError, ValueError):
    """The seed handed to ``find_basis`` is not independent."""


class GroundMismatch(PricingError, ValueError):
    pass


class NoCommonBasis(PricingError):
    """Raised when two matroids share no common basis.

    ``witness`` is a maximum common independent set.
    """

    def __init__(self, witness, message=None):
        self.witness = frozenset(witness)
        super().__init__(message or f"no common basis; max common independent set {sorted(self.witness)}")


class Infeasible(PricingError):
    """A set cannot be partitioned as requested; ``witness`` certifies it."""

    def __init__(self, witness, message=None):
        self.witness = frozenset(witness)
        super().__init__(message or f"partition infeasible, witness {sorted(self.witness)}")


class NotSupported(PricingError):
    pass


class NotBases(PricingError, ValueError):
    pass


class PreconditionViolated(PricingError, ValueError):
    pass


class NotCommonBases(PreconditionViolated):
    pass


class NotUnionBasis(PreconditionViolated):
    pass


class CyclicInput(PricingError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"digraph has a directed cycle {self.cycle}")


class InternalInvariantBroken(PricingError, AssertionError):
    pass


class NoDisjointSpanningPair(PricingError):
    pass


class Unresolved(PricingError):
    """The general pricing route could not certify prices.

    This is not a claim that no prices exist; ``witness`` carries the
    cyclic digraph data for inspection.
    """

    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or "exchange digraph is cyclic; instance left unresolved")


class NotMnatConcave(PricingError, ValueError):
    pass


class SearchExhausted(PricingError):
    def __init__(self, trials, instance=None):
        self.trials = trials
        self.instance = instance
        super().__init__(f"no price vector found after {trials} trials")


class TooLarge(PricingError, ValueError):
    pass


class NoFeasiblePair(PricingError):
    pass


class NoPerfectMatching(PricingError):
    pass
