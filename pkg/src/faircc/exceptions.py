"""Exception types raised across the package.

All of them derive from :class:`FairCCError`, itself a ``ValueError``, so callers
that only care about bad input can catch ``ValueError``.
"""


class FairCCError(ValueError):
    pass


# graph construction / validation
class DuplicateEdge(FairCCError):
    pass


class SelfLoop(FairCCError):
    pass


class ColorArityMismatch(FairCCError):
    pass


class VertexSetMismatch(FairCCError):
    pass


class NodeSetMismatch(VertexSetMismatch):
    pass


class DegenerateGraph(FairCCError):
    pass


class UnknownVertex(FairCCError):
    pass


# fairness / fairlets
class EmptyCluster(FairCCError):
    pass


class EmptyFairlet(FairCCError):
    pass


class OverlappingFairlets(FairCCError):
    pass


class InvalidDecomposition(FairCCError):
    pass


class Infeasible(FairCCError):
    """No decomposition satisfying the requested constraint exists (or can be built)."""


class SingleColor(Infeasible):
    pass


class UnequalColorCounts(Infeasible):
    pass


class UnfairInput(FairCCError):
    pass


class TooSmall(FairCCError):
    pass


class TooLarge(FairCCError):
    """Instance exceeds the size guard of an exhaustive oracle."""


# ingestion
class ParseError(FairCCError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownVertexId(ParseError):
    pass


class DuplicateId(ParseError):
    pass


class DimensionMismatch(FairCCError):
    pass


class IndivisibleSizes(FairCCError):
    pass
