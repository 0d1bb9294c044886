"""Exception types shared across the package."""


class NestlabError(Exception):
    """Base class for every error raised by nestlab."""


# lattices
class CycleInCovers(NestlabError):
    pass


class NotALattice(NestlabError):
    pass


class NoBottomOrTop(NestlabError):
    pass


class NotComparable(NestlabError):
    pass


class PartNotBelowY(NestlabError):
    pass


# building sets
class BlockRequired(NestlabError):
    pass


class NotASubsetOfBlocks(NestlabError):
    pass


class NotNested(NestlabError):
    pass


class ElementMissing(NestlabError):
    pass


class BadOrder(NestlabError):
    pass


class NotConnected(NestlabError):
    pass


class NotABuildingSet(NestlabError):
    pass


# oriented matroids
class NotAcyclic(NestlabError):
    pass


class GroundOverlap(NestlabError):
    pass


class GroundMismatch(NestlabError):
    pass


class NotAProperFace(NestlabError):
    pass


class CertificationFailed(NestlabError):
    pass


class CircuitAxiomViolation(NestlabError):
    pass


class HasLoops(NestlabError):
    pass


# facial
class BlockNotInNestedSet(NestlabError):
    pass


class NotOrientedBuildingSet(NestlabError):
    pass


# geometry
class Unbounded(NestlabError):
    pass


class DimensionTooLarge(NestlabError):
    pass


class VerificationFailed(NestlabError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAtomic(NestlabError):
    pass


# posets
class DisconnectedHasse(NestlabError):
    pass


class CyclicInput(NestlabError):
    pass


class NotAffine(NestlabError):
    pass


# embeddings
class NotOrderEmbedding(NestlabError):
    pass


class NotPullable(NestlabError):
    pass


class NotPushable(NestlabError):
    pass


class ElementNotAVertex(NestlabError):
    pass


# cli
class ParseError(NestlabError):
    pass


class NotMaximal(NestlabError):
    """A maximal nested set was required."""
