"""Exception hierarchy shared by all loopsmith modules."""


class LoopsmithError(Exception):
    """Base class; ``clause`` is a short machine-readable name."""

    clause = "Error"

    def __init__(self, message="", **context):
        super().__init__(message or self.clause)
        self.context = context


# table / axiom validation
class NotLatin(LoopsmithError):
    clause = "NotLatin"


class NoIdentity(LoopsmithError):
    clause = "NoIdentity"


class NoTwoSidedIdentity(NoIdentity):
    clause = "NoTwoSidedIdentity"


class NotAssociative(LoopsmithError):
    clause = "NotAssociative"


class ParseError(LoopsmithError):
    clause = "ParseError"


class SizeCapExceeded(LoopsmithError):
    clause = "SizeCapExceeded"


class OrderCapExceeded(LoopsmithError):
    clause = "OrderCapExceeded"


class NotNormal(LoopsmithError):
    clause = "NotNormal"


# sections
class SizeMismatch(LoopsmithError):
    clause = "SizeMismatch"


class NotSharplyTransitive(LoopsmithError):
    clause = "NotSharplyTransitive"


class CoreNotTrivial(LoopsmithError):
    clause = "CoreNotTrivial"


class SectionNotPinned(LoopsmithError):
    clause = "SectionNotPinned"


# product construction, in validation order
class SpecError(LoopsmithError):
    clause = "SpecError"


class PNotNonAbelian(SpecError):
    clause = "PNotNonAbelian"


class GNotIdentityPreserving(SpecError):
    clause = "GNotIdentityPreserving"


class PhiNotMono(SpecError):
    clause = "PhiNotMono"


class CentreIntersection(SpecError):
    clause = "CentreIntersection"


class GenerationFailure(SpecError):
    clause = "GenerationFailure"


class GIsHomomorphism(SpecError):
    clause = "GIsHomomorphism"


# octonions
class OctonionOverflow(LoopsmithError):
    clause = "Overflow"


class ClosureNotFound(LoopsmithError):
    clause = "ClosureNotFound"
