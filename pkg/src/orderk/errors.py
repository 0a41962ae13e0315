"""Exception hierarchy.

Every error raised by the library derives from :class:`OrderkError`, which is
itself a :class:`ValueError` so callers that only care about bad input can
catch that.
"""


class OrderkError(ValueError):
    """Base class for all library errors."""


class IdenticalPoints(OrderkError):
    pass


class Collinear(OrderkError):
    pass


class OverlappingSegments(OrderkError):
    pass


class InvalidSubset(OrderkError):
    pass


class DegenerateInput(OrderkError):
    """The point set violates general position."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class DegenerateInsertion(DegenerateInput):
    """A query point breaks general position of the augmented set."""


class BoundingBoxTooSmall(OrderkError):
    """A bounded cell reached the construction bounding box."""


class UnboundedCell(OrderkError):
    pass


class UnboundedRegion(OrderkError):
    pass


class OrderOutOfRange(OrderkError):
    pass


class OutsideTriangle(OrderkError):
    pass


class NonConvexQuad(OrderkError):
    pass


class DegenerateAngles(OrderkError):
    pass


class EvenLength(OrderkError):
    pass


class CoincidentEndpoints(OrderkError):
    pass


class OutOfRange(OrderkError):
    pass


class SampleCollision(OrderkError):
    pass


class InsufficientSamples(OrderkError):
    pass


class ParseError(OrderkError):
    pass
