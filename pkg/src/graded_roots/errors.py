"""Exception hierarchy.

Every error raised by the library derives from :class:`GradedRootsError`.
The CLI maps the three families below onto exit codes 2, 3 and 4.
"""


class GradedRootsError(Exception):
    """Base class for all library errors."""


class ParseError(GradedRootsError, ValueError):
    """Malformed input text or JSON."""


class MathPreconditionError(GradedRootsError, ValueError):
    """An input violates a mathematical precondition of an operation."""


class IterationCapExceeded(GradedRootsError, RuntimeError):
    """An iterative algorithm ran past its configured cap."""


class NotATree(MathPreconditionError):
    pass


class DuplicateEdge(MathPreconditionError):
    pass


class InvalidVertex(MathPreconditionError):
    pass


class NotNegativeDefinite(MathPreconditionError):
    pass


class NotCoprime(MathPreconditionError):
    pass


class NotCharacteristic(MathPreconditionError):
    pass


class OutsideBox(MathPreconditionError):
    pass


class NonIntegralIndex(MathPreconditionError):
    pass


class NotALeaf(MathPreconditionError):
    pass


class BadRange(MathPreconditionError):
    pass


class SeparatingCurve(MathPreconditionError):
    pass


class NLessThanN0(MathPreconditionError):
    pass


class OpaqueCurve(MathPreconditionError):
    pass


class LauferMismatch(GradedRootsError, AssertionError):
    """Index extracted from the dual lattice disagrees with the trace.

    This signals an internal bug, never a user error.
    """
