"""Exception hierarchy shared by every module."""


class LindefError(Exception):
    """Base class for all errors raised by lindef."""


# exact linear algebra
class ShapeMismatch(LindefError, ValueError):
    pass


class CompositionNonzero(LindefError, ValueError):
    pass


class FieldMismatch(LindefError, ValueError):
    pass


# simplicial complexes
class VertexOutOfRange(LindefError, ValueError):
    pass


class NonDisjointJoin(LindefError, ValueError):
    pass


class BadParams(LindefError, ValueError):
    pass


class BuiltinValidationFailed(LindefError):
    pass


class EmptyComplex(LindefError, ValueError):
    """The void complex (no faces at all) was passed to a ring invariant."""


class FullSimplex(LindefError, ValueError):
    pass


# modules and resolutions
class AmbientMismatch(LindefError, ValueError):
    pass


class ZeroModule(LindefError, ValueError):
    pass


class NotMinimal(LindefError, ValueError):
    pass


class IndexOutOfRange(LindefError, IndexError):
    pass


# invariants
class PreconditionFailed(LindefError, ValueError):
    pass


class RouteMismatch(LindefError, AssertionError):
    """The two independent linearity-defect computations disagree."""


class ParseError(BadParams):
    """Input text that does not describe the expected object."""
