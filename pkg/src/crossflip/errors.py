"""Exception hierarchy shared by all crossflip modules."""


class CrossflipError(Exception):
    """Base class for every error raised by the library."""


class VoidComplex(CrossflipError):
    pass


class FaceNotPresent(CrossflipError):
    pass


class LabelCollision(CrossflipError):
    pass


class NotPure(CrossflipError):
    pass


class SizeExceeded(CrossflipError):
    pass


class EmptyIndexSet(CrossflipError):
    pass


class DimMismatch(CrossflipError):
    pass


class StaleEmbedding(CrossflipError):
    pass


class NotBalanced(CrossflipError):
    pass


class NotPseudomanifold(CrossflipError):
    pass


class BadConstraint(CrossflipError):
    pass


class NotClosedSurface(CrossflipError):
    pass


class BadOrder(CrossflipError):
    pass


class BadGluing(CrossflipError):
    pass


class ColorMismatch(BadGluing):
    pass


class ParseError(CrossflipError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NeedsNameMap(ParseError):
    pass
