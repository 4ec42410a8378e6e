"""Exception hierarchy.

``UserInputError`` subclasses describe bad input (CLI exit code 2);
``InternalError`` subclasses signal a broken invariant inside the engine
(CLI exit code 1).
"""


class LyubeznikError(Exception):
    pass


class UserInputError(LyubeznikError, ValueError):
    pass


class InternalError(LyubeznikError, AssertionError):
    pass


class IdealSyntaxError(UserInputError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(UserInputError):
    pass


class UnitIdealError(UserInputError):
    pass


class NonPositiveExponent(UserInputError):
    pass


class NotSquarefree(UserInputError):
    pass


class NotAFace(UserInputError):
    pass


class VoidComplex(UserInputError):
    pass


class IndexOutOfRange(UserInputError, IndexError):
    pass


class ShapeMismatch(InternalError):
    pass


class NotAComplex(InternalError):
    pass


class NotAChainMap(InternalError):
    pass


class InternalInconsistency(InternalError):
    pass
