"""Exception hierarchy shared by every module of the package."""


class GkzError(Exception):
    """Base class for domain errors (CLI exit code 2)."""


class RankError(GkzError):
    pass


class SingularError(GkzError):
    pass


class NotPrimitiveError(GkzError):
    pass


class ZeroColumn(GkzError):
    def __init__(self, index):
        super().__init__(f"column {index} is zero")
        self.index = index


class NotProjective(GkzError):
    """Raised with a nonnegative integer relation among the columns."""

    def __init__(self, witness):
        super().__init__(f"invariant monomial with exponents {list(witness)}")
        self.witness = tuple(witness)


class OnWall(GkzError):
    pass


class DegeneratePath(GkzError):
    pass


class DegenerateWallPoint(GkzError):
    pass


class InternalMismatch(GkzError):
    pass


class EmptyChamber(GkzError):
    pass


class NoBoundaryPath(GkzError):
    pass


class NotPGL2Linearizable(GkzError):
    pass


class SignMismatch(GkzError):
    pass


class NoAbyssPath(GkzError):
    pass


class SchemaError(GkzError):
    def __init__(self, field, reason):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


class UnsupportedFormat(GkzError):
    pass
