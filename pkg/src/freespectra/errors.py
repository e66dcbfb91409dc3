"""Exception types shared across the package."""


class FreeSpectraError(Exception):
    """Base class for all package errors."""


# --- series ---

class ReciprocalOfZeroConstantTerm(FreeSpectraError):
    pass


class ComposeWithNonzeroConstantTerm(FreeSpectraError):
    pass


class NotInvertibleAsComposition(FreeSpectraError):
    pass


class SqrtConstantTermNotOne(FreeSpectraError):
    pass


class TransformTagMismatch(FreeSpectraError):
    pass


# --- measures ---

class UnknownCatalogName(FreeSpectraError):
    pass


class InvalidParameter(FreeSpectraError):
    pass


class NotAProbabilitySequence(FreeSpectraError):
    pass


class STransformUndefined(FreeSpectraError):
    pass


# --- convolution oracle ---

class OrderTooLargeForOracle(FreeSpectraError):
    pass


# --- graphs ---

class SchemaError(FreeSpectraError):
    pass


class OverlappingColorClasses(SchemaError):
    pass


class LoopEdge(SchemaError):
    pass


class DuplicateColorValue(FreeSpectraError):
    pass


class TooManyVertices(FreeSpectraError):
    pass


class NotConnected(FreeSpectraError):
    pass


class UnsupportedGraph(FreeSpectraError):
    pass


# --- numerics ---

class EvaluationOnSupport(FreeSpectraError):
    pass


class QuadratureNonConvergence(FreeSpectraError):
    pass


# --- verification runner ---

class UnknownIdentity(FreeSpectraError):
    pass
