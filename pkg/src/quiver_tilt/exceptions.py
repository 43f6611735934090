"""Exception hierarchy for quiver-tilt."""

from typing import Optional


class QuiverTiltError(Exception):
    """Base class for all quiver-tilt errors."""


class FieldError(QuiverTiltError, ValueError):
    """Unsupported or malformed ground field."""


class DimensionMismatchError(QuiverTiltError, ValueError):
    """Matrix shapes do not fit together."""


class QuiverError(QuiverTiltError, ValueError):
    """Malformed quiver (duplicate names, undeclared endpoints)."""


class NotComposableError(QuiverTiltError, ValueError):
    """Two paths whose endpoints do not match were composed."""


class CyclicQuiverError(QuiverTiltError, ValueError):
    """An operation that needs an acyclic quiver met an oriented cycle."""


class UnknownVertexError(QuiverTiltError, KeyError):
    """A vertex name that the quiver does not declare."""


class NoPathError(QuiverTiltError, ValueError):
    """No (or no unique) path between two vertices."""


class RelationError(QuiverTiltError, ValueError):
    """Non-admissible or non-confluent relations."""


class RepresentationError(QuiverTiltError, ValueError):
    """Malformed representation or one that violates the relations."""


class ModuleMapError(QuiverTiltError, ValueError):
    """A family of matrices that is not a module homomorphism."""


class AlgebraMismatchError(QuiverTiltError, ValueError):
    """Objects over different algebras were combined."""


class ResolutionTruncatedError(QuiverTiltError, RuntimeError):
    """A projective resolution did not terminate within the length bound."""


class NotExactError(QuiverTiltError, ValueError):
    """A sequence that was required to be a short exact sequence is not one."""


class DecompositionError(QuiverTiltError, ValueError):
    """Decomposition is unsupported for the field or could not be certified."""


class ComplexError(QuiverTiltError, ValueError):
    """Malformed complex (d∘d != 0 or shape mismatch)."""


class ChainMapError(QuiverTiltError, ValueError):
    """A family of module maps that does not commute with the differentials."""


class NonBasicAlgebraError(QuiverTiltError, ValueError):
    """Quiver presentation requested for an algebra that is not basic."""


class UnsupportedShapeError(QuiverTiltError, ValueError):
    """Input outside the shapes an algorithm supports."""


class GeneratorMapError(QuiverTiltError, ValueError):
    """A generator assignment that misses generators of the target algebra."""


class ParseError(QuiverTiltError, ValueError):
    """Malformed input file."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
