"""Exception hierarchy.

Every error raised on purpose by the library derives from MomentForgeError,
which is itself a ValueError so callers that only care about bad input can
catch the builtin.
"""


class MomentForgeError(ValueError):
    kind = "error"


# lattice
class EqualPointsError(MomentForgeError):
    kind = "equal-points"


class DegenerateBasisError(MomentForgeError):
    kind = "degenerate-basis"


# graphs
class InvalidGraphError(MomentForgeError):
    kind = "invalid-graph"


class ExtremalLevelError(MomentForgeError):
    kind = "extremal-level"


class CaseMismatchError(MomentForgeError):
    kind = "case-mismatch"


class InadmissibleMoveError(MomentForgeError):
    kind = "inadmissible-move"


class CatalogMismatchError(MomentForgeError):
    kind = "catalog-mismatch"


# polygons
class InvalidPolygonError(MomentForgeError):
    kind = "invalid-polygon"


class NotDelzantError(MomentForgeError):
    kind = "not-delzant"


class ChopTooLargeError(MomentForgeError):
    kind = "chop-too-large"


class NonPrimitiveError(MomentForgeError):
    kind = "non-primitive"


class IneffectiveActionError(MomentForgeError):
    kind = "ineffective-action"


class CutCollisionError(MomentForgeError):
    kind = "cut-collision"


class MarkCollisionError(MomentForgeError):
    kind = "mark-collision"


class SizeOutOfRangeError(MomentForgeError):
    kind = "size-out-of-range"


class NonVerticalEdgeError(MomentForgeError):
    kind = "non-vertical-edge"


class MarkNotInteriorError(MomentForgeError):
    kind = "mark-not-interior"


class LengthMismatchError(MomentForgeError):
    kind = "length-mismatch"


class IndexOutOfRangeError(MomentForgeError, IndexError):
    kind = "index-out-of-range"


class ValidityError(MomentForgeError):
    kind = "validity"


# documents
class ParseError(MomentForgeError):
    kind = "syntax"

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class VersionError(ParseError):
    kind = "version"


class SemanticError(MomentForgeError):
    kind = "semantic"
