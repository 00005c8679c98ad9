"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`MomentcutError`; the CLI maps those to exit code 3, except
:class:`CertificationFailure` which maps to 4.
"""


class MomentcutError(Exception):
    """Base class for domain errors."""


class InputShapeError(MomentcutError, ValueError):
    pass


class ZeroVectorError(MomentcutError, ValueError):
    pass


class PointNotInSetError(MomentcutError, ValueError):
    pass


class InsufficientWitnessError(MomentcutError):
    pass


class UnboundedInputError(MomentcutError, ValueError):
    pass


class NoRoomError(MomentcutError):
    pass


class PreconditionError(MomentcutError):
    pass


class UnsupportedTypeError(MomentcutError, ValueError):
    pass


class NotInChamberError(MomentcutError, ValueError):
    pass


class NonGenericCutError(MomentcutError):
    """Raised when a cut is not in general position.

    ``witness`` is the first offending pair of faces (model face, cut face);
    the second entry is ``None`` when the failure is non-simplicity of the
    intersection.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PointNotVertexError(MomentcutError, ValueError):
    pass


class NotAConeError(MomentcutError, ValueError):
    pass


class DomainError(MomentcutError, ValueError):
    pass


class NotDominantError(MomentcutError, ValueError):
    pass


class RankError(MomentcutError, ValueError):
    pass


class FormatError(MomentcutError, ValueError):
    """Malformed text document."""


class CertificationFailure(MomentcutError):
    """Assembled moment set disagrees with the input.

    ``witness`` is a point lying in exactly one of the two sets.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
