"""Exception hierarchy.

Every error raised on purpose by the library derives from ``OrdRelError`` so
the command line can map them all to exit status 1.
"""


class OrdRelError(Exception):
    """Base class. ``witness`` holds whatever concrete data caused the failure."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class DuplicateElement(OrdRelError):
    pass


class UnknownElement(OrdRelError):
    pass


class AntisymmetryViolation(OrdRelError):
    pass


class NotMonotone(OrdRelError):
    pass


class TypeMismatch(OrdRelError):
    pass


class NotWeakeningClosed(OrdRelError):
    pass


class CompositionMismatch(OrdRelError):
    pass


class NotAdjoint(OrdRelError):
    pass


class NotLaxCommuting(OrdRelError):
    pass


class NotALattice(OrdRelError):
    pass


class NotDistributive(OrdRelError):
    pass


class EmptyLattice(OrdRelError):
    pass


class NotAHomomorphism(OrdRelError):
    pass


class NotADLRelation(OrdRelError):
    pass


class SizeGuard(OrdRelError):
    pass


class IsoFailure(OrdRelError):
    pass


class NotAnEmbedding(OrdRelError):
    pass


class NotAPreorder(OrdRelError):
    pass


class FormulationDisagreement(OrdRelError):
    pass


class SchemaError(OrdRelError):
    """Malformed JSON document. ``path`` locates the offending node, e.g. ``pairs[0]``."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message, witness=path)
        self.path = path


class UnsupportedDocument(OrdRelError):
    pass
