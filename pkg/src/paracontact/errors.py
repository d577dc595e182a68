"""Exception hierarchy shared by every module."""


class ParacontactError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(ParacontactError):
    """Array shapes do not match the structure dimension 2n+1."""


class StructureError(ParacontactError):
    """A structure fails validation or lacks a property an operation needs."""


class DegeneracyError(ParacontactError):
    """No admissible pivot vector could be found while building a phi-basis."""


class GroupElementError(ParacontactError):
    """A matrix is not an element of the structure group."""


class OperatorConstraintError(ParacontactError):
    """An operator family violates one of its defining constraints."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("operator constraints violated: " + "; ".join(self.violations))


class InadmissibleError(ParacontactError):
    """A (0,3)-tensor does not satisfy the admissibility identities."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("inadmissible tensor: " + "; ".join(self.violations))


class NotInSubspaceError(ParacontactError):
    """A projector stage received a tensor outside its domain subspace."""


class VanishingClassError(ParacontactError):
    """The requested class is the zero subspace in this dimension."""


class SchemaError(ParacontactError):
    """An input document does not match the expected JSON layout."""
