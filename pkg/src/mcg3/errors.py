"""Exception types shared across the package."""


class Mcg3Error(Exception):
    """Base class for all package errors."""


class UnsupportedPresentation(Mcg3Error):
    """Presentation is outside the shape an operation supports."""


class DegreeTooLarge(Mcg3Error):
    """Permutation degree exceeds the configured exhaustive-search limit."""


class UnknownGenerator(Mcg3Error):
    """A word uses a generator id with no assigned image."""


class NotCataloged(Mcg3Error):
    """Requested data is not in the shipped catalog."""


class BadParameters(Mcg3Error):
    """Arithmetic preconditions (coprimality etc.) violated."""


class AssumptionViolated(Mcg3Error):
    """A catalog flag required by the operation is absent or false."""


class IncompatiblePresentation(Mcg3Error):
    """Presentation does not match the structure a generator acts on."""


class MismatchedStructure(Mcg3Error):
    """Two values live over different sums or species partitions."""


class UnsupportedSum(Mcg3Error):
    """No cataloged mapping-class presentation for this connected sum."""


class DimensionMismatch(Mcg3Error):
    """Matrix dimensions disagree within one representation."""


class WrongPresentation(Mcg3Error):
    """Operation requires a specific presentation shape."""


class NotInvolution(Mcg3Error):
    """The designated exchange image does not square to the identity."""


class SpecParseError(Mcg3Error):
    """Input text is not valid JSON of the expected shape."""


class SpecValidationError(Mcg3Error):
    """Input parsed but violates a domain constraint."""
