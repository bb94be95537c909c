"""Exception hierarchy shared across the package."""


class CurrentExtError(Exception):
    """Base class for all errors raised by this package."""


class IllegalTypeError(CurrentExtError):
    """Unknown Cartan family or out-of-range rank (e.g. E9)."""


class NotDominantError(CurrentExtError):
    """A weight that must be dominant has a negative coordinate."""


class NotSimpleFactorError(CurrentExtError):
    """Operation defined only for a single simple factor."""


class RankMismatchError(CurrentExtError):
    """Weight length does not match the total rank of the type."""


class ArityMismatchError(CurrentExtError):
    """Polynomial or point arity does not match the algebra presentation."""


class BadIndexError(CurrentExtError):
    """Cartan index out of range."""


class InvalidPointError(CurrentExtError):
    """Coordinates do not satisfy the defining relations."""


class DuplicatePointError(CurrentExtError):
    """The same rational point was listed twice."""


class ContextMismatchError(CurrentExtError):
    """Operands live over different Lie types or algebra presentations."""


class ConnectednessRequiredError(CurrentExtError):
    """Block-level statements need the caller to assert connectedness."""


class NotLinkedError(CurrentExtError):
    """Chain endpoints lie in different root-lattice classes."""


class BoundExceededError(CurrentExtError):
    """Chain search exhausted its height bound (inconclusive, not a proof)."""


class UnsupportedTypeError(CurrentExtError):
    """The explicit-matrix oracle only covers type-A factors."""


class DimensionCapError(CurrentExtError):
    """A configured oracle size cap would be exceeded."""


class SupportNotCoveredError(CurrentExtError):
    """Module support is not contained in the jet's point set."""


class NotACocycleError(CurrentExtError):
    """Candidate cocycle violates unit, derivation or intertwining rules."""


class PolynomialSyntaxError(CurrentExtError):
    """Unparseable polynomial expression."""


class JobValidationError(CurrentExtError):
    """A CLI job document failed schema validation."""
