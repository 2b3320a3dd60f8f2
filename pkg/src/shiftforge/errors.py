"""Exception types shared across the package."""


class ShiftforgeError(Exception):
    """Base class for all package errors."""


class MalformedElement(ShiftforgeError):
    """A value is not a valid element of the alphabet it was given to."""


class MismatchedSubgroup(ShiftforgeError):
    """Coset arithmetic attempted across different subgroups."""


class NotNormal(ShiftforgeError):
    """A quotient or coset product needs a normal subgroup and got one
    that failed the (bounded) normality check."""


class NoCanonicalRep(ShiftforgeError):
    """No canonical coset representative is available for this subgroup."""


class IndexOutsideAxis(ShiftforgeError):
    """Sequence entry requested at an index the axis does not contain."""


class MixedAxis(ShiftforgeError):
    """Binary sequence operation applied to sequences on different axes."""


class MixedAlphabet(ShiftforgeError):
    """Binary sequence operation applied across distinct alphabets."""


class BlockNotInLanguage(ShiftforgeError):
    """A block used as a base point is not in the language of the shift."""


class ClosureViolation(ShiftforgeError):
    """The sampled language is not closed under the one-block operation.
    Carries the offending pair as ``witness``."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ZeroDivisorDetected(ShiftforgeError):
    """Two nonempty letters multiplied to the empty letter."""


class HNotTrivial(ShiftforgeError):
    """The follower/predecessor intersection subgroup is not trivial, so
    the one-block follower recoding is not injective here."""


class NonUniquePreimage(ShiftforgeError):
    """The two-block inverse of the follower recoding found zero or
    several candidate letters."""


class HypothesisViolated(ShiftforgeError):
    """An abstract monoid failed one of the chain-embedding hypotheses.
    ``index`` identifies which one (1..5)."""

    def __init__(self, message, index=None, witness=None):
        super().__init__(message)
        self.index = index
        self.witness = witness


class DepthExhausted(ShiftforgeError):
    """The stage iteration hit its depth bound without certifying either
    outcome."""


class BoundExhausted(ShiftforgeError):
    """A bounded search ended without a definite answer."""


class ParseError(ShiftforgeError):
    """Input JSON could not be parsed. ``pointer`` is a JSON pointer to
    the offending location when known."""

    def __init__(self, message, pointer=""):
        super().__init__(message)
        self.pointer = pointer


class ValidationError(ParseError):
    """Input JSON parsed but failed schema or semantic validation."""
