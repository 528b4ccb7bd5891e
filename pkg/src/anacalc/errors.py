"""Exception types shared across the library."""


class DomainError(ValueError):
    """An argument lies outside the operation's stated domain."""


class DecodeError(ValueError):
    """A bit word does not parse under the expected encoding."""


class InvalidNameError(ValueError):
    """A function name violates one of its structural invariants."""


class ResourceError(RuntimeError):
    """An internal iteration cap was exhausted before certification.

    Raised instead of ever returning an uncertified answer.
    """
