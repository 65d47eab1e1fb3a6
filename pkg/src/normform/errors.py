"""Exception types raised across the package.

Every error derives from :class:`NormFormError`, so callers that only care
about "bad input vs. everything else" can catch the two base classes.
"""


class NormFormError(Exception):
    pass


class InputError(NormFormError, ValueError):
    """Input outside an operation's domain."""


class ZeroInput(InputError):
    pass


class NegativeInput(InputError):
    pass


class InvalidD(InputError):
    """d is not a square-free integer outside {0, 1}, or is excluded."""


class WrongResidue(InputError):
    pass


class InvalidDiscriminant(InputError):
    pass


class DiscMismatch(InputError):
    pass


class ImprimitiveForm(InputError):
    pass


class NotDefinite(InputError):
    pass


class NotIndefinite(InputError):
    pass


class SquareDiscriminant(InputError):
    pass


class AlreadyCollapsed(InputError):
    pass


class NoCoprimeValueFound(NormFormError):
    """No represented value coprime to 2D was found; indicates a bug."""


class FormulaMismatch(NormFormError):
    """A closed-form count disagrees with explicit enumeration."""


class DuplicationFailure(NormFormError):
    """The set of squares differs from the principal genus."""
