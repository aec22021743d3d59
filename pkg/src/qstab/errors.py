"""Exception types shared across the package.

Invalid user input raises subclasses of :class:`InputError` (a ValueError),
so callers can distinguish bad data from genuine bugs.  Internal consistency
checks that should never fail on valid input raise :class:`InternalCheckError`
with enough context to reproduce the failure.
"""


class QstabError(Exception):
    """Base class for everything raised deliberately by this package."""


class InputError(QstabError, ValueError):
    """Malformed or out-of-domain user input."""


class InvalidCartanError(InputError):
    """Matrix fails the Cartan integrality / sign / symmetry conditions."""


class NonFiniteTypeError(InputError):
    """Cartan matrix is valid but generates an infinite root system."""


class RankMismatchError(InputError):
    """Vector or index data of the wrong length for the ambient system."""


class DomainError(InputError):
    """Operation applied outside its domain, e.g. a curve degree requested
    for a root of the Levi subsystem."""


class OrthogonalityError(InputError):
    """Weight fails the orthogonality condition required by a parabolic
    construction."""


class InternalCheckError(QstabError):
    """A structural invariant failed; indicates a bug, not bad input."""
