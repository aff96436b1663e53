"""Exception types shared across the library.

Every error raised by library code (as opposed to plain misuse of the API,
which raises the usual builtins) derives from :class:`HypervalError`, so
callers and the CLI can catch one type and map it to an exit code.
"""


class HypervalError(Exception):
    """Base class for all library-specific errors."""


class BadPrime(HypervalError):
    """A modulus is unusable: not an odd prime, or it divides a denominator
    or leading coefficient where that is forbidden."""


class NonResidue(HypervalError):
    """A modular square root was requested for a non-residue (or for a
    multiple of the prime)."""


class NotSimpleRoot(HypervalError):
    """Root lifting was attempted at a root where the derivative vanishes."""


class NotHenselPrime(HypervalError):
    """A prime fails the square-free/leading-coefficient/denominator
    conditions required for unique root lifting."""


class PrecisionExhausted(HypervalError):
    """A digit computation hit its precision budget without resolving."""


class InvalidF(HypervalError):
    """The denominator polynomial of a recurrence has a nonnegative integer
    root, so the recurrence does not define a sequence."""

    def __init__(self, roots):
        self.roots = tuple(roots)
        pretty = ", ".join(str(r) for r in self.roots)
        super().__init__(f"f has nonnegative integer root(s): {pretty}")


class UnsupportedFactorization(HypervalError):
    """An operation needs a certified complete factorization (all
    irreducible factors of degree at most 2) and the factoring pipeline
    could not provide one."""


class UnsupportedInput(HypervalError):
    """The input is outside the supported class for this operation."""


class EmptySampleSet(HypervalError):
    """An empirical sample was requested over an empty prime set."""


class PolyParseError(HypervalError):
    """Syntax error in a polynomial expression; carries the 0-based
    character position."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"syntax error at position {position}: {message}")
