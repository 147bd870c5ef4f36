"""Exception types shared across the package."""


class HypermcError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HypermcError):
    """Raised on malformed formula, program, or file input."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line
        self.column = column


class BindingError(HypermcError):
    """Unbound path variable, or a variable used outside its scope."""


class ArityError(HypermcError):
    """Tuple arity does not match the quantifier depth at its position."""


class ModeError(HypermcError):
    """Operation used in the wrong interpretation mode."""


class KtsError(HypermcError):
    """Malformed or inconsistent transition system."""


class CapExceededError(HypermcError):
    """A configured resource cap would be exceeded; the run is refused."""


class UnsupportedFragmentError(HypermcError):
    """Raised for satisfiability queries outside the decidable fragments."""
