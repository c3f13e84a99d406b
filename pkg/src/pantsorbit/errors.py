"""Exception types shared across the package."""


class PantsOrbitError(Exception):
    """Base class for every error raised by this package."""


class BadGenusError(PantsOrbitError):
    """Vertex count is odd or below the genus-2 minimum."""


class BadParametersError(PantsOrbitError):
    """An argument is outside the documented domain."""


class NotTrivalentError(PantsOrbitError):
    """Some vertex does not carry exactly three half-edges."""


class DisconnectedError(PantsOrbitError):
    """The multigraph is not connected."""


class ParseError(PantsOrbitError):
    """Malformed serialized graph, path, or twist word."""


class IllegalMoveError(PantsOrbitError):
    """A shift move references a missing edge, a loop, or a bad pairing."""


class AlreadyLoopError(PantsOrbitError):
    """The cycle has length 1 and cannot be shortened further."""


class NoLoopError(PantsOrbitError):
    """Loop surgery requires at least one loop."""


class GenusTooSmallError(PantsOrbitError):
    """Loop surgery is undefined at genus 2."""


class GenusTooLargeError(PantsOrbitError):
    """Requested genus exceeds the configured enumeration ceiling."""


class UnknownFormError(PantsOrbitError):
    """A canonical form is missing from the atlas (enumeration bug)."""


class IndexOutOfRangeError(PantsOrbitError):
    """A twist generator index is outside 1..3g-1."""


class SearchBudgetExceededError(PantsOrbitError):
    """An exhaustive search was asked to go beyond its desk-scale budget."""


class WrongLoopCountError(PantsOrbitError):
    """Flattening requires a graph with exactly g loops."""


class LiftInvariantViolation(PantsOrbitError):
    """A loop-pulling stage broke its loop-count postcondition (internal bug)."""


class BoundViolation(PantsOrbitError):
    """A constructive path exceeded its claimed bound (internal bug)."""


class FormatVersionMismatch(PantsOrbitError):
    """An atlas cache file has an unknown or corrupt header."""
