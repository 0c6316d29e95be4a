"""Exception hierarchy.

Every error raised by the library derives from :class:`VlabError`.  Parse
failures derive from :class:`ParseError`; the CLI maps them to exit code 2
and every other :class:`VlabError` to exit code 1.
"""


class VlabError(Exception):
    """Base class for all library errors."""


class ParseError(VlabError, ValueError):
    """A literal (field spec, element, polynomial, description) is malformed."""


class EmptyList(VlabError, ValueError):
    pass


class NotAnElement(VlabError, ValueError):
    pass


class DivisionByZero(VlabError, ZeroDivisionError):
    pass


class MixedFields(VlabError, TypeError):
    pass


class NotIntegral(VlabError, ValueError):
    pass


class PoleAtPoint(VlabError, ZeroDivisionError):
    pass


class BranchRequired(VlabError):
    """A split quadratic extension was used without choosing a branch."""


class UnsupportedAtom(VlabError):
    pass


class UnsupportedFamily(VlabError):
    pass


class UnsupportedRadius(VlabError):
    pass


class NotMonotoneOnWindow(VlabError):
    pass


class WindowTooSmall(VlabError):
    pass


class WrongKind(VlabError):
    pass


class NoKnownLimit(VlabError):
    pass


class NotInsideV(VlabError):
    pass


class EquivalenceUnavailable(VlabError):
    """Raised when V is a DVR with finite residue field.

    Over such V a closed ball inside the polynomial closure of S does not
    force Int(S, V) into the corresponding Gauss valuation ring.
    """


class UnvalidatedFamily(VlabError):
    pass
