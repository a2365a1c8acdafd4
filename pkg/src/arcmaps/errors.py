"""Exception hierarchy shared by every arcmaps module."""


class ArcmapsError(Exception):
    """Base class for all errors raised by arcmaps."""


class InvalidParameter(ArcmapsError, ValueError):
    pass


class ResourceLimit(ArcmapsError):
    """An order or enumeration cap was exceeded."""


class InvalidAction(ArcmapsError, ValueError):
    pass


class InvalidSubgroup(ArcmapsError, ValueError):
    pass


class InvalidInput(ArcmapsError, ValueError):
    """A pair/triple (or other item) violates its invariants."""


class NotCovered(ArcmapsError):
    """No stated representatives exist for this (family, kind)."""


class RelationFailure(ArcmapsError):
    """A constructed table violates one of its family's defining relations."""
