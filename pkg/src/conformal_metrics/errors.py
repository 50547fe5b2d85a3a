"""Exception types shared across the package.

All recoverable failures raise a subclass of :class:`ConformalMetricsError`
so that sweeps can catch one type, record the sample as skipped, and move on.
"""


class ConformalMetricsError(Exception):
    """Base class for all errors raised by this package."""


class NotLocallyUnivalentError(ConformalMetricsError):
    """Jet has vanishing first derivative; T and S are undefined."""


class OutsideDomainError(ConformalMetricsError):
    """A point was queried against a domain that does not contain it."""


class SingularPointError(ConformalMetricsError):
    """Map evaluation requested at a singular point of its formula."""


class MembershipUndecidableError(ConformalMetricsError):
    """Raw-point membership query against a sampled image domain."""


class IncompatibleCompositionError(ConformalMetricsError):
    """Sampled image of the inner map leaves the outer map's base domain."""


class MapNotUnivalentError(ConformalMetricsError):
    """Operation requires a univalent map but got a covering map."""


class NoDensityRouteError(ConformalMetricsError):
    """No conformal or covering route to the disk is registered."""


class NoGridPathError(ConformalMetricsError):
    """Grid Dijkstra could not connect the endpoints; raise the resolution."""


class InvalidParameterError(ConformalMetricsError, ValueError):
    """Catalog constructor called with parameters violating its invariants."""
