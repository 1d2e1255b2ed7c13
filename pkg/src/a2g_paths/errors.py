"""Exception hierarchy. Everything derives from ValueError so callers can catch broadly."""


class ParameterError(ValueError):
    """An input lies outside the domain of the model."""


class InvalidScenarioError(ParameterError):
    """Scenario parameters imply a non-positive street width."""


class NoBuildingsError(ParameterError):
    """A per-building quantity was requested on a link with no expected buildings."""


class SegmentError(ParameterError):
    """A building position does not lie on the requested path segment."""


class DegenerateGeometryError(ParameterError):
    """The link geometry collapses (e.g. both terminals at ground level)."""
