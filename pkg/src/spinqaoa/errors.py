"""Exception types shared across the package."""


class CapacityError(ValueError):
    """A request exceeds the configured simulable/enumerable size limit."""


class DegenerateInstanceError(ValueError):
    """The instance has cmin == cmax, so approximation ratios are undefined."""
