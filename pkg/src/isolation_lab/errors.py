"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """A configured search or enumeration cap was exceeded.

    Solvers never approximate silently: when a node budget or cycle cap
    runs out, this error is raised instead of returning a partial answer.
    """


class UnsupportedFamilyError(ValueError):
    """The requested quantity is undefined or unbounded for this family."""
