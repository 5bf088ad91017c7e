"""Exception hierarchy shared by all modules."""


class K3CoversError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(K3CoversError, ValueError):
    pass


class ShapeError(K3CoversError, ValueError):
    pass


class DegenerateLatticeError(K3CoversError, ValueError):
    """Raised by discriminant operations on a lattice with det 0."""


class InvalidGlueError(K3CoversError, ValueError):
    """A glue vector cannot lie in an even overlattice."""


class DomainError(K3CoversError, ValueError):
    pass


class UnknownIdentifierError(K3CoversError, KeyError):
    def __str__(self) -> str:
        return f"unknown identifier {self.args[0]!r}" if self.args else "unknown identifier"


class ResourceError(K3CoversError, RuntimeError):
    pass


class InadmissibleError(K3CoversError, ValueError):
    """A branch configuration violates one of the classification conditions."""

    def __init__(self, verdict):
        super().__init__(verdict.text)
        self.verdict = verdict
