import typing

import attr

__all__: typing.Sequence[str] = (
    "AlternaError",
    "DomainError",
    "EndpointError",
    "ParameterError",
    "TruncationError",
    "RegimeError",
    "SolverError",
    "SingularityError",
    "GeometryError",
    "MeshError",
    "ConfigError",
)


@attr.define(auto_exc=True, repr=False, init=False, slots=False)
class AlternaError(RuntimeError):
    """Base class for every error raised by alterna."""


@attr.define(auto_exc=True, repr=False, slots=False)
class DomainError(AlternaError):
    """A function was evaluated at (or too close to) one of its singular points."""

    reason: str = attr.field()

    nearest: tuple[float, float] | None = attr.field(default=None)
    """The singular point closest to the offending input, if known."""

    def __str__(self) -> str:
        if self.nearest is None:
            return self.reason

        return f"{self.reason} (nearest singular point: {self.nearest})"


@attr.define(auto_exc=True, repr=False, slots=False)
class EndpointError(DomainError):
    def __str__(self) -> str:
        return f"Evaluation at an alternation endpoint: {self.reason}"


@attr.define(auto_exc=True, repr=False, slots=False)
class ParameterError(AlternaError, ValueError):
    """A numeric argument violates a precondition."""

    reason: str = attr.field()

    def __str__(self) -> str:
        return self.reason


@attr.define(auto_exc=True, repr=False, slots=False)
class TruncationError(AlternaError):
    """A series could not reach the requested tail bound within its term budget."""

    reason: str = attr.field()

    requested: float = attr.field()

    achieved: float = attr.field()

    def __str__(self) -> str:
        return (
            f"{self.reason} (requested tail bound {self.requested:.3e},"
            f" best achievable {self.achieved:.3e})"
        )


@attr.define(auto_exc=True, repr=False, slots=False)
class RegimeError(AlternaError):
    """The chosen parameters are inconsistent with the requested asymptotic regime."""

    reason: str = attr.field()

    def __str__(self) -> str:
        return self.reason


@attr.define(auto_exc=True, repr=False, slots=False)
class SolverError(AlternaError):
    """A root finder, eigensolver or factorization failed."""

    reason: str = attr.field()

    residual: float | None = attr.field(default=None)

    def __str__(self) -> str:
        if self.residual is None:
            return self.reason

        return f"{self.reason} (residual {self.residual:.3e})"


@attr.define(auto_exc=True, repr=False, slots=False)
class SingularityError(SolverError):
    def __str__(self) -> str:
        return f"Singular problem: {self.reason}"


@attr.define(auto_exc=True, repr=False, slots=False)
class GeometryError(AlternaError):
    """An alternation geometry violates one of its structural assumptions."""

    reason: str = attr.field()

    assumption: str = attr.field(default="")
    """Short name of the violated assumption, e.g. ``"non_overlap"``."""

    index: int | None = attr.field(default=None)
    """Offending segment index, if the violation is local."""

    def __str__(self) -> str:
        where = f" at j={self.index}" if self.index is not None else ""
        return f"Geometry violates {self.assumption or 'its assumptions'}{where}: {self.reason}"


@attr.define(auto_exc=True, repr=False, slots=False)
class MeshError(AlternaError):
    reason: str = attr.field()

    def __str__(self) -> str:
        return self.reason


@attr.define(auto_exc=True, repr=False, slots=False)
class ConfigError(AlternaError):
    """A run configuration document could not be turned into a sweep plan."""

    reason: str = attr.field()

    key: str = attr.field(default="")
    """Dotted path of the offending key."""

    def __str__(self) -> str:
        if not self.key:
            return self.reason

        return f"Invalid configuration key {self.key!r}: {self.reason}"
