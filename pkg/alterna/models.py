from __future__ import annotations

import enum
import math
import pathlib
import typing

import attr
import numpy as np

from alterna import errors

if typing.TYPE_CHECKING:
    import numpy.typing as npt

__all__: typing.Sequence[str] = (
    "PlanePoint",
    "SeriesControl",
    "SeriesValue",
    "ThetaArguments",
    "RobinCoefficient",
    "ModelEigenvalue",
    "BottomRoot",
    "UpsilonCandidates",
    "UpsilonFit",
    "RegimeKind",
    "Regime",
    "BoundaryKind",
    "ValidationReport",
    "FieldKind",
    "MagneticPotential",
    "ScalarPotential",
    "PhysicsConfig",
    "ConvergenceRecord",
    "RateFit",
    "ExperimentKind",
    "GeometryKind",
    "GeometryTemplate",
    "MeshPolicy",
    "SweepPlan",
    "RunConfig",
)


def _non_negative_second(_: object, __: attr.Attribute[float], value: float) -> None:
    if not value >= 0.0:
        msg = f"The second coordinate of a half-plane point must be >= 0, got {value!r}."
        raise errors.ParameterError(msg)


# Special function models...


@attr.define(frozen=True, weakref_slot=False)
class PlanePoint:
    """A point of the closed upper half-plane, in one of the rescaled variables ξ or ς."""

    first: float = attr.field(converter=float)
    """The tangential coordinate."""

    second: float = attr.field(converter=float, validator=_non_negative_second)
    """The normal coordinate; never negative."""

    def __iter__(self) -> typing.Iterator[float]:
        yield self.first
        yield self.second

    def as_complex(self) -> complex:
        return complex(self.first, self.second)


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class SeriesControl:
    """Truncation policy for the series evaluations in ``alterna.specfun``.

    The smallest number of terms ``N <= max_terms`` whose analytic tail bound does
    not exceed ``tail_bound`` is used.
    """

    max_terms: int = attr.field(default=10_000)
    """Largest number of terms that may be summed."""

    tail_bound: float = attr.field(default=1e-12)
    """Requested upper bound for the discarded tail."""

    def __attrs_post_init__(self) -> None:
        if self.max_terms < 1:
            msg = f"A series needs at least one term, got max_terms={self.max_terms}."
            raise errors.ParameterError(msg)

        if not self.tail_bound > 0.0:
            msg = f"The target tail bound must be positive, got {self.tail_bound!r}."
            raise errors.ParameterError(msg)


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class SeriesValue:
    """A truncated series together with an analytic bound for what was left out."""

    value: float = attr.field()
    """The (possibly tail-corrected) partial sum."""

    tail_bound: float = attr.field()
    """Rigorous upper bound for ``|exact - value|``."""

    terms: int = attr.field()
    """Number of summed terms."""

    def __float__(self) -> float:
        return self.value


@attr.define(frozen=True, weakref_slot=False)
class ThetaArguments:
    """Arguments ``(t1, t2)`` of the holomorphic function θ entering the bottom-root equation."""

    t1: float = attr.field(converter=float)
    """In use equal to εb."""

    t2: float = attr.field(converter=float)
    """In use equal to ε²Λ; every radicand 4n² - t2 is positive because |t2| < 4."""

    def __attrs_post_init__(self) -> None:
        if not abs(self.t2) < 4.0:  # noqa: PLR2004
            msg = f"θ requires |t2| < 4, got t2={self.t2!r}."
            raise errors.ParameterError(msg)

        if not abs(self.t1) < 2.0:  # noqa: PLR2004
            msg = f"θ requires |t1| < 2, got t1={self.t1!r}."
            raise errors.ParameterError(msg)


# One-dimensional model models...


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class RobinCoefficient:
    """The coefficients of the homogenized Robin condition ``u' = (b + K + μ) u`` at x₂ = 0."""

    b: float = attr.field(default=0.0, converter=float)
    """The Robin constant of the perturbed problem."""

    K: float = attr.field(default=0.0, converter=float)
    """The homogenized strength of the Dirichlet segments."""

    mu: float = attr.field(default=0.0, converter=float)
    """The remainder of the η-schedule."""

    def __attrs_post_init__(self) -> None:
        if not self.K >= 0.0:
            msg = f"K must be non-negative, got {self.K!r}."
            raise errors.ParameterError(msg)

        if not self.mu >= 0.0:
            msg = f"μ must be non-negative, got {self.mu!r}."
            raise errors.ParameterError(msg)

        if not math.isfinite(self.c):
            msg = "The combined Robin coefficient b + K + μ must be finite."
            raise errors.ParameterError(msg)

    @property
    def c(self) -> float:
        """The combined coefficient b + K + μ."""
        return self.b + self.K + self.mu

    @property
    def strength(self) -> float:
        """K + μ, the amplitude of every homogenization correction."""
        return self.K + self.mu


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class ModelEigenvalue:
    index: int = attr.field()

    value: float = attr.field()
    """Λ_n; negative only for the first eigenvalue when b + K + μ < -1/π."""

    residual: float = attr.field()
    """Normalized residual of the transcendental equation at the returned root."""


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class BottomRoot:
    """The root Λ(ε, μ) of the bottom-of-spectrum equation on the branch through Λ₁(μ)."""

    epsilon: float = attr.field()

    mu: float = attr.field()

    value: float = attr.field()
    """Λ(ε, μ)."""

    residual: float = attr.field()

    branch_check: float = attr.field()
    """|Λ(ε, μ) - Λ₁(μ)|."""

    method: str = attr.field(default="newton")
    """``"newton"`` or ``"bisection"`` (fallback)."""


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class UpsilonCandidates:
    """Closed-form candidates for the expansion coefficients of Λ(ε, μ) - Λ₁(μ)."""

    published_first: float = attr.field()
    """The published first coefficient, evaluated literally (with its ``(Λ₁ + μ)²`` factor)."""

    published_second: float = attr.field()
    """The published second coefficient, with the undefined K₀ read as K."""

    taylor: typing.Mapping[int, float] = attr.field(factory=dict)
    """Exact Taylor coefficients by power of ε, from implicit differentiation at ε = 0."""


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class UpsilonFit:
    coefficients: typing.Sequence[float] = attr.field()
    """Fitted coefficients of ε¹, ε², ..., ε^degree."""

    residual: float = attr.field()
    """Root-mean-square residual of the least-squares fit."""

    candidates: UpsilonCandidates = attr.field()


# Geometry models...


class RegimeKind(str, enum.Enum):
    ROBIN = "robin"
    """η(ε) shrinks like exp(-1/(ε(K + μ))); the limit is a Robin condition."""

    DIRICHLET = "dirichlet"
    """ε ln η → 0; the limit is a Dirichlet condition."""


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class Regime:
    kind: RegimeKind = attr.field(default=RegimeKind.ROBIN, converter=RegimeKind)

    K: float = attr.field(default=10.0, converter=float)
    """Homogenized strength; ignored in the Dirichlet regime."""

    def __attrs_post_init__(self) -> None:
        if not self.K >= 0.0:
            msg = f"K must be non-negative, got {self.K!r}."
            raise errors.ParameterError(msg)

    @classmethod
    def robin(cls, K: float) -> Regime:
        return cls(kind=RegimeKind.ROBIN, K=K)

    @classmethod
    def dirichlet(cls) -> Regime:
        return cls(kind=RegimeKind.DIRICHLET, K=0.0)


class BoundaryKind(enum.IntEnum):
    """Classification of a point of the lower boundary."""

    GAMMA = 0
    """Inside a Dirichlet segment γ_ε."""

    ROBIN = 1
    """Inside the Robin part Γ_ε."""

    ENDPOINT = 2
    """At an endpoint of a Dirichlet segment."""


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class ValidationReport:
    """Measured structural constants of an alternation geometry."""

    c1: float = attr.field()
    """Smallest constant with c1⁻¹ <= ϑ' <= c1 and |ϑ''| + |ϑ'''| <= c1 on the samples."""

    c2: float | None = attr.field()
    """Measured min (a⁻ + a⁺)/(2η); the constant of the Robin-regime half-length condition."""

    c3: float | None = attr.field()
    """Measured max a^±/η; the constant of the Dirichlet-regime half-length condition."""

    overlap_margin: float = attr.field()
    """Smallest gap between consecutive Dirichlet segments (physical units)."""

    anchor_error: float = attr.field()
    """Largest |ϑ(εs_j) - επj|."""

    passed: typing.Mapping[str, bool] = attr.field(factory=dict)
    """Pass/fail per assumption name."""

    @property
    def ok(self) -> bool:
        return all(self.passed.values())

    def failures(self) -> list[str]:
        return [name for name, passed in self.passed.items() if not passed]


# Physics models...


class FieldKind(str, enum.Enum):
    ZERO = "zero"
    CONSTANT = "constant"
    COSINE = "cosine"
    GRADIENT = "gradient"
    """A = ∇φ with φ = amplitude·sin(wavenumber·x₁)·cos(x₂); gauge-equivalent to A = 0."""

    UNIFORM_FIELD = "uniform_field"
    """A = (-amplitude·x₂, 0): a constant magnetic field of strength ``amplitude``."""


_Array = np.ndarray[typing.Any, np.dtype[np.float64]]


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class MagneticPotential:
    kind: FieldKind = attr.field(default=FieldKind.ZERO, converter=FieldKind)

    amplitude: float = attr.field(default=0.0, converter=float)

    wavenumber: float = attr.field(default=1.0, converter=float)

    def __attrs_post_init__(self) -> None:
        if self.kind not in (FieldKind.ZERO, FieldKind.GRADIENT, FieldKind.UNIFORM_FIELD):
            msg = f"Unsupported magnetic potential kind {self.kind.value!r}."
            raise errors.ParameterError(msg)

    def __call__(self, x1: npt.ArrayLike, x2: npt.ArrayLike) -> tuple[_Array, _Array]:
        x1, x2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))

        if self.kind is FieldKind.GRADIENT:
            k = self.wavenumber
            a1 = self.amplitude * k * np.cos(k * x1) * np.cos(x2)
            a2 = -self.amplitude * np.sin(k * x1) * np.sin(x2)
            return a1, a2

        if self.kind is FieldKind.UNIFORM_FIELD:
            return -self.amplitude * x2, np.zeros_like(x2)

        return np.zeros_like(x1), np.zeros_like(x2)

    def gauge(self, x1: npt.ArrayLike, x2: npt.ArrayLike) -> _Array:
        """The gauge function φ with A = ∇φ; only defined for gradient fields."""
        if self.kind is FieldKind.ZERO:
            return np.zeros(np.broadcast(np.asarray(x1), np.asarray(x2)).shape)

        if self.kind is not FieldKind.GRADIENT:
            msg = f"A {self.kind.value!r} magnetic potential is not a gradient."
            raise errors.ParameterError(msg)

        return self.amplitude * np.sin(self.wavenumber * np.asarray(x1)) * np.cos(np.asarray(x2))

    @property
    def is_zero(self) -> bool:
        return self.kind is FieldKind.ZERO or self.amplitude == 0.0


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class ScalarPotential:
    kind: FieldKind = attr.field(default=FieldKind.ZERO, converter=FieldKind)

    amplitude: float = attr.field(default=0.0, converter=float)

    wavenumber: float = attr.field(default=1.0, converter=float)

    def __attrs_post_init__(self) -> None:
        if self.kind not in (FieldKind.ZERO, FieldKind.CONSTANT, FieldKind.COSINE):
            msg = f"Unsupported potential kind {self.kind.value!r}."
            raise errors.ParameterError(msg)

    def __call__(self, x1: npt.ArrayLike, x2: npt.ArrayLike) -> _Array:
        x1, x2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))

        if self.kind is FieldKind.CONSTANT:
            return np.full(x1.shape, self.amplitude)

        if self.kind is FieldKind.COSINE:
            return self.amplitude * np.cos(self.wavenumber * x1)

        return np.zeros(x1.shape)

    @property
    def minimum(self) -> float:
        """A lower bound of the potential, used to place eigensolver shifts."""
        if self.kind is FieldKind.ZERO:
            return 0.0

        if self.kind is FieldKind.CONSTANT:
            return self.amplitude

        return -abs(self.amplitude)


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class PhysicsConfig:
    """Coefficients of the operator (i∇ + A)² + V with Robin constant b."""

    b: float = attr.field(default=0.0, converter=float)
    """Robin constant on Γ_ε."""

    magnetic: MagneticPotential = attr.field(factory=MagneticPotential)

    potential: ScalarPotential = attr.field(factory=ScalarPotential)

    @property
    def is_free(self) -> bool:
        """Whether A = 0 and V = 0."""
        return self.magnetic.is_zero and (
            self.potential.kind is FieldKind.ZERO or self.potential.amplitude == 0.0
        )


# Experiment models...


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class ConvergenceRecord:
    """One measured quantity at one sweep point."""

    epsilon: float = attr.field()

    observable: str = attr.field()

    error: float = attr.field()
    """The measured error (or, for spans and mismatches, the measured quantity); never negative."""

    theory_bound: float = attr.field()
    """The constant-free right-hand side of the corresponding estimate."""

    mesh_n1: int = attr.field()

    mesh_n2: int = attr.field()

    seed: int = attr.field()

    tau: float | None = attr.field(default=None)

    probe: str | None = attr.field(default=None)

    eta: float | None = attr.field(default=None)

    mu: float | None = attr.field(default=None)

    def __attrs_post_init__(self) -> None:
        if not self.error >= 0.0:
            msg = f"Recorded errors must be non-negative, got {self.error!r} for {self.observable}."
            raise errors.ParameterError(msg)

    @property
    def sort_key(self) -> tuple[float, float, str, str]:
        tau = -math.inf if self.tau is None else self.tau
        return (-self.epsilon, tau, self.observable, self.probe or "")


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class RateFit:
    """Least-squares line through (ln ε, ln error)."""

    slope: float = attr.field()

    intercept: float = attr.field()

    r2: float = attr.field()

    points: int = attr.field()

    floor_warning: bool = attr.field(default=False)
    """Set when the slope is so flat that the errors sit at a discretization floor."""


# Sweep models...


class ExperimentKind(str, enum.Enum):
    ROBIN_RESOLVENT = "robin-resolvent"
    DIRICHLET_RESOLVENT = "dirichlet-resolvent"
    BAND_SWEEP = "band-sweep"
    BOTTOM_ASYMPTOTICS = "bottom-asymptotics"

    @property
    def csv_name(self) -> str:
        """File name of the record table written for this experiment."""
        if self is ExperimentKind.BAND_SWEEP:
            return "band.csv"

        return self.value.replace("-", "_") + ".csv"

    @property
    def needs_periodic(self) -> bool:
        return self in (ExperimentKind.BAND_SWEEP, ExperimentKind.BOTTOM_ASYMPTOTICS)


class GeometryKind(str, enum.Enum):
    PERIODIC = "periodic"
    WARPED = "warped"
    EXPLICIT = "explicit"


def _optional_float(value: object) -> float | None:
    return None if value is None else float(typing.cast(typing.SupportsFloat, value))


def _float_tuple(value: typing.Iterable[typing.SupportsFloat] | None) -> tuple[float, ...] | None:
    return None if value is None else tuple(float(v) for v in value)


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class GeometryTemplate:
    """An alternation geometry with ε left open, instantiated once per sweep point."""

    kind: GeometryKind = attr.field(default=GeometryKind.PERIODIC, converter=GeometryKind)

    regime: Regime = attr.field(factory=Regime)

    eta: float | None = attr.field(default=None, converter=_optional_float)
    """Fixed half-length; ``None`` follows the Robin schedule η = exp(-1/(ε(K + μ₀)))."""

    mu0: float = attr.field(default=0.0, converter=float)

    delta: float = attr.field(default=0.0, converter=float)
    """Amplitude of the warp ϑ(s) = s + δ sin s."""

    seed: int | None = attr.field(default=None)
    """Half-length seed of warped geometries; ``None`` uses the sweep seed."""

    spread: float | None = attr.field(default=None, converter=_optional_float)
    """The constant c₂ (Robin) or c₃ (Dirichlet) of the half-length bounds."""

    points: tuple[float, ...] | None = attr.field(default=None, converter=_float_tuple)

    minus: tuple[float, ...] | None = attr.field(default=None, converter=_float_tuple)

    plus: tuple[float, ...] | None = attr.field(default=None, converter=_float_tuple)

    first_index: int = attr.field(default=0)

    def __attrs_post_init__(self) -> None:
        if self.kind is GeometryKind.EXPLICIT:
            if self.points is None or self.minus is None or self.plus is None or self.eta is None:
                msg = "Explicit geometries need points, half-lengths and η."
                raise errors.ParameterError(msg)

        if self.regime.kind is RegimeKind.DIRICHLET and self.eta is None:
            msg = "The Dirichlet regime has no η-schedule; a fixed η is required."
            raise errors.ParameterError(msg)

        if not self.mu0 >= 0.0:
            msg = f"μ₀ must be non-negative, got {self.mu0!r}."
            raise errors.ParameterError(msg)

    @property
    def periodic(self) -> bool:
        return self.kind is GeometryKind.PERIODIC


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class MeshPolicy:
    """How the mesh resolution follows ε and η along a sweep."""

    n1: int = attr.field(default=64)
    """Minimal number of x₁ nodes per period cell."""

    n2: int = attr.field(default=48)
    """Number of x₂ intervals."""

    x2_grading: float = attr.field(default=3.0, converter=float)

    segment_nodes: int = attr.field(default=16)
    """Minimal number of x₁ nodes across the shortest Dirichlet segment."""

    max_n1: int = attr.field(default=4096)

    half_length: float = attr.field(default=3.0, converter=float)
    """Half-length of truncated strips."""

    refinement: int = attr.field(default=1)
    """Multiplies every node count; 2 halves the mesh step."""

    layer_aspect: float = attr.field(default=4.0, converter=float)
    """Largest ratio of the first x₂ step of a cell mesh to its x₁ step."""

    extrapolation_levels: int = attr.field(default=3)
    """Refinement levels 1, 2, ... combined by Richardson extrapolation of cell eigenvalues; 1 disables."""

    def __attrs_post_init__(self) -> None:
        if self.n1 < 8 or self.n2 < 8 or self.segment_nodes < 1 or self.refinement < 1:  # noqa: PLR2004
            msg = "Mesh policies need n1, n2 >= 8 and positive segment and refinement counts."
            raise errors.ParameterError(msg)

        if not self.half_length > 0.0:
            msg = f"The strip half-length must be positive, got {self.half_length!r}."
            raise errors.ParameterError(msg)

        if not self.layer_aspect > 0.0:
            msg = f"The layer aspect must be positive, got {self.layer_aspect!r}."
            raise errors.ParameterError(msg)

        if self.extrapolation_levels < 1 or self.extrapolation_levels == 2:  # noqa: PLR2004
            msg = (
                "Extrapolation estimates its order from three levels, so extrapolation_levels"
                f" must be 1 or at least 3, got {self.extrapolation_levels}."
            )
            raise errors.ParameterError(msg)

    def cell_nodes(self, shortest_half_length: float) -> int:
        """Even number of nodes per period cell putting ``segment_nodes`` across 2·a."""
        needed = math.ceil(self.segment_nodes * math.pi / (2.0 * shortest_half_length))
        nodes = max(self.n1, needed)
        nodes += nodes % 2
        if nodes > self.max_n1:
            msg = (
                f"Resolving half-lengths {shortest_half_length:.4g} needs {nodes} nodes per cell,"
                f" more than the allowed {self.max_n1}."
            )
            raise errors.ParameterError(msg)

        return nodes * self.refinement

    @property
    def x2_intervals(self) -> int:
        return self.n2 * self.refinement

    def cell_x2(self, x1_step: float) -> tuple[int, float]:
        """x₂ interval count and sinh grading of a cell mesh whose x₁ step is ``x1_step``.

        The grading grows beyond ``x2_grading`` until the first x₂ step is at most
        ``layer_aspect`` x₁ steps. The interval count grows with it, so the step below x₂ = π
        stays that of the ungraded policy. Refining the policy keeps the grading fixed.
        """
        intervals = self.x2_intervals
        top = math.pi * _stretch(self.x2_grading) / intervals
        target = self.layer_aspect * x1_step
        if top / math.cosh(self.x2_grading) <= target:
            return intervals, self.x2_grading

        grading = math.acosh(top / target)
        return math.ceil(intervals * _stretch(grading) / _stretch(self.x2_grading)), grading


def _stretch(grading: float) -> float:
    # Ratio of the top step of a sinh-graded x₂ grid to the uniform step π/n.
    return 1.0 if grading == 0.0 else grading / math.tanh(grading)


def _descending(_: object, __: attr.Attribute[tuple[float, ...]], value: tuple[float, ...]) -> None:
    if not value:
        msg = "A sweep needs at least one ε."
        raise errors.ParameterError(msg)

    if any(not e > 0.0 for e in value):
        msg = f"Every ε must be positive, got {list(value)}."
        raise errors.ParameterError(msg)

    if any(a <= b for a, b in zip(value, value[1:])):
        msg = f"ε values must be strictly descending, got {list(value)}."
        raise errors.ParameterError(msg)


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class SweepPlan:
    experiment: ExperimentKind = attr.field(converter=ExperimentKind)

    epsilons: tuple[float, ...] = attr.field(
        default=(0.2, 0.15, 0.1, 0.07, 0.05),
        converter=lambda values: tuple(float(v) for v in values),
        validator=_descending,
    )

    geometry: GeometryTemplate = attr.field(factory=GeometryTemplate)

    physics: PhysicsConfig = attr.field(factory=PhysicsConfig)

    mesh: MeshPolicy = attr.field(factory=MeshPolicy)

    kappa: float = attr.field(default=0.5, converter=float)
    """Quasimomentum margin: band comparisons use |τ| <= 1 - κ."""

    taus: tuple[float, ...] = attr.field(
        default=(0.0, 0.25, 0.5),
        converter=lambda values: tuple(float(v) for v in values),
    )

    bands: int = attr.field(default=3)
    """Number of band functions compared with the model spectrum."""

    seed: int = attr.field(default=0)

    strip_check: bool = attr.field(default=True)
    """Recompute the largest ε on a strip of doubled length."""

    def __attrs_post_init__(self) -> None:
        if not 0.0 < self.kappa < 1.0:
            msg = f"κ must lie in (0, 1), got {self.kappa!r}."
            raise errors.ParameterError(msg)

        limit = 1.0 - self.kappa
        if any(abs(tau) > limit + 1e-12 for tau in self.taus):  # noqa: PLR2004
            msg = f"Every τ must satisfy |τ| <= 1 - κ = {limit:g}, got {list(self.taus)}."
            raise errors.ParameterError(msg)

        if self.bands < 1:
            msg = f"At least one band is compared, got {self.bands}."
            raise errors.ParameterError(msg)

        if self.experiment.needs_periodic and not self.geometry.periodic:
            msg = f"The {self.experiment.value} experiment needs a periodic geometry."
            raise errors.ParameterError(msg)

        if self.experiment.needs_periodic and not self.physics.is_free:
            msg = f"The {self.experiment.value} experiment needs A = 0 and V = 0."
            raise errors.ParameterError(msg)

        expected = (
            RegimeKind.DIRICHLET
            if self.experiment is ExperimentKind.DIRICHLET_RESOLVENT
            else RegimeKind.ROBIN
        )
        if self.geometry.regime.kind is not expected:
            msg = f"The {self.experiment.value} experiment runs in the {expected.value} regime."
            raise errors.RegimeError(msg)

    @property
    def sorted_taus(self) -> tuple[float, ...]:
        """The τ grid in ascending order, always containing τ = 0."""
        return tuple(sorted({0.0, *self.taus}))


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class RunConfig:
    plan: SweepPlan = attr.field()

    output_directory: pathlib.Path = attr.field(default=pathlib.Path("results"), converter=pathlib.Path)

    workers: int | None = attr.field(default=None)
    """Size of the sweep thread pool; ``None`` lets the executor decide."""
