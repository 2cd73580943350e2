"""Alternation geometries on the lower boundary and the boundary corrector W.

A geometry places Dirichlet segments γ_ε = {ε s_j - ε a_j^- < x₁ < ε s_j + ε a_j^+} on Γ₋ with
ϑ_ε(ε s_j) = επj for a smooth increasing ϑ_ε; the remainder Γ_ε carries the Robin condition.
"""

from __future__ import annotations

import logging
import math
import typing

import attr
import numpy as np

from alterna import errors
from alterna import models
from alterna import specfun

if typing.TYPE_CHECKING:
    import numpy.typing as npt

__all__: typing.Sequence[str] = (
    "ENDPOINT_TOLERANCE",
    "DEFAULT_WINDOW",
    "Diffeomorphism",
    "AlternationGeometry",
    "CorrectorIngredients",
    "CorrectorField",
    "eta_schedule",
    "build_periodic_geometry",
    "build_warped_geometry",
    "build_explicit_geometry",
    "template_eta",
    "build_from_template",
    "validate_assumptions",
    "classify_bottom_boundary",
    "classify_bottom_nodes",
    "corrector_ingredients",
    "build_corrector",
    "eval_corrector",
    "corrector_on_grid",
)


_LOGGER = logging.getLogger("alterna.geometry")

ENDPOINT_TOLERANCE: typing.Final[float] = 1e-12
"""Distance below which a boundary point counts as an endpoint of a Dirichlet segment."""

DEFAULT_WINDOW: typing.Final[float] = 12.0
"""Half-length (in x₁) covered by the segments of a generated geometry."""

_ANCHOR_TOLERANCE: typing.Final[float] = 1e-10
_NEWTON_TOLERANCE: typing.Final[float] = 1e-12
_NEWTON_MAX_ITERATIONS: typing.Final[int] = 50
_HALF_PI: typing.Final[float] = 0.5 * math.pi

FloatArray = np.ndarray[typing.Any, np.dtype[np.float64]]
IntArray = np.ndarray[typing.Any, np.dtype[np.int64]]


# The diffeomorphism ϑ...


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class Diffeomorphism:
    """ϑ(s) = s + δ sin s."""

    delta: float = attr.field(default=0.0, converter=float)

    def __attrs_post_init__(self) -> None:
        if not abs(self.delta) < 1.0:
            msg = f"ϑ(s) = s + δ sin s is only monotone for |δ| < 1, got δ={self.delta!r}."
            raise errors.ParameterError(msg)

    def __call__(self, s: npt.ArrayLike) -> FloatArray:
        s = np.asarray(s, dtype=float)
        return s + self.delta * np.sin(s)

    def derivative(self, s: npt.ArrayLike, order: int = 1) -> FloatArray:
        s = np.asarray(s, dtype=float)
        if order == 1:
            return 1.0 + self.delta * np.cos(s)
        if order == 2:  # noqa: PLR2004
            return -self.delta * np.sin(s)
        if order == 3:  # noqa: PLR2004
            return -self.delta * np.cos(s)

        msg = f"Only derivatives of order 1 to 3 are available, got {order}."
        raise errors.ParameterError(msg)

    def inverse(self, t: npt.ArrayLike) -> FloatArray:
        """Solve ϑ(s) = t by Newton's method started at s = t."""
        target = np.asarray(t, dtype=float)
        s = target.copy()
        for _ in range(_NEWTON_MAX_ITERATIONS):
            step = (self(s) - target) / self.derivative(s)
            s = s - step
            if np.all(np.abs(step) <= _NEWTON_TOLERANCE):
                return s

        msg = "Inverting ϑ did not converge."
        raise errors.SolverError(msg, residual=float(np.max(np.abs(self(s) - target))))

    @property
    def c1(self) -> float:
        """A constant with c₁⁻¹ <= ϑ' <= c₁ and |ϑ''| + |ϑ'''| <= c₁ everywhere."""
        delta = abs(self.delta)
        return max(1.0 / (1.0 - delta), 1.0 + delta, delta * math.sqrt(2.0))

    @property
    def is_identity(self) -> bool:
        return self.delta == 0.0


# Geometries...


@attr.define(frozen=True, kw_only=True, weakref_slot=False, eq=False)
class AlternationGeometry:
    """Dirichlet segments on Γ₋ in the rescaled units of the points s_j and half-lengths a_j^±.

    Periodic geometries are defined for every j; other geometries only inside the window
    ``first_index <= j < first_index + len(points)``.
    """

    epsilon: float = attr.field()

    eta: float = attr.field()

    regime: models.Regime = attr.field(factory=models.Regime)

    diffeomorphism: Diffeomorphism = attr.field(factory=Diffeomorphism)

    first_index: int = attr.field()

    points: FloatArray = attr.field()
    """s_j^ε for the window indices."""

    minus: FloatArray = attr.field()
    """a_j^- for the window indices."""

    plus: FloatArray = attr.field()
    """a_j^+ for the window indices."""

    periodic: bool = attr.field(default=False)

    spread: float = attr.field(default=1.0)
    """The declared c₂ (Robin regime) or c₃ (Dirichlet regime)."""

    seed: int | None = attr.field(default=None)

    @property
    def indices(self) -> IntArray:
        return np.arange(self.first_index, self.first_index + self.points.size)

    @property
    def degenerate(self) -> bool:
        """η = π/2 on a periodic geometry: the segments cover Γ₋ and there is no alternation."""
        return self.periodic and abs(self.eta - _HALF_PI) <= ENDPOINT_TOLERANCE

    def window_offsets(self, js: npt.ArrayLike) -> IntArray:
        """Positions of the indices ``js`` in the window arrays."""
        js = np.asarray(js, dtype=np.int64)
        offsets = js - self.first_index
        outside = (offsets < 0) | (offsets >= self.points.size)
        if np.any(outside):
            bad = int(js[outside].flat[0])
            msg = "The requested segment lies outside the generated window."
            raise errors.GeometryError(msg, assumption="window", index=bad)

        return offsets

    def segments(self, js: npt.ArrayLike) -> tuple[FloatArray, FloatArray, FloatArray]:
        """(s_j, a_j^-, a_j^+) for the given indices."""
        js = np.asarray(js, dtype=np.int64)
        if self.periodic:
            s = math.pi * js.astype(float)
            return s, np.full(s.shape, self.eta), np.full(s.shape, self.eta)

        offsets = self.window_offsets(js)
        return self.points[offsets], self.minus[offsets], self.plus[offsets]

    def intervals(self, js: npt.ArrayLike) -> tuple[FloatArray, FloatArray]:
        """Physical endpoints (ε(s_j - a_j^-), ε(s_j + a_j^+)) of the segments."""
        s, minus, plus = self.segments(js)
        return self.epsilon * (s - minus), self.epsilon * (s + plus)

    def nearest_index(self, x1: npt.ArrayLike) -> IntArray:
        theta = self.diffeomorphism(x1)
        return np.rint(theta / (self.epsilon * math.pi)).astype(np.int64)

    def covers(self, x_min: float, x_max: float) -> bool:
        """Whether the window classifies every boundary point of [x_min, x_max]."""
        if self.periodic:
            return True

        first, last = self.nearest_index(np.array([x_min, x_max]))
        return bool(first - 1 >= self.first_index and last + 1 < self.first_index + self.points.size)


def _check_scales(epsilon: float, eta: float) -> None:
    if not epsilon > 0.0:
        msg = f"ε must be positive, got {epsilon!r}."
        raise errors.ParameterError(msg)

    if not eta > 0.0:
        msg = f"η must be positive, got {eta!r}."
        raise errors.ParameterError(msg)


def _window(epsilon: float, n_points: int | None) -> IntArray:
    if n_points is None:
        n_points = math.ceil(DEFAULT_WINDOW / (epsilon * math.pi)) + 2

    if n_points < 1:
        msg = f"A geometry window needs at least one point on each side, got {n_points}."
        raise errors.ParameterError(msg)

    return np.arange(-n_points, n_points + 1, dtype=np.int64)


def eta_schedule(epsilon: float, K: float, mu0: float = 0.0) -> float:
    """η = exp(-1/(ε(K + μ₀))), the half-length for which the μ-schedule gives μ₀."""
    if not epsilon > 0.0 or not K + mu0 > 0.0:
        msg = f"The η-schedule needs ε > 0 and K + μ₀ > 0, got ε={epsilon!r}, K + μ₀={K + mu0!r}."
        raise errors.ParameterError(msg)

    return math.exp(-1.0 / (epsilon * (K + mu0)))


def build_periodic_geometry(
    epsilon: float,
    eta: float,
    regime: models.Regime | None = None,
    *,
    n_points: int | None = None,
) -> AlternationGeometry:
    """Segments of half-length η centred at the points πj, with ϑ the identity."""
    _check_scales(epsilon, eta)
    if eta > _HALF_PI + ENDPOINT_TOLERANCE:
        msg = f"Half-length η={eta!r} exceeds π/2, so neighbouring segments overlap."
        raise errors.GeometryError(msg, assumption="non_overlap")

    if eta >= _HALF_PI - ENDPOINT_TOLERANCE:
        _LOGGER.warning("η = π/2: the Dirichlet segments cover Γ₋ and there is no alternation.")
        eta = _HALF_PI

    js = _window(epsilon, n_points)
    return AlternationGeometry(
        epsilon=epsilon,
        eta=eta,
        regime=regime or models.Regime(),
        first_index=int(js[0]),
        points=math.pi * js.astype(float),
        minus=np.full(js.size, eta),
        plus=np.full(js.size, eta),
        periodic=True,
        spread=1.0,
    )


def _default_spread(regime: models.Regime) -> float:
    return 0.5 if regime.kind is models.RegimeKind.ROBIN else 1.5


def build_warped_geometry(
    epsilon: float,
    eta: float,
    delta: float,
    seed: int,
    regime: models.Regime | None = None,
    *,
    spread: float | None = None,
    n_points: int | None = None,
) -> AlternationGeometry:
    """Points from ϑ(s) = s + δ sin s and random half-lengths.

    Half-lengths are drawn uniformly from [c₂η, η] in the Robin regime and from [η, c₃η] in the
    Dirichlet regime, with ``spread`` the constant c₂ or c₃.
    """
    _check_scales(epsilon, eta)
    regime = regime or models.Regime()
    spread = _default_spread(regime) if spread is None else float(spread)
    diffeomorphism = Diffeomorphism(delta=delta)

    js = _window(epsilon, n_points)
    points = diffeomorphism.inverse(epsilon * math.pi * js.astype(float)) / epsilon

    rng = np.random.default_rng(seed)
    if regime.kind is models.RegimeKind.ROBIN:
        if not 0.0 < spread <= 1.0:
            msg = f"The constant c₂ must lie in (0, 1], got {spread!r}."
            raise errors.ParameterError(msg)

        low, high = spread * eta, eta

    else:
        if not spread >= 1.0:
            msg = f"The constant c₃ must be at least 1, got {spread!r}."
            raise errors.ParameterError(msg)

        low, high = eta, spread * eta

    minus = rng.uniform(low, high, size=js.size)
    plus = rng.uniform(low, high, size=js.size)

    geometry = AlternationGeometry(
        epsilon=epsilon,
        eta=eta,
        regime=regime,
        diffeomorphism=diffeomorphism,
        first_index=int(js[0]),
        points=points,
        minus=minus,
        plus=plus,
        spread=spread,
        seed=seed,
    )
    _require_valid(geometry)
    _LOGGER.debug(
        "Built a warped geometry with %d segments (ε=%g, η=%.4g, δ=%g, seed=%d).",
        js.size,
        epsilon,
        eta,
        delta,
        seed,
    )
    return geometry


def build_explicit_geometry(
    epsilon: float,
    eta: float,
    points: npt.ArrayLike,
    minus: npt.ArrayLike,
    plus: npt.ArrayLike,
    regime: models.Regime | None = None,
    *,
    delta: float = 0.0,
    first_index: int = 0,
    spread: float | None = None,
    validate: bool = True,
) -> AlternationGeometry:
    """A geometry from explicit point and half-length lists (rescaled units)."""
    _check_scales(epsilon, eta)
    regime = regime or models.Regime()
    arrays = [np.asarray(values, dtype=float).ravel() for values in (points, minus, plus)]
    if len({array.size for array in arrays}) != 1 or arrays[0].size == 0:
        msg = "Points and half-lengths must be non-empty lists of equal length."
        raise errors.ParameterError(msg)

    if np.any(np.diff(arrays[0]) <= 0.0):
        msg = "Points must be strictly increasing."
        raise errors.ParameterError(msg)

    if np.any(arrays[1] <= 0.0) or np.any(arrays[2] <= 0.0):
        msg = "Half-lengths must be positive."
        raise errors.ParameterError(msg)

    geometry = AlternationGeometry(
        epsilon=epsilon,
        eta=eta,
        regime=regime,
        diffeomorphism=Diffeomorphism(delta=delta),
        first_index=first_index,
        points=arrays[0],
        minus=arrays[1],
        plus=arrays[2],
        spread=_default_spread(regime) if spread is None else float(spread),
    )
    if validate:
        _require_valid(geometry)

    return geometry


def template_eta(template: models.GeometryTemplate, epsilon: float) -> float:
    """The half-length η a template prescribes at ε."""
    if template.eta is not None:
        return template.eta

    return eta_schedule(epsilon, template.regime.K, template.mu0)


def build_from_template(
    template: models.GeometryTemplate,
    epsilon: float,
    *,
    seed: int = 0,
    n_points: int | None = None,
) -> AlternationGeometry:
    """Instantiate a sweep template at ε; ``seed`` applies when the template has none."""
    eta = template_eta(template, epsilon)

    if template.kind is models.GeometryKind.PERIODIC:
        return build_periodic_geometry(epsilon, eta, template.regime, n_points=n_points)

    if template.kind is models.GeometryKind.WARPED:
        return build_warped_geometry(
            epsilon,
            eta,
            template.delta,
            seed if template.seed is None else template.seed,
            template.regime,
            spread=template.spread,
            n_points=n_points,
        )

    assert template.points is not None
    assert template.minus is not None
    assert template.plus is not None
    return build_explicit_geometry(
        epsilon,
        eta,
        template.points,
        template.minus,
        template.plus,
        template.regime,
        delta=template.delta,
        first_index=template.first_index,
        spread=template.spread,
    )


# Validation...


def _gaps(geometry: AlternationGeometry) -> FloatArray:
    s, minus, plus = geometry.segments(geometry.indices)
    return geometry.epsilon * ((s[1:] - minus[1:]) - (s[:-1] + plus[:-1]))


def validate_assumptions(geometry: AlternationGeometry, samples: int = 10_000) -> models.ValidationReport:
    """Measure the structural constants of ``geometry`` and check them against its declarations.

    The checks reported are ``"diffeomorphism"`` (derivative bounds with the declared c₁),
    ``"anchor"`` (ϑ(εs_j) = επj), ``"non_overlap"`` and the regime's half-length condition
    (``"half_length_sum"`` for Robin, ``"half_length_bounds"`` for Dirichlet).
    """
    if samples < 2:  # noqa: PLR2004
        msg = f"At least two samples are needed, got {samples}."
        raise errors.ParameterError(msg)

    eps = geometry.epsilon
    eta = geometry.eta
    diffeomorphism = geometry.diffeomorphism
    js = geometry.indices
    s, minus, plus = geometry.segments(js)

    x = np.linspace(eps * (s[0] - math.pi), eps * (s[-1] + math.pi), samples)
    first = diffeomorphism.derivative(x)
    higher = np.abs(diffeomorphism.derivative(x, 2)) + np.abs(diffeomorphism.derivative(x, 3))
    c1 = float(max(first.max(), (1.0 / first).max(), higher.max()))

    anchor_error = float(np.max(np.abs(diffeomorphism(eps * s) - eps * math.pi * js)))

    gaps = _gaps(geometry)
    margin = float(gaps.min()) if gaps.size else math.inf

    sums = (minus + plus) / (2.0 * eta)
    c2 = float(sums.min())
    c3 = float(np.maximum(minus, plus).max() / eta)

    passed = {
        "diffeomorphism": bool(first.min() > 0.0 and c1 <= diffeomorphism.c1 + 1e-9),
        "anchor": anchor_error <= _ANCHOR_TOLERANCE,
        "non_overlap": geometry.degenerate or margin > 0.0,
    }
    if geometry.regime.kind is models.RegimeKind.ROBIN:
        passed["half_length_sum"] = bool(
            c2 > 0.0 and sums.max() <= 1.0 + 1e-12 and c2 >= geometry.spread - 1e-12,
        )
    else:
        lowest = float(np.minimum(minus, plus).min())
        passed["half_length_bounds"] = bool(
            lowest >= eta * (1.0 - 1e-12) and c3 * eta <= 0.25 * math.pi + 1e-12,
        )

    report = models.ValidationReport(
        c1=c1,
        c2=c2,
        c3=c3,
        overlap_margin=margin,
        anchor_error=anchor_error,
        passed=passed,
    )
    if not report.ok:
        _LOGGER.debug("Geometry validation failed: %s.", ", ".join(report.failures()))

    return report


def _require_valid(geometry: AlternationGeometry) -> None:
    report = validate_assumptions(geometry)
    if report.ok:
        return

    failure = report.failures()[0]
    if failure == "non_overlap":
        offending = int(geometry.indices[1:][int(np.argmax(_gaps(geometry) <= 0.0))])
        msg = f"Segments j-1 and j overlap (margin {report.overlap_margin:.3e})."
        raise errors.GeometryError(msg, assumption=failure, index=offending)

    msg = f"Measured constants c₁={report.c1:.4g}, c₂={report.c2:.4g}, c₃={report.c3:.4g}."
    raise errors.GeometryError(msg, assumption=failure)


# Boundary classification...


def classify_bottom_nodes(geometry: AlternationGeometry, x1: npt.ArrayLike) -> IntArray:
    """Vectorized :func:`classify_bottom_boundary`; returns :class:`~alterna.models.BoundaryKind` values."""
    x = np.asarray(x1, dtype=float)
    if geometry.degenerate:
        return np.full(x.shape, models.BoundaryKind.GAMMA, dtype=np.int64)

    nearest = geometry.nearest_index(x)
    inside = np.zeros(x.shape, dtype=bool)
    endpoint = np.zeros(x.shape, dtype=bool)
    for shift in (-1, 0, 1):
        left, right = geometry.intervals(nearest + shift)
        endpoint |= (np.abs(x - left) <= ENDPOINT_TOLERANCE) | (np.abs(x - right) <= ENDPOINT_TOLERANCE)
        inside |= (left < x) & (x < right)

    kinds = np.full(x.shape, models.BoundaryKind.ROBIN, dtype=np.int64)
    kinds[inside] = models.BoundaryKind.GAMMA
    kinds[endpoint] = models.BoundaryKind.ENDPOINT
    return kinds


def classify_bottom_boundary(geometry: AlternationGeometry, x1: float) -> models.BoundaryKind:
    """Whether (x₁, 0) lies on γ_ε, on Γ_ε, or at an endpoint of a Dirichlet segment."""
    return models.BoundaryKind(int(classify_bottom_nodes(geometry, np.array([x1]))[0]))


# The corrector...


@attr.define(frozen=True, kw_only=True, weakref_slot=False, eq=False)
class CorrectorIngredients:
    """The matching ratios d_j, the inner shifts α_j^± and the amplitude φ_ε built from them."""

    geometry: AlternationGeometry = attr.field()

    mu: float = attr.field()

    strength: float = attr.field()
    """K + μ."""

    d: FloatArray = attr.field()

    alpha_minus: FloatArray = attr.field()

    alpha_plus: FloatArray = attr.field()

    def _lookup(self, values: FloatArray, fill: float, js: npt.ArrayLike) -> FloatArray:
        js = np.asarray(js, dtype=np.int64)
        if self.geometry.periodic:
            return np.full(js.shape, fill)

        return values[self.geometry.window_offsets(js)]

    def d_at(self, js: npt.ArrayLike) -> FloatArray:
        return self._lookup(self.d, 1.0, js)

    def alphas_at(self, js: npt.ArrayLike) -> tuple[FloatArray, FloatArray]:
        return self._lookup(self.alpha_minus, 0.5, js), self._lookup(self.alpha_plus, 0.5, js)

    def g(self, theta: npt.ArrayLike) -> FloatArray:
        """g_ε(θ): d_j near θ = επj, blended into d_{j+1} with the cut-off in between."""
        t = np.asarray(theta, dtype=float) / (self.geometry.epsilon * math.pi)
        js = np.floor(t).astype(np.int64)
        current = self.d_at(js)
        following = self.d_at(js + 1)
        return following - specfun.cutoff(t - js) * (following - current)

    def phi(self, x1: npt.ArrayLike) -> FloatArray:
        """φ_ε(x₁) = (K+μ) ln g / (1 - ε(K+μ) ln g) with g = g_ε(ϑ(x₁))."""
        x1 = np.asarray(x1, dtype=float)
        if self.geometry.periodic:
            return np.zeros(x1.shape)

        log_g = np.log(self.g(self.geometry.diffeomorphism(x1)))
        return self.strength * log_g / (1.0 - self.geometry.epsilon * self.strength * log_g)


def corrector_ingredients(geometry: AlternationGeometry, mu: float) -> CorrectorIngredients:
    if geometry.regime.kind is not models.RegimeKind.ROBIN:
        msg = "The boundary corrector is only defined in the Robin regime."
        raise errors.RegimeError(msg)

    if geometry.degenerate:
        msg = "There is no alternation for η = π/2, so there is nothing to correct."
        raise errors.RegimeError(msg)

    strength = geometry.regime.K + mu
    if not strength >= 0.0:
        msg = f"K + μ must be non-negative, got {strength!r}."
        raise errors.ParameterError(msg)

    eps = geometry.epsilon
    scale = 2.0 * eps * geometry.eta
    diffeomorphism = geometry.diffeomorphism
    s, minus, plus = geometry.segments(geometry.indices)

    centre = diffeomorphism(eps * s)
    alpha_plus = (diffeomorphism(eps * (s + plus)) - centre) / scale
    alpha_minus = (centre - diffeomorphism(eps * (s - minus))) / scale
    d = alpha_plus + alpha_minus

    denominators = 1.0 - eps * strength * np.log(d)
    if np.any(denominators <= 0.0):
        offending = int(geometry.indices[int(np.argmin(denominators))])
        msg = (
            f"1 - ε(K+μ) ln d_j <= 0 at j={offending}: the parameters are outside the"
            " asymptotic regime of the corrector."
        )
        raise errors.ParameterError(msg)

    return CorrectorIngredients(
        geometry=geometry,
        mu=mu,
        strength=strength,
        d=d,
        alpha_minus=alpha_minus,
        alpha_plus=alpha_plus,
    )


@attr.define(frozen=True, kw_only=True, weakref_slot=False, eq=False)
class CorrectorField:
    """W = outer term + boundary layer away from the points + inner terms near them."""

    ingredients: CorrectorIngredients = attr.field()

    def values(self, x1: npt.ArrayLike, x2: npt.ArrayLike) -> FloatArray:
        """W at arbitrary points of the closed strip, without imposing the Dirichlet trace."""
        x1, x2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))
        ingredients = self.ingredients
        geometry = ingredients.geometry
        eps = geometry.epsilon
        eta = geometry.eta
        diffeomorphism = geometry.diffeomorphism

        slope = diffeomorphism.derivative(x1)
        xi1 = diffeomorphism(x1) / eps
        xi2 = slope * x2 / eps
        amplitude = ingredients.strength * (1.0 + eps * ingredients.phi(x1))

        # The χ-supports around distinct points are disjoint, so only the nearest one is active.
        js = np.rint(xi1 / math.pi).astype(np.int64)
        s1 = (xi1 - math.pi * js) / eta
        s2 = xi2 / eta
        weight = specfun.cutoff(np.hypot(s1, s2) * eta**0.75)

        result = -amplitude * slope * x2

        outer = weight < 1.0
        layer = specfun.x_values(xi1[outer], xi2[outer]) + xi2[outer]
        result[outer] += eps * amplitude[outer] * layer * (1.0 - weight[outer])

        inner = weight > 0.0
        alpha_minus, alpha_plus = ingredients.alphas_at(js[inner])
        d = ingredients.d_at(js[inner])
        y = specfun.y_values((s1[inner] + alpha_minus - alpha_plus) / d, s2[inner] / d)
        result[inner] += weight[inner] * (-1.0 + eps * amplitude[inner] * y)

        return result

    def on_grid(self, x1: npt.ArrayLike, x2: npt.ArrayLike) -> FloatArray:
        """W on mesh nodes, with W = -1 on γ_ε nodes and endpoints."""
        x1, x2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))
        result = self.values(x1, x2)
        bottom = x2 == 0.0
        kinds = classify_bottom_nodes(self.ingredients.geometry, x1[bottom])
        trace = result[bottom]
        trace[kinds != models.BoundaryKind.ROBIN] = -1.0
        result[bottom] = trace
        return result

    def gradient(self, x1: npt.ArrayLike, x2: npt.ArrayLike) -> tuple[FloatArray, FloatArray]:
        """Finite-difference gradient; one-sided in x₂ on the boundary."""
        x1, x2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))
        geometry = self.ingredients.geometry
        h = 1e-4 * geometry.epsilon * min(geometry.eta, 1.0)

        d1 = (self.values(x1 + h, x2) - self.values(x1 - h, x2)) / (2.0 * h)

        d2 = np.empty(x1.shape)
        central = x2 >= h
        d2[central] = (
            self.values(x1[central], x2[central] + h) - self.values(x1[central], x2[central] - h)
        ) / (2.0 * h)
        edge = ~central
        d2[edge] = (
            -3.0 * self.values(x1[edge], x2[edge])
            + 4.0 * self.values(x1[edge], x2[edge] + h)
            - self.values(x1[edge], x2[edge] + 2.0 * h)
        ) / (2.0 * h)
        return d1, d2


def build_corrector(geometry: AlternationGeometry, mu: float) -> CorrectorField:
    return CorrectorField(ingredients=corrector_ingredients(geometry, mu))


def eval_corrector(
    geometry: AlternationGeometry,
    mu: float,
    point: models.PlanePoint,
) -> tuple[float, tuple[float, float]]:
    """W and its gradient at one point of the closed strip."""
    x1, x2 = point
    field = build_corrector(geometry, mu)

    value: float | None = None
    if x2 == 0.0:
        kind = classify_bottom_boundary(geometry, x1)
        if kind is models.BoundaryKind.ENDPOINT:
            msg = f"W has a square-root singularity at ({x1!r}, 0)."
            raise errors.EndpointError(msg, nearest=(x1, 0.0))

        if kind is models.BoundaryKind.GAMMA:
            value = -1.0

    if value is None:
        value = float(field.values(np.array([x1]), np.array([x2]))[0])

    d1, d2 = field.gradient(np.array([x1]), np.array([x2]))
    return value, (float(d1[0]), float(d2[0]))


def corrector_on_grid(
    geometry: AlternationGeometry,
    mu: float,
    x1: npt.ArrayLike,
    x2: npt.ArrayLike,
) -> FloatArray:
    return build_corrector(geometry, mu).on_grid(x1, x2)
