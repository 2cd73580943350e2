"""ε-sweeps that measure resolvent, band and bottom-of-spectrum convergence.

Every sweep point is independent: it rebuilds its geometry, mesh and operators from the plan
and ε alone, so records are reproducible from ``(plan, ε, seed)`` and points may run in any
order. :func:`finalize` merges point results into a deterministically sorted table.
"""

from __future__ import annotations

import datetime
import logging
import math
import time
import typing

import attr
import numpy as np
from scipy import optimize

from alterna import discretize
from alterna import errors
from alterna import geometry as geometry_
from alterna import model1d
from alterna import models
from alterna import observables
from alterna.impl import solvers

if typing.TYPE_CHECKING:
    from alterna.api import solver_trait
    from alterna.internal import data_binding

__all__: typing.Sequence[str] = (
    "SweepPoint",
    "PointResult",
    "FLOOR_SLOPE",
    "STRIP_TOLERANCE",
    "sweep_points",
    "run_point",
    "finalize",
    "run_experiment",
    "run_robin_resolvent",
    "run_dirichlet_resolvent",
    "run_band_sweep",
    "run_bottom_asymptotics",
    "rate_fit",
    "bound_ratio_trend",
    "summarize",
)


_LOGGER = logging.getLogger("alterna.experiments")

FLOOR_SLOPE: typing.Final[float] = 0.1
"""Fits flatter than this are flagged as sitting at a discretization floor."""

STRIP_TOLERANCE: typing.Final[float] = 0.01
"""Largest acceptable relative change when the truncated strip is doubled."""

_MIN_ORDER: typing.Final[float] = 0.25
_MAX_ORDER: typing.Final[float] = 4.0

_DETERMINISTIC_PROBES: typing.Final[frozenset[str]] = frozenset(
    {"eigenvector", "bump", "oscillatory", "boundary"},
)


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class SweepPoint:
    epsilon: float = attr.field()

    strip_factor: float = attr.field(default=1.0)
    """Multiplies the strip half-length; points with a factor other than one are checks."""

    @property
    def is_check(self) -> bool:
        return self.strip_factor != 1.0


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class PointResult:
    point: SweepPoint = attr.field()

    records: typing.Sequence[models.ConvergenceRecord] = attr.field()

    elapsed: float = attr.field(default=0.0)


def sweep_points(plan: models.SweepPlan) -> list[SweepPoint]:
    points = [SweepPoint(epsilon=epsilon) for epsilon in plan.epsilons]
    if plan.strip_check and not plan.experiment.needs_periodic:
        points.append(SweepPoint(epsilon=plan.epsilons[0], strip_factor=2.0))

    return points


# Shared setup...


def _geometry(plan: models.SweepPlan, epsilon: float, half_length: float) -> geometry_.AlternationGeometry:
    # Strips span at least eight cells, plus one neighbouring segment on each side.
    cell = epsilon * math.pi
    n_points = math.ceil(max(1.5 * half_length, 9.0 * cell) / cell) + 2
    return geometry_.build_from_template(plan.geometry, epsilon, seed=plan.seed, n_points=n_points)


def _shortest_half_length(geometry: geometry_.AlternationGeometry) -> float:
    return float(min(geometry.minus.min(), geometry.plus.min()))


def _strip(
    plan: models.SweepPlan,
    point: SweepPoint,
) -> tuple[geometry_.AlternationGeometry, discretize.StripMesh]:
    policy = plan.mesh
    half_length = policy.half_length * point.strip_factor
    geometry = _geometry(plan, point.epsilon, half_length)
    mesh = discretize.build_strip_mesh(
        geometry,
        half_length,
        policy.cell_nodes(_shortest_half_length(geometry)),
        policy.x2_intervals,
        x2_grading=policy.x2_grading,
    )
    return geometry, mesh


def _cell(
    plan: models.SweepPlan,
    epsilon: float,
    policy: models.MeshPolicy | None = None,
) -> tuple[geometry_.AlternationGeometry, discretize.CellMesh]:
    policy = policy or plan.mesh
    geometry = geometry_.build_from_template(plan.geometry, epsilon, n_points=2)
    n1 = policy.cell_nodes(geometry.eta)
    n2, grading = policy.cell_x2(epsilon * math.pi / n1)
    mesh = discretize.build_cell_mesh(geometry, n1, n2, x2_grading=grading)
    return geometry, mesh


def _probe_records(
    observable: observables.Observable,
    scales: observables.Scales,
    measured: typing.Mapping[str, float],
    *,
    mesh: tuple[int, int],
    seed: int,
    tau: float | None = None,
) -> list[models.ConvergenceRecord]:
    records = [
        observable.record(scales, error=error, mesh=mesh, seed=seed, tau=tau, probe=probe)
        for probe, error in measured.items()
    ]
    records.append(
        observable.record(
            scales,
            error=max(measured.values()),
            mesh=mesh,
            seed=seed,
            tau=tau,
            probe=observables.PROBE_MAX,
        ),
    )
    return records


# Sweep points...


def _robin_point(
    plan: models.SweepPlan,
    point: SweepPoint,
    solver: solver_trait.SpectralSolver,
) -> list[models.ConvergenceRecord]:
    geometry, mesh = _strip(plan, point)
    K = geometry.regime.K
    mu = model1d.mu_schedule(point.epsilon, geometry.eta, K)
    physics = plan.physics

    perturbed = solver.resolvent(
        discretize.assemble_strip(mesh, physics, geometry, discretize.OperatorKind.PERTURBED),
    )
    homogenized = solver.resolvent(
        discretize.assemble_strip(
            mesh,
            physics,
            geometry,
            discretize.OperatorKind.ROBIN_HOMOGENIZED,
            mu=mu,
        ),
    )
    leading = solver.resolvent(
        discretize.assemble_strip(
            mesh,
            physics,
            geometry,
            discretize.OperatorKind.ROBIN_HOMOGENIZED,
            mu=0.0,
        ),
    )

    corrector: np.ndarray[typing.Any, np.dtype[np.float64]] | None = None
    if not geometry.degenerate:
        x1, x2 = mesh.grid()
        corrector = geometry_.corrector_on_grid(geometry, mu, x1, x2)

    measured: dict[observables.Observable, dict[str, float]] = {
        observables.RESOLVENT_L2_MU: {},
        observables.RESOLVENT_L2_ZERO: {},
        observables.RESOLVENT_H1_ZERO: {},
        observables.RESOLVENT_H1_MU: {},
    }
    if corrector is not None:
        measured[observables.CORRECTOR_H1] = {}

    support = 0.5 * plan.mesh.half_length
    for name, f in discretize.probe_functions(mesh, support, plan.seed).items():
        u = perturbed(f)
        u_mu = homogenized(f)
        u_zero = leading(f)
        measured[observables.RESOLVENT_L2_MU][name] = discretize.norms(u - u_mu, mesh)
        measured[observables.RESOLVENT_L2_ZERO][name] = discretize.norms(u - u_zero, mesh)
        measured[observables.RESOLVENT_H1_ZERO][name] = discretize.norms(
            u - u_zero,
            mesh,
            discretize.NormKind.H1,
        )
        measured[observables.RESOLVENT_H1_MU][name] = discretize.norms(
            u - u_mu,
            mesh,
            discretize.NormKind.H1,
        )
        if corrector is not None:
            measured[observables.CORRECTOR_H1][name] = discretize.norms(
                u - (1.0 + corrector) * u_mu,
                mesh,
                discretize.NormKind.H1,
            )

    scales = observables.Scales(epsilon=point.epsilon, strength=K + mu, mu=mu, eta=geometry.eta)
    records: list[models.ConvergenceRecord] = []
    for observable, values in measured.items():
        records.extend(_probe_records(observable, scales, values, mesh=mesh.shape, seed=plan.seed))

    return records


def _dirichlet_point(
    plan: models.SweepPlan,
    point: SweepPoint,
    solver: solver_trait.SpectralSolver,
) -> list[models.ConvergenceRecord]:
    geometry, mesh = _strip(plan, point)
    physics = plan.physics

    perturbed = solver.resolvent(
        discretize.assemble_strip(mesh, physics, geometry, discretize.OperatorKind.PERTURBED),
    )
    homogenized = solver.resolvent(
        discretize.assemble_strip(
            mesh,
            physics,
            geometry,
            discretize.OperatorKind.DIRICHLET_HOMOGENIZED,
        ),
    )

    support = 0.5 * plan.mesh.half_length
    measured = {
        name: discretize.norms(perturbed(f) - homogenized(f), mesh, discretize.NormKind.H1)
        for name, f in discretize.probe_functions(mesh, support, plan.seed).items()
    }
    scales = observables.Scales(epsilon=point.epsilon, eta=geometry.eta)
    return _probe_records(
        observables.DIRICHLET_H1,
        scales,
        measured,
        mesh=mesh.shape,
        seed=plan.seed,
    )


def _band_point(
    plan: models.SweepPlan,
    point: SweepPoint,
    solver: solver_trait.SpectralSolver,
) -> list[models.ConvergenceRecord]:
    epsilon = point.epsilon
    geometry, mesh = _cell(plan, epsilon)
    K = geometry.regime.K
    mu = model1d.mu_schedule(epsilon, geometry.eta, K)
    coefficient = models.RobinCoefficient(b=plan.physics.b, K=K, mu=mu)
    model = [eigenvalue.value for eigenvalue in model1d.lambda_spectrum(coefficient, plan.bands)]

    taus = plan.sorted_taus
    widest = max(taus, key=abs)
    base = observables.Scales(
        epsilon=epsilon,
        strength=K + mu,
        mu=mu,
        eta=geometry.eta,
        kappa=plan.kappa,
        tau=abs(widest),
    )
    probes = discretize.probe_functions(mesh, seed=plan.seed)
    cell_width = epsilon * math.pi
    records: list[models.ConvergenceRecord] = []
    bands: dict[float, np.ndarray[typing.Any, np.dtype[np.float64]]] = {}

    for tau in taus:
        op = discretize.assemble_cell(mesh, tau, plan.physics)
        spectrum = solver.eigensolve(op, plan.bands)
        shifted = spectrum.eigenvalues
        bands[tau] = shifted + (tau / epsilon) ** 2

        for n in range(1, plan.bands + 1):
            records.append(
                observables.BAND_EIGENVALUE.record(
                    attr.evolve(base, index=n),
                    error=abs(shifted[n - 1] - model[n - 1]),
                    mesh=mesh.shape,
                    seed=plan.seed,
                    tau=tau,
                    probe=f"n{n}",
                ),
            )

        # (H - τ²/ε²)⁻¹f against Q_μ⁻¹ applied to the x₁-mean of f, extended constantly in x₁.
        solve = solver.resolvent(op, z=0.0)
        measured: dict[str, float] = {}
        for name, f in probes.items():
            mean, _ = model1d.project_mean(mesh.as_grid(f), cell_width)
            limit = model1d.q_apply_inverse(coefficient, mesh.x2, mean)
            measured[name] = discretize.norms(solve(f) - limit[None, :], mesh)

        records.extend(
            _probe_records(
                observables.CELL_RESOLVENT,
                base,
                measured,
                mesh=mesh.shape,
                seed=plan.seed,
                tau=tau,
            ),
        )

    first = {tau: float(values[0]) for tau, values in bands.items()}
    violation = max(0.0, first[0.0] - min(first.values()))
    records.append(
        observables.BAND_BOTTOM.record(base, error=violation, mesh=mesh.shape, seed=plan.seed),
    )

    if widest != 0.0:
        span = abs(first[widest] - first[0.0])
        records.append(
            observables.BAND_SPAN.record(base, error=span, mesh=mesh.shape, seed=plan.seed),
        )

    for n in range(1, plan.bands):
        top = max(float(values[n - 1]) for values in bands.values())
        bottom = min(float(values[n]) for values in bands.values())
        overlap = max(0.0, top - bottom)
        _LOGGER.info(
            "ε=%g: bands %d and %d %s over the τ grid (%.6g vs %.6g).",
            epsilon,
            n,
            n + 1,
            "overlap" if overlap > 0.0 else "do not overlap",
            top,
            bottom,
        )
        records.append(
            observables.BAND_OVERLAP.record(
                attr.evolve(base, index=n),
                error=overlap,
                mesh=mesh.shape,
                seed=plan.seed,
                probe=f"n{n}",
            ),
        )

    return records


def _extrapolate(values: typing.Sequence[float], name: str, epsilon: float) -> float:
    """Richardson limit of ``values`` computed at refinement levels 1, 2, ..., len(values).

    The order is estimated from the last three levels. Sequences that do not converge
    monotonically at an order between 1/4 and 4 fall back to the finest value.
    """
    if len(values) < 3:  # noqa: PLR2004
        return values[-1]

    finest = len(values)
    levels = (finest - 2.0, finest - 1.0, float(finest))
    coarse, middle, fine = values[-3:]
    observed = (coarse - middle) / (middle - fine) if middle != fine else math.inf

    def ratio(order: float) -> float:
        w = [level**-order for level in levels]
        return (w[0] - w[1]) / (w[1] - w[2])

    if not ratio(_MIN_ORDER) < observed < ratio(_MAX_ORDER):
        _LOGGER.warning(
            "ε=%g: %s does not converge monotonically over %d refinement levels (%s);"
            " using the finest mesh.",
            epsilon,
            name,
            finest,
            ", ".join(f"{v:.8g}" for v in values),
        )
        return fine

    order = float(optimize.brentq(lambda p: ratio(p) - observed, _MIN_ORDER, _MAX_ORDER))
    w_middle, w_fine = levels[1] ** -order, levels[2] ** -order
    limit = fine - (middle - fine) * w_fine / (w_middle - w_fine)
    _LOGGER.debug(
        "ε=%g: %s converges at order %.2f; extrapolated %.10g from %.10g.",
        epsilon,
        name,
        order,
        limit,
        fine,
    )
    return limit


def _bottom_point(
    plan: models.SweepPlan,
    point: SweepPoint,
    solver: solver_trait.SpectralSolver,
) -> list[models.ConvergenceRecord]:
    epsilon = point.epsilon
    geometry, _ = _cell(plan, epsilon)
    K = geometry.regime.K
    b = plan.physics.b

    if geometry.degenerate:
        # Γ₋ is entirely Dirichlet, so the cell bottom is the Dirichlet eigenvalue 1 of (0, π).
        mu: float | None = None
        strength = 0.0
        root = leading = 1.0
    else:
        mu = model1d.mu_schedule(epsilon, geometry.eta, K)
        strength = K + mu
        coefficient = models.RobinCoefficient(b=b, K=K, mu=mu)
        root = model1d.solve_bottom_root(epsilon, coefficient).value
        leading = model1d.lambda_n(coefficient, 1).value

    bottoms: list[float] = []
    rayleighs: list[float] = []
    shape = (0, 0)
    for level in range(1, plan.mesh.extrapolation_levels + 1):
        policy = attr.evolve(plan.mesh, refinement=plan.mesh.refinement * level)
        level_geometry, mesh = _cell(plan, epsilon, policy)
        spectrum = solver.eigensolve(discretize.assemble_cell(mesh, 0.0, plan.physics), 1)
        bottoms.append(float(spectrum.eigenvalues[0]))
        rayleighs.append(discretize.quasimode_rayleigh(mesh, level_geometry, mu or 0.0, root, b=b)[0])
        shape = mesh.shape

    bottom = _extrapolate(bottoms, "λ₁", epsilon)
    mismatch = abs(_extrapolate(rayleighs, "the quasimode Rayleigh quotient", epsilon) - root)

    scales = observables.Scales(epsilon=epsilon, strength=strength, mu=mu, eta=geometry.eta)
    _LOGGER.debug("ε=%g: λ₁=%.10g, Λ=%.10g, Λ₁=%.10g.", epsilon, bottom, root, leading)
    return [
        observables.BOTTOM_ROOT.record(
            scales,
            error=abs(bottom - root),
            mesh=shape,
            seed=plan.seed,
        ),
        observables.BOTTOM_LEADING.record(
            scales,
            error=abs(bottom - leading),
            mesh=shape,
            seed=plan.seed,
        ),
        observables.QUASIMODE.record(scales, error=mismatch, mesh=shape, seed=plan.seed),
    ]


_PointFunction = typing.Callable[
    [models.SweepPlan, SweepPoint, "solver_trait.SpectralSolver"],
    list[models.ConvergenceRecord],
]

_POINT_FUNCTIONS: typing.Final[typing.Mapping[models.ExperimentKind, _PointFunction]] = {
    models.ExperimentKind.ROBIN_RESOLVENT: _robin_point,
    models.ExperimentKind.DIRICHLET_RESOLVENT: _dirichlet_point,
    models.ExperimentKind.BAND_SWEEP: _band_point,
    models.ExperimentKind.BOTTOM_ASYMPTOTICS: _bottom_point,
}


def run_point(
    plan: models.SweepPlan,
    point: SweepPoint,
    solver: solver_trait.SpectralSolver,
) -> PointResult:
    started = time.perf_counter()
    records = _POINT_FUNCTIONS[plan.experiment](plan, point, solver)
    elapsed = time.perf_counter() - started
    _LOGGER.info(
        "%s ε=%g%s: %d records in approximately %.2f [s].",
        plan.experiment.value,
        point.epsilon,
        f" (strip x{point.strip_factor:g})" if point.is_check else "",
        len(records),
        elapsed,
    )
    return PointResult(point=point, records=tuple(records), elapsed=elapsed)


# Aggregation...


def _strip_truncation(
    plan: models.SweepPlan,
    records: typing.Sequence[models.ConvergenceRecord],
    check: PointResult,
) -> list[models.ConvergenceRecord]:
    epsilon = check.point.epsilon
    reference = {
        (r.observable, r.probe): r
        for r in records
        if r.epsilon == epsilon and r.probe in _DETERMINISTIC_PROBES
    }

    change = 0.0
    for record in check.records:
        original = reference.get((record.observable, record.probe))
        if original is None or original.error == 0.0:
            continue

        change = max(change, abs(record.error - original.error) / original.error)

    if change > STRIP_TOLERANCE:
        _LOGGER.warning(
            "Doubling the strip at ε=%g changed the recorded errors by %.2f%%.",
            epsilon,
            100.0 * change,
        )

    sample = check.records[0]
    scales = observables.Scales(epsilon=epsilon, mu=sample.mu, eta=sample.eta)
    return [
        observables.STRIP_TRUNCATION.record(
            scales,
            error=change,
            mesh=(sample.mesh_n1, sample.mesh_n2),
            seed=plan.seed,
        ),
    ]


def finalize(
    plan: models.SweepPlan,
    results: typing.Iterable[PointResult],
) -> list[models.ConvergenceRecord]:
    """Merge point results, fold strip checks into records and sort the table."""
    results = list(results)
    records = [r for result in results if not result.point.is_check for r in result.records]
    for result in results:
        if result.point.is_check and result.records:
            records.extend(_strip_truncation(plan, records, result))

    return sorted(records, key=lambda record: record.sort_key)


def _default_solver(plan: models.SweepPlan) -> solver_trait.SpectralSolver:
    return solvers.SparseDirectSolver(seed=plan.seed)


def run_experiment(
    plan: models.SweepPlan,
    solver: solver_trait.SpectralSolver | None = None,
) -> list[models.ConvergenceRecord]:
    """Run every sweep point of ``plan`` in turn."""
    solver = solver or _default_solver(plan)
    started = time.perf_counter()
    results = [run_point(plan, point, solver) for point in sweep_points(plan)]
    records = finalize(plan, results)
    _LOGGER.info(
        "Finished %s in approximately %.2f [s].",
        plan.experiment.value,
        time.perf_counter() - started,
    )
    return records


def _require(plan: models.SweepPlan, kind: models.ExperimentKind) -> None:
    if plan.experiment is not kind:
        msg = f"Expected a {kind.value} plan, got {plan.experiment.value}."
        raise errors.ParameterError(msg)


def run_robin_resolvent(
    plan: models.SweepPlan,
    solver: solver_trait.SpectralSolver | None = None,
) -> list[models.ConvergenceRecord]:
    _require(plan, models.ExperimentKind.ROBIN_RESOLVENT)
    return run_experiment(plan, solver)


def run_dirichlet_resolvent(
    plan: models.SweepPlan,
    solver: solver_trait.SpectralSolver | None = None,
) -> list[models.ConvergenceRecord]:
    _require(plan, models.ExperimentKind.DIRICHLET_RESOLVENT)
    return run_experiment(plan, solver)


def run_band_sweep(
    plan: models.SweepPlan,
    solver: solver_trait.SpectralSolver | None = None,
) -> list[models.ConvergenceRecord]:
    _require(plan, models.ExperimentKind.BAND_SWEEP)
    return run_experiment(plan, solver)


def run_bottom_asymptotics(
    plan: models.SweepPlan,
    solver: solver_trait.SpectralSolver | None = None,
) -> list[models.ConvergenceRecord]:
    _require(plan, models.ExperimentKind.BOTTOM_ASYMPTOTICS)
    return run_experiment(plan, solver)


# Rates...


def rate_fit(
    records: typing.Sequence[models.ConvergenceRecord],
    *,
    last: int | None = None,
) -> models.RateFit:
    """Least-squares line through (ln ε, ln error), using the ``last`` smallest ε (default all)."""
    ordered = sorted(records, key=lambda record: -record.epsilon)
    if last is not None:
        ordered = ordered[-last:]

    if len(ordered) < 2:  # noqa: PLR2004
        msg = f"A rate fit needs at least two records, got {len(ordered)}."
        raise errors.ParameterError(msg)

    if len({r.observable for r in ordered}) != 1:
        msg = "A rate fit takes the records of a single observable."
        raise errors.ParameterError(msg)

    if any(not r.error > 0.0 for r in ordered):
        msg = "Rate fits need strictly positive errors."
        raise errors.ParameterError(msg)

    x = np.log([r.epsilon for r in ordered])
    y = np.log([r.error for r in ordered])
    slope, intercept = np.polyfit(x, y, 1)

    residual = float(np.sum((y - (slope * x + intercept)) ** 2))
    spread = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - residual / spread if spread > 0.0 else 1.0

    floor = abs(float(slope)) < FLOOR_SLOPE
    if floor:
        _LOGGER.warning(
            "%s: slope %.3f suggests the errors sit at a discretization floor.",
            ordered[0].observable,
            slope,
        )

    return models.RateFit(
        slope=float(slope),
        intercept=float(intercept),
        r2=r2,
        points=len(ordered),
        floor_warning=floor,
    )


def _headline(records: typing.Sequence[models.ConvergenceRecord]) -> dict[str, list[models.ConvergenceRecord]]:
    grouped: dict[str, list[models.ConvergenceRecord]] = {}
    for record in records:
        observable = observables.by_name(record.observable)
        if observable.is_headline(record):
            grouped.setdefault(record.observable, []).append(record)

    return grouped


def bound_ratio_trend(
    records: typing.Sequence[models.ConvergenceRecord],
) -> list[tuple[float, float]]:
    """(ε, error / bound) for one observable's headline records, ε descending.

    Records whose bound vanishes have no ratio and are left out.
    """
    if len({r.observable for r in records}) > 1:
        msg = "Bound ratios are computed per observable."
        raise errors.ParameterError(msg)

    ratios: list[tuple[float, float]] = []
    for record in sorted(records, key=lambda r: -r.epsilon):
        if record.theory_bound > 0.0:
            ratios.append((record.epsilon, record.error / record.theory_bound))
        else:
            _LOGGER.debug(
                "%s at ε=%g has a vanishing bound and is left out of the ratio trend.",
                record.observable,
                record.epsilon,
            )

    return ratios


def summarize(
    plan: models.SweepPlan,
    records: typing.Sequence[models.ConvergenceRecord],
) -> data_binding.JSONObject:
    """The JSON summary: one rate fit per observable with enough positive headline records."""
    summaries: list[data_binding.JSONObject] = []
    for name, group in sorted(_headline(records).items()):
        positive = [r for r in group if r.error > 0.0]
        fit: data_binding.JSONObject | None = None
        if len({r.epsilon for r in positive}) >= 2:  # noqa: PLR2004
            result = rate_fit(positive)
            fit = {
                "slope": result.slope,
                "intercept": result.intercept,
                "r2": result.r2,
                "points": result.points,
                "floor_warning": result.floor_warning,
            }

        summaries.append(
            {
                "name": name,
                "rate_fit": fit,
                "records": len(group),
                "bound_ratios": [[e, ratio] for e, ratio in bound_ratio_trend(group)],
            },
        )

    return {
        "experiment": plan.experiment.value,
        "observables": summaries,
        "seed": plan.seed,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "metadata": {
            "epsilons": list(plan.epsilons),
            "regime": plan.geometry.regime.kind.value,
            "K": plan.geometry.regime.K,
            "operator_norms": (
                "Operator norms are approximated by the maximum over five seeded probe"
                " right-hand sides (probe 'max')."
            ),
            "resolvent_point": "(H + i)⁻¹",
        },
    }
