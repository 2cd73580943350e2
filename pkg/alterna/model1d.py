"""The homogenized one-dimensional model on (0, π).

The operator Q_μ = -d²/dx₂² with u(π) = 0 and u'(0) = (b + K + μ) u(0) governs the limit of
every band function; its eigenvalues solve √Λ cos √Λπ + c sin √Λπ = 0 with c = b + K + μ.
"""

from __future__ import annotations

import logging
import math
import typing

import numpy as np
from scipy import integrate
from scipy import optimize
from scipy import special

from alterna import errors
from alterna import models
from alterna import specfun

if typing.TYPE_CHECKING:
    import numpy.typing as npt

__all__: typing.Sequence[str] = (
    "DEFAULT_THETA_CONTROL",
    "mu_schedule",
    "lambda_n",
    "lambda_spectrum",
    "q_apply_inverse",
    "q_inverse_bound",
    "solve_bottom_root",
    "upsilon_candidates",
    "upsilon_fit",
    "project_mean",
)


_LOGGER = logging.getLogger("alterna.model1d")

DEFAULT_THETA_CONTROL: typing.Final[models.SeriesControl] = models.SeriesControl(
    max_terms=200_000,
    tail_bound=1e-6,
)
"""θ truncation used by the bottom-root solver; the zeta tail correction makes the actual
error several orders of magnitude smaller than the reported bound."""

_BRACKET_WIDTH: typing.Final[float] = 1e-8
_BRACKET_PAD: typing.Final[float] = 1e-3
_MU_WARNING_THRESHOLD: typing.Final[float] = 1.0
_MU_ROUNDING: typing.Final[float] = 1e-12


# μ-schedule...


def mu_schedule(epsilon: float, eta: float, K: float) -> float:
    """μ = -1/(ε ln η) - K, the distance of the geometry from the exact Robin regime."""
    if not epsilon > 0.0:
        msg = f"ε must be positive, got {epsilon!r}."
        raise errors.ParameterError(msg)

    if not 0.0 < eta < 1.0:
        msg = f"The μ-schedule needs 0 < η < 1 so that ln η < 0, got η={eta!r}."
        raise errors.ParameterError(msg)

    if not K >= 0.0:
        msg = f"K must be non-negative, got {K!r}."
        raise errors.ParameterError(msg)

    mu = -1.0 / (epsilon * math.log(eta)) - K
    # η taken from the schedule itself round-trips to μ = 0 only up to rounding.
    if -_MU_ROUNDING * max(1.0, K) < mu < 0.0:
        mu = 0.0

    if mu < 0.0:
        msg = (
            f"η={eta:.6g} shrinks too fast for K={K:g} at ε={epsilon:g}:"
            f" μ = {mu:.6g} < 0 (the geometry is not in the Robin regime)."
        )
        raise errors.RegimeError(msg)

    if mu > _MU_WARNING_THRESHOLD:
        _LOGGER.warning(
            "μ = %.4g at ε = %g, η = %.4g is outside the asymptotic range (μ > %g).",
            mu,
            epsilon,
            eta,
            _MU_WARNING_THRESHOLD,
        )

    return mu


# Eigenvalues of Q_μ...


def _characteristic(s: float, c: float) -> float:
    # (√Λ cos √Λπ + c sin √Λπ) / √Λ with s = √Λ; finite and sign-faithful down to s = 0.
    return math.cos(math.pi * s) + c * math.pi * float(np.sinc(s))


def _characteristic_ds(s: float, c: float) -> float:
    if s == 0.0:
        return 0.0

    sinc_ds = (math.cos(math.pi * s) - float(np.sinc(s))) / s
    return -math.pi * math.sin(math.pi * s) + c * math.pi * sinc_ds


def _hyperbolic_characteristic(kappa: float, c: float) -> float:
    # (κ cosh κπ + c sinh κπ) / (κ e^{κπ}), finite at κ = 0 and free of overflow.
    decay = math.exp(-2.0 * math.pi * kappa)
    ratio = math.pi if kappa == 0.0 else -math.expm1(-2.0 * math.pi * kappa) / (2.0 * kappa)
    return 0.5 * (1.0 + decay) + c * ratio


def _residual(value: float, c: float) -> float:
    # Residual of √Λ cos √Λπ + c sin √Λπ = 0, relative to the size of its two terms.
    if value >= 0.0:
        s = math.sqrt(value)
        raw = s * math.cos(math.pi * s) + c * math.sin(math.pi * s)
        return abs(raw) / max(1.0, abs(c), s)

    kappa = math.sqrt(-value)
    scale = math.exp(-math.pi * kappa)
    raw = (kappa * math.cosh(math.pi * kappa) + c * math.sinh(math.pi * kappa)) * scale
    return abs(raw) / max(1.0, abs(c), kappa)


def _bracket(n: int, c: float) -> tuple[float, float]:
    if c >= 0.0:
        # The root sits in [n - 1/2, n]; widening to the left keeps the sign change when
        # c = 0 puts the root exactly on the rounded bracket end.
        return n - 0.5 - _BRACKET_PAD, float(n)

    return float(n - 1), n - 0.5


def _polish(s: float, c: float, tol: float) -> float:
    # Rounding in cos πs alone makes Newton steps jitter at a few ulps of s, so the step
    # tolerance scales with s and a run that never settles keeps its last iterate.
    try:
        polished = float(
            optimize.newton(
                _characteristic,
                s,
                fprime=_characteristic_ds,
                args=(c,),
                tol=min(tol, 1e-14 * max(1.0, s)),
                maxiter=20,
                disp=False,
            )
        )
    except (RuntimeError, ZeroDivisionError):
        return s

    # Newton may only refine, never jump out of the bisection interval.
    if not math.isfinite(polished) or abs(polished - s) > _BRACKET_WIDTH:
        return s

    return polished


def lambda_n(
    coeff: models.RobinCoefficient,
    n: int,
    tol: float = 1e-10,
) -> models.ModelEigenvalue:
    """The n-th eigenvalue Λ_n of Q_μ (ascending, n >= 1)."""
    if n < 1:
        msg = f"Eigenvalue indices start at 1, got n={n}."
        raise errors.ParameterError(msg)

    if not tol > 0.0:
        msg = f"The tolerance must be positive, got {tol!r}."
        raise errors.ParameterError(msg)

    c = coeff.c
    critical = -1.0 / math.pi

    if c == critical and n == 1:
        return models.ModelEigenvalue(index=1, value=0.0, residual=0.0)

    if c < critical and n == 1:
        # Negative eigenvalue Λ₁ = -κ² with κ cosh κπ + c sinh κπ = 0, κ ∈ (0, |c|].
        try:
            kappa = float(
                optimize.brentq(_hyperbolic_characteristic, 0.0, -c, args=(c,), xtol=1e-14)
            )
        except ValueError as exc:
            msg = f"Failed to bracket the negative eigenvalue for c={c!r}."
            raise errors.SolverError(msg) from exc

        value = -kappa * kappa
        return models.ModelEigenvalue(index=1, value=value, residual=_residual(value, c))

    lo, hi = _bracket(n, c)
    try:
        s = float(optimize.brentq(_characteristic, lo, hi, args=(c,), xtol=_BRACKET_WIDTH))
    except ValueError as exc:
        msg = (
            f"No sign change of the characteristic function on [{lo:.6g}, {hi:.6g}]"
            f" for n={n}, c={c!r}."
        )
        raise errors.SolverError(msg) from exc

    s = _polish(s, c, tol)
    value = s * s
    residual = _residual(value, c)
    if residual > tol:
        msg = f"Λ_{n} for c={c!r} did not reach the requested tolerance."
        raise errors.SolverError(msg, residual=residual)

    return models.ModelEigenvalue(index=n, value=value, residual=residual)


def lambda_spectrum(
    coeff: models.RobinCoefficient,
    count: int,
    tol: float = 1e-10,
) -> list[models.ModelEigenvalue]:
    return [lambda_n(coeff, n, tol) for n in range(1, count + 1)]


# Q_μ⁻¹...


def q_apply_inverse(
    coeff: models.RobinCoefficient,
    grid: npt.ArrayLike,
    F: npt.ArrayLike,
) -> np.ndarray[typing.Any, np.dtype[np.float64]]:
    """Solve -u'' = F, u'(0) = c u(0), u(π) = 0 on the sample ``grid`` of [0, π].

    Uses the Green kernel built from v₁(t) = 1 + ct and v₂(t) = π - t (Wronskian 1 + cπ)
    with trapezoid quadrature, so the result is second-order accurate in the grid step.
    Complex samples are supported; the kernel is real.
    """
    x = np.asarray(grid, dtype=float)
    samples = np.asarray(F)
    if x.ndim != 1 or samples.shape[-1] != x.size:
        msg = "F must be sampled on the given one-dimensional grid."
        raise errors.ParameterError(msg)

    if x.size < 2 or abs(x[0]) > 1e-12 or abs(x[-1] - math.pi) > 1e-12:  # noqa: PLR2004
        msg = "The sample grid must run from 0 to π."
        raise errors.ParameterError(msg)

    c = coeff.c
    wronskian = 1.0 + c * math.pi
    if abs(wronskian) < 1e-12:  # noqa: PLR2004
        msg = "1 + (b + K + μ)π = 0, so 0 is an eigenvalue of the model operator."
        raise errors.SingularityError(msg)

    v1 = 1.0 + c * x
    v2 = math.pi - x
    left = integrate.cumulative_trapezoid(v1 * samples, x, axis=-1, initial=0.0)
    right_total = integrate.trapezoid(v2 * samples, x, axis=-1)
    right = right_total[..., None] - integrate.cumulative_trapezoid(
        v2 * samples,
        x,
        axis=-1,
        initial=0.0,
    )
    return (v2 * left + v1 * right) / wronskian


def q_inverse_bound(coeff: models.RobinCoefficient) -> float:
    """Constant C with |(Q_μ⁻¹F)(0)| <= C ‖F‖, namely ‖π - t‖ / |1 + cπ| = √(π³/3) / |1 + cπ|."""
    return math.sqrt(math.pi**3 / 3.0) / abs(1.0 + coeff.c * math.pi)


# The bottom-of-spectrum root...


def _trig_pair(value: float) -> tuple[float, float]:
    # cos √Λπ and sin(√Λπ)/√Λ, both real-analytic through Λ = 0.
    if value >= 0.0:
        s = math.sqrt(value)
        return math.cos(math.pi * s), math.pi * float(np.sinc(s))

    kappa = math.sqrt(-value)
    return math.cosh(math.pi * kappa), math.pi * math.sinh(math.pi * kappa) / (math.pi * kappa)


def _bottom_equation(
    value: float,
    epsilon: float,
    coeff: models.RobinCoefficient,
    theta_ctl: models.SeriesControl,
) -> float:
    # The bottom-root equation divided by √Λ.
    cosine, sine_over_root = _trig_pair(value)
    theta = specfun.eval_theta(
        models.ThetaArguments(epsilon * coeff.b, epsilon * epsilon * value),
        theta_ctl,
    ).value
    strength = coeff.strength
    return (cosine + coeff.c * sine_over_root) * (1.0 - epsilon * strength * theta) + (
        epsilon * strength * strength * theta * sine_over_root
    )


def solve_bottom_root(
    epsilon: float,
    coeff: models.RobinCoefficient,
    tol: float = 1e-10,
    *,
    theta_ctl: models.SeriesControl = DEFAULT_THETA_CONTROL,
) -> models.BottomRoot:
    """Root Λ(ε, μ) of the bottom-of-spectrum equation on the branch through Λ₁(μ)."""
    if not epsilon > 0.0:
        msg = f"ε must be positive, got {epsilon!r}."
        raise errors.ParameterError(msg)

    base = lambda_n(coeff, 1, tol).value
    if not abs(epsilon * epsilon * (abs(base) + 1.0)) < 4.0:  # noqa: PLR2004
        msg = f"ε={epsilon!r} puts ε²Λ outside the domain of θ."
        raise errors.ParameterError(msg)

    def equation(value: float) -> float:
        return _bottom_equation(value, epsilon, coeff, theta_ctl)

    method = "newton"
    try:
        root = float(optimize.newton(equation, base, x1=base + 1e-4, tol=tol, maxiter=50))
        if not math.isfinite(root) or abs(root - base) > 1.0:
            msg = "Newton left the admissible branch."
            raise RuntimeError(msg)  # noqa: TRY301

    except (RuntimeError, errors.ParameterError) as exc:
        _LOGGER.debug("Newton failed for ε=%g (%s); falling back to bisection.", epsilon, exc)
        method = "bisection"
        try:
            root = float(optimize.brentq(equation, base - 1.0, base + 1.0, xtol=tol))
        except (ValueError, errors.ParameterError) as bisect_exc:
            msg = f"The bottom-root equation has no bracketed root near Λ₁={base:.6g}."
            raise errors.SolverError(msg) from bisect_exc

    residual = abs(equation(root))
    if residual > max(tol, 1e-9):
        msg = f"The bottom root for ε={epsilon!r} did not converge."
        raise errors.SolverError(msg, residual=residual)

    return models.BottomRoot(
        epsilon=epsilon,
        mu=coeff.mu,
        value=root,
        residual=residual,
        branch_check=abs(root - base),
        method=method,
    )


# Expansion coefficients...


def upsilon_candidates(coeff: models.RobinCoefficient) -> models.UpsilonCandidates:
    """Closed-form candidates for the coefficients of Λ(ε, μ) - Λ₁(μ).

    ``taylor`` holds the exact ε² and ε³ coefficients obtained by implicit differentiation
    of the bottom-root equation at ε = 0 (θ_{t₁} = π²/12, θ_{t₂} = -ζ(3)/8, θ_{t₁t₁} = -ζ(3)/2).
    """
    base = lambda_n(coeff, 1).value
    c = coeff.c
    strength = coeff.strength
    b = coeff.b
    denominator = math.pi * c * c + math.pi * base + c
    zeta3 = float(special.zeta(3.0))

    published_first = (math.pi**2 * b / 6.0) * base * (base + coeff.mu) ** 2 / denominator
    published_second = -(zeta3 / 4.0) * base * strength**2 * (base + 2.0 * b * b) / denominator

    taylor = {
        2: (math.pi**2 * b / 6.0) * strength**2 * base / denominator,
        3: -(zeta3 / 4.0) * strength**2 * base * (base + 2.0 * b * b) / denominator,
    }
    return models.UpsilonCandidates(
        published_first=published_first,
        published_second=published_second,
        taylor=taylor,
    )


def upsilon_fit(
    coeff: models.RobinCoefficient,
    epsilons: typing.Sequence[float],
    degree: int,
    *,
    tol: float = 1e-12,
) -> models.UpsilonFit:
    """Least-squares fit Λ(ε, μ) - Λ₁(μ) ≈ Σ_{j=1..degree} Υ_j ε^j over ``epsilons``."""
    if degree < 1 or degree > len(epsilons) - 1:
        msg = f"The fit degree must lie in [1, {len(epsilons) - 1}], got {degree}."
        raise errors.ParameterError(msg)

    base = lambda_n(coeff, 1).value
    eps = np.asarray(epsilons, dtype=float)
    deviations = np.array([solve_bottom_root(e, coeff, tol).value - base for e in eps])

    design = np.vander(eps, degree + 1, increasing=True)[:, 1:]
    solution, *_ = np.linalg.lstsq(design, deviations, rcond=None)
    residual = float(np.sqrt(np.mean((design @ solution - deviations) ** 2)))

    return models.UpsilonFit(
        coefficients=[float(v) for v in solution],
        residual=residual,
        candidates=upsilon_candidates(coeff),
    )


# Mean projection...


def project_mean(
    f: npt.ArrayLike,
    cell_width: float,
) -> tuple[np.ndarray[typing.Any, np.dtype[typing.Any]], np.ndarray[typing.Any, np.dtype[typing.Any]]]:
    """Split a periodic cell grid function f[i₁, i₂] into its x₁-mean and the fluctuation.

    Rows i₁ are the equispaced periodic nodes of a cell of width ``cell_width`` (the repeated
    right endpoint is not stored), for which the trapezoid rule is the plain mean. Returns
    F_ε sampled on the x₂ nodes and f⊥ = f - F_ε on the full grid.
    """
    samples = np.asarray(f)
    if samples.ndim != 2:  # noqa: PLR2004
        msg = "Cell grid functions are two-dimensional arrays indexed [i1, i2]."
        raise errors.ParameterError(msg)

    if not cell_width > 0.0:
        msg = f"The cell width must be positive, got {cell_width!r}."
        raise errors.ParameterError(msg)

    mean = samples.mean(axis=0)
    return mean, samples - mean[None, :]
