"""Special functions of the boundary-layer and inner expansions.

All evaluators come in two flavours: vectorized ``*_values`` functions operating on numpy
arrays without any singularity checks (callers mask singular points themselves), and
pointwise ``eval_*`` functions taking a :class:`~alterna.models.PlanePoint` which validate
their input and raise :class:`~alterna.errors.DomainError` near singular points.
"""

from __future__ import annotations

import logging
import math
import typing

import numpy as np
from scipy import special

from alterna import errors
from alterna import models

if typing.TYPE_CHECKING:
    import numpy.typing as npt

__all__: typing.Sequence[str] = (
    "SINGULAR_RADIUS",
    "cutoff",
    "x_values",
    "y_values",
    "y1_values",
    "x_eta_values",
    "z_values",
    "eval_X",
    "eval_X_series",
    "eval_X_asym",
    "eval_Y",
    "eval_Y1_leading",
    "eval_X_eta",
    "eval_X_eta_derivatives",
    "eval_Z",
    "z_l2_norm_exact",
    "z_l2_bound",
    "eval_theta",
)


FloatArray = np.ndarray[typing.Any, np.dtype[np.float64]]
ComplexArray = np.ndarray[typing.Any, np.dtype[np.complex128]]

SINGULAR_RADIUS: typing.Final[float] = 1e-8
"""Distance to a singular point below which pointwise evaluation is refused."""

_LN2: typing.Final[float] = math.log(2.0)
_CHUNK: typing.Final[int] = 2048

_LOGGER = logging.getLogger("alterna.specfun")


# Cut-off...


def cutoff(t: npt.ArrayLike) -> FloatArray:
    """C² cut-off χ: one for t <= 1/4, zero for t >= 3/4, quintic smoothstep in between."""
    s = np.clip((0.75 - np.asarray(t, dtype=float)) * 2.0, 0.0, 1.0)
    return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)


# Vectorized kernels...


def _as_complex(first: npt.ArrayLike, second: npt.ArrayLike) -> ComplexArray:
    first, second = np.broadcast_arrays(
        np.asarray(first, dtype=float),
        np.asarray(second, dtype=float),
    )
    z = np.empty(first.shape, dtype=complex)
    # Assigning parts separately keeps the sign of a zero imaginary part (+0.0), which the
    # principal square roots rely on along the boundary.
    z.real = first
    z.imag = second
    return z


def x_values(xi1: npt.ArrayLike, xi2: npt.ArrayLike) -> FloatArray:
    """Boundary-layer function X = Re ln sin(ξ₁ + iξ₂) + ln 2 - ξ₂.

    Evaluated as ln|1 - exp(2i(ξ₁ + iξ₂))|, which has no cancellation for large ξ₂.
    """
    rho = _as_complex(xi1, xi2)
    w = np.exp(2j * rho)
    return 0.5 * np.log1p(np.abs(w) ** 2 - 2.0 * w.real)


def _arccosh_pair(z: ComplexArray) -> tuple[ComplexArray, ComplexArray]:
    # √(z - 1)·√(z + 1): cut on [-1, 1], √1 = 1, continuous on the closed upper half-plane.
    root = np.sqrt(z - 1.0) * np.sqrt(z + 1.0)
    return z + root, root


def y_values(s1: npt.ArrayLike, s2: npt.ArrayLike) -> FloatArray:
    """Inner function Y = Re ln(z + √(z² - 1)), z = ς₁ + iς₂."""
    w, _ = _arccosh_pair(_as_complex(s1, s2))
    return np.log(np.abs(w))


def y1_values(s1: npt.ArrayLike, s2: npt.ArrayLike) -> FloatArray:
    """Explicit part of the first inner correction, ς₁ Im ln(z + √(z²-1)) - Im √(z²-1) - πς₁/2."""
    z = _as_complex(s1, s2)
    w, root = _arccosh_pair(z)
    return z.real * np.angle(w) - root.imag - 0.5 * math.pi * z.real


def _reduce_period(xi1: FloatArray) -> FloatArray:
    # X_η is even and π-periodic in ξ₁; fold onto [0, π/2].
    t = np.mod(xi1, math.pi)
    return np.where(t > 0.5 * math.pi, math.pi - t, t)


def _x_eta_parts(
    xi1: npt.ArrayLike,
    xi2: npt.ArrayLike,
    eta: float,
) -> tuple[ComplexArray, ComplexArray, ComplexArray]:
    xi1, xi2 = np.broadcast_arrays(np.asarray(xi1, dtype=float), np.asarray(xi2, dtype=float))
    rho = _as_complex(_reduce_period(xi1), xi2)
    sin_rho = np.sin(rho)
    sin_eta = math.sin(eta)
    root = np.sqrt(sin_rho - sin_eta) * np.sqrt(sin_rho + sin_eta)
    return rho, sin_rho, root


def x_eta_values(xi1: npt.ArrayLike, xi2: npt.ArrayLike, eta: float) -> FloatArray:
    """Dirichlet-limit function X_η = Re ln(sin ρ + √(sin²ρ - sin²η)) - ξ₂."""
    rho, sin_rho, root = _x_eta_parts(xi1, xi2, eta)
    return np.log(np.abs(sin_rho + root)) - rho.imag


def _x_harmonics(n: FloatArray, xi1: float, xi2: float) -> FloatArray:
    # Shared by the X and Z series so that both produce bit-identical terms when β = εb = 0.
    return np.exp(-(2.0 * n) * xi2) * np.cos((2.0 * n) * xi1)


def _z_shift(beta: float) -> float:
    # Largest deficit 2n - √(4n² - β²), attained at n = 1.
    return 2.0 - math.sqrt(4.0 - beta * beta)


def z_values(
    xi1: npt.ArrayLike,
    xi2: npt.ArrayLike,
    eps_b: float,
    beta: float,
    *,
    n_terms: int = 4000,
) -> tuple[FloatArray, float]:
    """Vectorized Z(ξ, εb, β) valid up to and including the boundary ξ₂ = 0.

    Z is split into the closed-form X plus an absolutely convergent remainder series.
    Returns the values and a bound for the discarded tail of the remainder.
    """
    _check_z_parameters(eps_b, beta)
    xi1, xi2 = np.broadcast_arrays(np.asarray(xi1, dtype=float), np.asarray(xi2, dtype=float))
    flat1 = xi1.ravel()
    flat2 = xi2.ravel()

    n = np.arange(1, n_terms + 1, dtype=float)
    s = np.sqrt(4.0 * n * n - beta * beta)
    out = x_values(flat1, flat2)

    for start in range(0, flat1.size, _CHUNK):
        block1 = flat1[start : start + _CHUNK, None]
        block2 = flat2[start : start + _CHUNK, None]
        remainder = np.cos((2.0 * n) * block1) * (
            np.exp(-(2.0 * n) * block2) / n - 2.0 * np.exp(-s * block2) / (s + eps_b)
        )
        out[start : start + _CHUNK] += remainder.sum(axis=1)

    c = _z_shift(beta)
    amplitude = (c + abs(eps_b)) / (2.0 - c - abs(eps_b)) + beta * beta / (
        2.0 * math.e * (2.0 - c)
    )
    return out.reshape(xi1.shape), amplitude / n_terms


# Pointwise validation...


def _nearest_lattice(point: models.PlanePoint) -> tuple[int, float]:
    j = round(point.first / math.pi)
    return j, math.hypot(point.first - math.pi * j, point.second)


def _check_lattice(point: models.PlanePoint, name: str) -> None:
    j, distance = _nearest_lattice(point)
    if distance < SINGULAR_RADIUS:
        msg = f"{name} is logarithmically singular at (πj, 0); use the asymptotic form instead."
        raise errors.DomainError(msg, nearest=(math.pi * j, 0.0))


def _check_corners(point: models.PlanePoint, name: str) -> None:
    for corner in (-1.0, 1.0):
        if math.hypot(point.first - corner, point.second) < SINGULAR_RADIUS:
            msg = f"{name} has a square-root singularity at the segment endpoints (±1, 0)."
            raise errors.DomainError(msg, nearest=(corner, 0.0))


def _first_sufficient(bounds: FloatArray, ctl: models.SeriesControl, name: str) -> int:
    # ``bounds[k]`` is the tail bound after k + 1 terms and is non-increasing.
    ok = np.flatnonzero(bounds <= ctl.tail_bound)
    if ok.size == 0:
        achieved = float(bounds[-1]) if bounds.size else math.inf
        msg = f"{name} cannot reach the requested accuracy within {ctl.max_terms} terms"
        raise errors.TruncationError(msg, requested=ctl.tail_bound, achieved=achieved)

    return int(ok[0]) + 1


# X...


def eval_X(point: models.PlanePoint) -> float:
    """The boundary-layer function X at ``point``."""
    _check_lattice(point, "X")
    return float(x_values(point.first, point.second))


def _geometric_tail(n: FloatArray, xi2: float) -> FloatArray:
    q = math.exp(-2.0 * xi2)
    with np.errstate(divide="ignore", invalid="ignore"):
        bounds = np.exp(-(2.0 * n) * xi2) / (n * (1.0 - q))

    return np.where(np.isfinite(bounds), bounds, np.inf)


def eval_X_series(point: models.PlanePoint, ctl: models.SeriesControl) -> models.SeriesValue:
    """Partial sum of X = -Σ e^{-2nξ₂} cos(2nξ₁) / n with an analytic tail bound."""
    n = np.arange(1, ctl.max_terms + 1, dtype=float)
    terms_needed = _first_sufficient(_geometric_tail(n, point.second), ctl, "The X series")
    n = n[:terms_needed]

    value = -float(np.sum(_x_harmonics(n, point.first, point.second) / n))
    bound = float(_geometric_tail(n[-1:], point.second)[0])
    return models.SeriesValue(value=value, tail_bound=bound, terms=terms_needed)


def eval_X_asym(point: models.PlanePoint, j: int) -> float:
    """Matching form ln|ξ - (πj, 0)| + ln 2 - ξ₂ of X near the lattice point (πj, 0)."""
    r = math.hypot(point.first - math.pi * j, point.second)
    if r >= 0.5:  # noqa: PLR2004
        msg = f"The asymptotic form of X is only used within 0.5 of (πj, 0); got r={r:.3g}."
        raise errors.ParameterError(msg)

    if r == 0.0:
        msg = "The asymptotic form of X is singular at the lattice point itself."
        raise errors.DomainError(msg, nearest=(math.pi * j, 0.0))

    return math.log(r) + _LN2 - point.second


# Y and Y₁...


def eval_Y(point: models.PlanePoint) -> float:
    """The inner function Y: harmonic, zero on |ς₁| < 1, Neumann on |ς₁| > 1."""
    _check_corners(point, "Y")
    return float(y_values(point.first, point.second))


def eval_Y1_leading(point: models.PlanePoint) -> float:
    """Explicit leading part of the first inner correction Y₁, with ΔY₁ = -2∂Y/∂ς₂."""
    _check_corners(point, "Y1")
    return float(y1_values(point.first, point.second))


# X_η...


def _check_eta(eta: float) -> None:
    if not 0.0 < eta < 0.5 * math.pi:
        msg = f"X_eta needs 0 < η < π/2, got η={eta!r}."
        raise errors.ParameterError(msg)


def eval_X_eta(point: models.PlanePoint, eta: float) -> float:
    """The Dirichlet-limit function X_η at ``point`` for 0 < η < π/2.

    ξ₁ is folded onto [0, π/2] first, as X_η is even and π-periodic in ξ₁. On the boundary
    ξ₂ = 0 it equals ln sin η on the segments |ξ₁ - πj| < η and rises to ln(1 + cos η) at
    ξ₁ = π/2 between them. Both extremes are attained on the boundary, so
    sup |X_η| = max(|ln sin η|, ln(1 + cos η)), which is |ln sin η| only for η up to about 0.57.
    An η outside (0, π/2) raises :class:`~alterna.errors.ParameterError`.
    """
    _check_eta(eta)
    return float(x_eta_values(point.first, point.second, eta))


def eval_X_eta_derivatives(point: models.PlanePoint, eta: float) -> tuple[float, float]:
    """Closed-form ∂X_η/∂ξ₂ and ∂²X_η/∂ξ₂² (requires ξ₂ > 0)."""
    _check_eta(eta)
    if point.second <= 0.0:
        msg = "Normal derivatives of X_eta are only evaluated strictly inside the half-plane."
        raise errors.ParameterError(msg)

    rho, sin_rho, root = _x_eta_parts(point.first, point.second, eta)
    first = -float(np.imag(np.cos(rho) / root)) - 1.0
    second = math.cos(eta) ** 2 * float(np.real(sin_rho / root**3))
    return first, second


# Z...


def _check_z_parameters(eps_b: float, beta: float) -> None:
    if not abs(beta) < 2.0:  # noqa: PLR2004
        msg = f"Z needs |β| < 2, got β={beta!r}."
        raise errors.ParameterError(msg)

    # √(4n² - β²) grows with n, so n = 1 has the smallest denominator.
    if not math.sqrt(4.0 - beta * beta) + eps_b > 0.0:
        msg = f"The Z series diverges: √(4 - β²) + εb <= 0 for εb={eps_b!r}, β={beta!r}."
        raise errors.ParameterError(msg)


def _z_tail(n: FloatArray, xi2: float, eps_b: float, beta: float) -> FloatArray:
    c = _z_shift(beta)
    q = math.exp(-2.0 * xi2)
    denominator = (2.0 * n - c - abs(eps_b)) * (1.0 - q)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        bounds = math.exp(c * xi2) * 2.0 * np.exp(-(2.0 * n) * xi2) / denominator

    return np.where((denominator > 0.0) & np.isfinite(bounds), bounds, np.inf)


def eval_Z(
    point: models.PlanePoint,
    eps_b: float,
    beta: float,
    ctl: models.SeriesControl,
) -> models.SeriesValue:
    """Partial sum of Z = -Σ 2 e^{-s_n ξ₂} cos(2nξ₁) / (s_n + εb), s_n = √(4n² - β²).

    For ξ₂ > 0 every term solves -ΔZ - β²Z = 0 and (∂/∂ξ₂ - εb)Z = -1 holds on the
    boundary away from the lattice points.
    """
    _check_z_parameters(eps_b, beta)

    n = np.arange(1, ctl.max_terms + 1, dtype=float)
    terms_needed = _first_sufficient(_z_tail(n, point.second, eps_b, beta), ctl, "The Z series")
    n = n[:terms_needed]

    s = np.sqrt(4.0 * n * n - beta * beta)
    if beta == 0.0:
        harmonics = _x_harmonics(n, point.first, point.second)
    else:
        harmonics = np.exp(-s * point.second) * np.cos((2.0 * n) * point.first)

    value = -float(np.sum(2.0 * harmonics / (s + eps_b)))
    bound = float(_z_tail(n[-1:], point.second, eps_b, beta)[0])
    return models.SeriesValue(value=value, tail_bound=bound, terms=terms_needed)


def z_l2_norm_exact(eps_b: float, beta: float, *, n_terms: int = 100_000) -> float:
    """‖Z‖ over the half-strip |ξ₁| < π/2, ξ₂ > 0, from Parseval: Σ π / ((s_n + εb)² s_n)."""
    _check_z_parameters(eps_b, beta)
    n = np.arange(1, n_terms + 1, dtype=float)
    s = np.sqrt(4.0 * n * n - beta * beta)
    return math.sqrt(float(np.sum(math.pi / ((s + eps_b) ** 2 * s))))


def z_l2_bound(*, n_terms: int = 100_000) -> float:
    """Uniform bound √(Σ 8π / (4n² - 1)^{3/2}) for the L₂ norm of Z."""
    n = np.arange(1, n_terms + 1, dtype=float)
    return math.sqrt(float(np.sum(8.0 * math.pi / (4.0 * n * n - 1.0) ** 1.5)))


# θ...


def _theta_tail(n: FloatArray, t1: float, t2: float) -> FloatArray:
    # For n >= 2, |t1| < 2, |t2| < 4: √(4n² - t2) >= √3 n, so the first denominator exceeds
    # 2.732 n and √(4n² - t2) + t1 exceeds 0.732 n. The second part is the size of the
    # zeta-function correction added to the partial sum.
    raw = 2.0 * abs(t1) / (2.732 * n) + abs(t2 + t1 * t1) / (4.0 * n * n)
    correction = abs(t1) / (2.0 * n) + abs(t2 + 2.0 * t1 * t1) / (16.0 * n * n)
    return raw + correction


def eval_theta(args: models.ThetaArguments, ctl: models.SeriesControl) -> models.SeriesValue:
    """θ(t₁, t₂) with the n⁻² and n⁻³ asymptotics of the tail summed by Hurwitz zeta functions."""
    t1, t2 = args.t1, args.t2
    if t1 == 0.0 and t2 == 0.0:
        return models.SeriesValue(value=0.0, tail_bound=0.0, terms=0)

    n = np.arange(1, ctl.max_terms + 1, dtype=float)
    terms_needed = _first_sufficient(_theta_tail(n, t1, t2), ctl, "The θ series")
    n = n[:terms_needed]

    root = np.sqrt(4.0 * n * n - t2)
    outer = root + 2.0 * n + t1
    first = 2.0 * t1 * np.sum(1.0 / (n * outer))
    second = (t2 + t1 * t1) * np.sum(1.0 / (n * (root + t1) * outer))

    # Terms behave like t1/(2n²) - (t2 + 2t1²)/(8n³) + O(n⁻⁴).
    q = terms_needed + 1.0
    correction = 0.5 * t1 * float(special.zeta(2.0, q)) - 0.125 * (t2 + 2.0 * t1 * t1) * float(
        special.zeta(3.0, q)
    )

    bound = float(_theta_tail(n[-1:], t1, t2)[0])
    _LOGGER.debug("θ(%g, %g) summed with %d terms (tail <= %.2e)", t1, t2, terms_needed, bound)
    return models.SeriesValue(
        value=float(first - second) + correction,
        tail_bound=bound,
        terms=terms_needed,
    )
