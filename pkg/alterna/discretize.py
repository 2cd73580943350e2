"""Tensor meshes, form-based assembly and sparse solves for the waveguide operators.

All grid functions live on the full tensor grid, stored row-major as arrays of shape
``(n1, n2)`` indexed ``[i1, i2]``; assembled matrices act on the free (non-Dirichlet) nodes
only. Quadrature weights are physical: the cell of width επ is discretized in the stretched
variable ξ₁ = x₁/ε, but every weight carries the factor ε so that discrete norms match the
norms on the physical cell.
"""

from __future__ import annotations

import csv
import enum
import logging
import math
import pathlib
import typing

import attr
import numpy as np
from scipy import linalg
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from alterna import errors
from alterna import geometry as geometry_
from alterna import model1d
from alterna import models
from alterna import specfun

if typing.TYPE_CHECKING:
    import os

    import numpy.typing as npt

__all__: typing.Sequence[str] = (
    "NodeKind",
    "OperatorKind",
    "NormKind",
    "CellMesh",
    "StripMesh",
    "AssembledOperator",
    "SpectrumResult",
    "build_cell_mesh",
    "build_strip_mesh",
    "assemble_cell",
    "assemble_strip",
    "eigensolve_lowest",
    "resolvent_solver",
    "resolvent_solve",
    "cell_resolvent_solve",
    "norms",
    "probe_functions",
    "quasimode_rayleigh",
    "export_snapshot",
)


_LOGGER = logging.getLogger("alterna.discretize")

_MIN_NODES: typing.Final[int] = 8
_MIN_CELLS: typing.Final[int] = 8
_DENSE_LIMIT: typing.Final[int] = 600
_RESOLVENT_TOLERANCE: typing.Final[float] = 1e-10
"""Cap on the normwise backward error of a refined sparse direct solve."""
_EIGEN_RESIDUAL_LIMIT: typing.Final[float] = 1e-6

FloatArray = np.ndarray[typing.Any, np.dtype[np.float64]]
ComplexArray = np.ndarray[typing.Any, np.dtype[np.complex128]]
ResolventSolve = typing.Callable[["npt.ArrayLike"], ComplexArray]
"""Applies a factorized resolvent to grid functions."""
IntArray = np.ndarray[typing.Any, np.dtype[np.int64]]


class NodeKind(enum.IntEnum):
    INTERIOR = 0
    TOP = 1
    """Dirichlet node on Γ₊."""

    GAMMA = 2
    """Dirichlet node on γ_ε."""

    ROBIN = 3
    """Bottom node on Γ_ε."""

    ENDPOINT = 4
    """Bottom node at an endpoint of γ_ε; treated as Dirichlet."""

    LATERAL = 5
    """Dirichlet node on the truncation boundary |x₁| = L of a strip."""


class OperatorKind(str, enum.Enum):
    PERTURBED = "perturbed"
    """Dirichlet on γ_ε and the Robin constant b on Γ_ε."""

    ROBIN_HOMOGENIZED = "robin_homogenized"
    """Robin coefficient b + (K + μ)ϑ' on the whole of Γ₋."""

    DIRICHLET_HOMOGENIZED = "dirichlet_homogenized"
    """Dirichlet on the whole of Γ₋."""


class NormKind(str, enum.Enum):
    L2 = "l2"
    H1 = "h1"
    L2_ROBIN = "l2_robin"
    """L₂ over the Robin part Γ_ε of the lower boundary."""

    L2_BOTTOM = "l2_bottom"
    """L₂ over the whole lower boundary Γ₋."""


# Meshes...


def _graded_nodes(n2: int, grading: float) -> FloatArray:
    t = np.linspace(0.0, 1.0, n2 + 1)
    if grading == 0.0:
        return math.pi * t

    # sinh stretching clusters nodes at x₂ = 0 where the boundary layer lives.
    nodes = math.pi * np.sinh(grading * t) / math.sinh(grading)
    nodes[0], nodes[-1] = 0.0, math.pi
    return nodes


def _trapezoid_weights(nodes: FloatArray) -> FloatArray:
    steps = np.diff(nodes)
    weights = np.zeros(nodes.size)
    weights[:-1] += 0.5 * steps
    weights[1:] += 0.5 * steps
    return weights


@attr.define(frozen=True, kw_only=True, weakref_slot=False, eq=False)
class _TensorMesh:
    epsilon: float = attr.field()

    geometry: geometry_.AlternationGeometry | None = attr.field()
    """``None`` for the η → 0 surrogate, whose lower boundary is entirely Robin."""

    x1: FloatArray = attr.field()
    """Physical x₁ of the node columns."""

    x2: FloatArray = attr.field()

    weights1: FloatArray = attr.field()

    weights2: FloatArray = attr.field()

    kinds: IntArray = attr.field()
    """:class:`NodeKind` of every node, shape ``(n1, n2)``."""

    step: float = attr.field()
    """Physical x₁ step."""

    refined: bool = attr.field()
    """Whether the x₁ step is at most εη/8, the resolution required near alternation points."""

    @property
    def shape(self) -> tuple[int, int]:
        return self.x1.size, self.x2.size

    @property
    def size(self) -> int:
        return self.x1.size * self.x2.size

    @property
    def periodic(self) -> bool:
        return False

    @property
    def mass(self) -> FloatArray:
        """Trapezoid weights of every node, shape ``(n1, n2)``."""
        return self.weights1[:, None] * self.weights2[None, :]

    def grid(self) -> tuple[FloatArray, FloatArray]:
        """Node coordinates, each of shape ``(n1, n2)``."""
        return np.meshgrid(self.x1, self.x2, indexing="ij")

    def as_grid(self, values: npt.ArrayLike) -> np.ndarray[typing.Any, np.dtype[typing.Any]]:
        array = np.asarray(values)
        if array.size != self.size:
            msg = f"Grid functions on this mesh have {self.size} values, got {array.size}."
            raise errors.ParameterError(msg)

        return array.reshape(self.shape)


@attr.define(frozen=True, kw_only=True, weakref_slot=False, eq=False)
class CellMesh(_TensorMesh):
    """The periodicity cell |x₁| < επ/2, discretized uniformly in ξ₁ ∈ [-π/2, π/2)."""

    @property
    def periodic(self) -> bool:
        return True

    @property
    def xi1(self) -> FloatArray:
        return self.x1 / self.epsilon

    @property
    def stretched_step(self) -> float:
        return self.step / self.epsilon


@attr.define(frozen=True, kw_only=True, weakref_slot=False, eq=False)
class StripMesh(_TensorMesh):
    """The truncated strip |x₁| <= L with Dirichlet conditions at x₁ = ±L."""

    half_length: float = attr.field()

    @property
    def support(self) -> float:
        """Right-hand sides must vanish for |x₁| > L/2."""
        return 0.5 * self.half_length


def _bottom_kinds(geometry: geometry_.AlternationGeometry | None, x1: FloatArray) -> IntArray:
    if geometry is None:
        return np.full(x1.shape, NodeKind.ROBIN, dtype=np.int64)

    boundary = geometry_.classify_bottom_nodes(geometry, x1)
    kinds = np.full(x1.shape, NodeKind.ROBIN, dtype=np.int64)
    kinds[boundary == models.BoundaryKind.GAMMA] = NodeKind.GAMMA
    kinds[boundary == models.BoundaryKind.ENDPOINT] = NodeKind.ENDPOINT
    return kinds


def _is_refined(geometry: geometry_.AlternationGeometry | None, stretched_step: float) -> bool:
    if geometry is None or geometry.degenerate:
        return True

    return stretched_step <= geometry.eta / 8.0


def _check_sizes(n1: int, n2: int, grading: float) -> None:
    if n1 < _MIN_NODES or n2 < _MIN_NODES:
        msg = f"Meshes need at least {_MIN_NODES} nodes per direction, got {n1}x{n2}."
        raise errors.MeshError(msg)

    if not grading >= 0.0:
        msg = f"The x₂ grading must be non-negative, got {grading!r}."
        raise errors.MeshError(msg)


def build_cell_mesh(
    geometry: geometry_.AlternationGeometry | None,
    n1: int,
    n2: int,
    *,
    epsilon: float | None = None,
    x2_grading: float = 0.0,
) -> CellMesh:
    """Cell mesh with ``n1`` periodic ξ₁ nodes and ``n2`` x₂ intervals.

    ``geometry=None`` builds the η → 0 surrogate; ``epsilon`` is then required.
    """
    _check_sizes(n1, n2, x2_grading)
    if geometry is not None:
        if not geometry.periodic:
            msg = "Cell meshes need a periodic geometry."
            raise errors.MeshError(msg)

        epsilon = geometry.epsilon

    if epsilon is None or not epsilon > 0.0:
        msg = "A positive ε is required for a cell mesh."
        raise errors.MeshError(msg)

    stretched_step = math.pi / n1
    xi1 = -0.5 * math.pi + stretched_step * np.arange(n1)
    x1 = epsilon * xi1
    x2 = _graded_nodes(n2, x2_grading)

    kinds = np.full((n1, n2 + 1), NodeKind.INTERIOR, dtype=np.int64)
    kinds[:, -1] = NodeKind.TOP
    kinds[:, 0] = _bottom_kinds(geometry, x1)

    mesh = CellMesh(
        epsilon=epsilon,
        geometry=geometry,
        x1=x1,
        x2=x2,
        weights1=np.full(n1, epsilon * stretched_step),
        weights2=_trapezoid_weights(x2),
        kinds=kinds,
        step=epsilon * stretched_step,
        refined=_is_refined(geometry, stretched_step),
    )
    _LOGGER.debug(
        "Built a %dx%d cell mesh (ε=%g, %d γ nodes, refined=%s).",
        n1,
        n2 + 1,
        epsilon,
        int(np.count_nonzero(kinds[:, 0] == NodeKind.GAMMA)),
        mesh.refined,
    )
    return mesh


def build_strip_mesh(
    geometry: geometry_.AlternationGeometry | None,
    half_length: float,
    nodes_per_cell: int,
    n2: int,
    *,
    epsilon: float | None = None,
    x2_grading: float = 0.0,
) -> StripMesh:
    """Strip mesh over |x₁| <= L, with L the smallest multiple (at least 8) of επ reaching ``half_length``."""
    _check_sizes(nodes_per_cell, n2, x2_grading)
    if geometry is not None:
        epsilon = geometry.epsilon

    if epsilon is None or not epsilon > 0.0:
        msg = "A positive ε is required for a strip mesh."
        raise errors.MeshError(msg)

    if not half_length > 0.0:
        msg = f"The strip half-length must be positive, got {half_length!r}."
        raise errors.MeshError(msg)

    cell = epsilon * math.pi
    cells = max(_MIN_CELLS, math.ceil(half_length / cell - 1e-9))
    length = cells * cell
    if geometry is not None and not geometry.covers(-length, length):
        msg = f"The geometry window does not cover the strip |x₁| <= {length:.6g}."
        raise errors.MeshError(msg)

    x1 = np.linspace(-length, length, 2 * cells * nodes_per_cell + 1)
    x2 = _graded_nodes(n2, x2_grading)

    kinds = np.full((x1.size, n2 + 1), NodeKind.INTERIOR, dtype=np.int64)
    kinds[:, -1] = NodeKind.TOP
    kinds[:, 0] = _bottom_kinds(geometry, x1)
    kinds[0, :] = NodeKind.LATERAL
    kinds[-1, :] = NodeKind.LATERAL

    step = float(x1[1] - x1[0])
    return StripMesh(
        epsilon=epsilon,
        geometry=geometry,
        x1=x1,
        x2=x2,
        weights1=_trapezoid_weights(x1),
        weights2=_trapezoid_weights(x2),
        kinds=kinds,
        step=step,
        refined=_is_refined(geometry, step / epsilon),
        half_length=length,
    )


# Assembly...


@attr.define(frozen=True, kw_only=True, weakref_slot=False, eq=False)
class AssembledOperator:
    """A Hermitian matrix on the free nodes of a mesh, with its lumped mass."""

    matrix: sparse.csr_matrix = attr.field()

    mass: FloatArray = attr.field()
    """Lumped mass of the free nodes."""

    free: np.ndarray[typing.Any, np.dtype[np.bool_]] = attr.field()
    """Free-node mask of the full grid, shape ``(n1, n2)``."""

    mesh: CellMesh | StripMesh = attr.field()

    kind: OperatorKind = attr.field()

    tau: float = attr.field(default=0.0)

    shifted: bool = attr.field(default=False)
    """Whether the constant τ²/ε² has been removed from a cell operator."""

    lower_bound: float = attr.field(default=0.0)
    """A value strictly below the spectrum."""

    @property
    def epsilon(self) -> float:
        return self.mesh.epsilon

    @property
    def dimension(self) -> int:
        return int(self.mass.size)

    @property
    def mass_matrix(self) -> sparse.dia_matrix:
        return sparse.diags(self.mass)

    def restrict(self, values: npt.ArrayLike) -> ComplexArray:
        return self.mesh.as_grid(values)[self.free].astype(complex)

    def expand(self, values: npt.ArrayLike) -> ComplexArray:
        full = np.zeros(self.mesh.shape, dtype=complex)
        full[self.free] = np.asarray(values)
        return full

    def unshifted(self) -> AssembledOperator:
        if not self.shifted:
            return self

        offset = (self.tau / self.epsilon) ** 2
        return attr.evolve(
            self,
            matrix=(self.matrix + offset * sparse.diags(self.mass)).tocsr(),
            shifted=False,
            lower_bound=self.lower_bound + offset,
        )


class _Assembler:
    """Collects the contributions of the discrete sesquilinear form on the full grid."""

    __slots__: typing.Sequence[str] = ("_size", "_diagonal", "_rows", "_cols", "_data")

    def __init__(self, size: int) -> None:
        self._size = size
        self._diagonal = np.zeros(size)
        self._rows: list[IntArray] = []
        self._cols: list[IntArray] = []
        self._data: list[ComplexArray] = []

    def add_diagonal(self, nodes: IntArray, values: FloatArray) -> None:
        np.add.at(self._diagonal, nodes.ravel(), values.ravel())

    def add_coupling(self, left: IntArray, right: IntArray, values: ComplexArray) -> None:
        # values[k] is the entry (left[k], right[k]); the transposed entry is its conjugate.
        self._rows += [left.ravel(), right.ravel()]
        self._cols += [right.ravel(), left.ravel()]
        self._data += [values.ravel(), np.conj(values).ravel()]

    def add_edges(self, left: IntArray, right: IntArray, weight: FloatArray, phase: FloatArray) -> None:
        # weight·|u_left - e^{-iθ} u_right|², the Peierls form of |(i∂ + A)u|².
        self.add_diagonal(left, weight)
        self.add_diagonal(right, weight)
        self.add_coupling(left, right, -weight * np.exp(-1j * phase))

    def build(self, free: np.ndarray[typing.Any, np.dtype[np.bool_]]) -> sparse.csr_matrix:
        nodes = np.arange(self._size)
        rows = np.concatenate([nodes, *self._rows])
        cols = np.concatenate([nodes, *self._cols])
        data = np.concatenate([self._diagonal.astype(complex), *self._data])
        full = sparse.coo_matrix((data, (rows, cols)), shape=(self._size, self._size)).tocsr()

        keep = np.flatnonzero(free.ravel())
        matrix = full[keep][:, keep]
        # Exact Hermitian symmetry regardless of summation order.
        return ((matrix + matrix.conj().T) * 0.5).tocsr()


def _free_mask(mesh: CellMesh | StripMesh, kind: OperatorKind) -> np.ndarray[typing.Any, np.dtype[np.bool_]]:
    kinds = mesh.kinds.copy()
    bottom = kinds[:, 0]
    if kind is OperatorKind.DIRICHLET_HOMOGENIZED:
        bottom[bottom != NodeKind.LATERAL] = NodeKind.GAMMA
    elif kind is OperatorKind.ROBIN_HOMOGENIZED:
        bottom[bottom != NodeKind.LATERAL] = NodeKind.ROBIN

    kinds[:, 0] = bottom
    return (kinds == NodeKind.INTERIOR) | (kinds == NodeKind.ROBIN)


def _robin_coefficients(
    mesh: CellMesh | StripMesh,
    physics: models.PhysicsConfig,
    kind: OperatorKind,
    mu: float,
) -> FloatArray:
    coefficients = np.full(mesh.x1.size, physics.b)
    if kind is OperatorKind.ROBIN_HOMOGENIZED:
        if mesh.geometry is None:
            msg = "The homogenized Robin operator needs a geometry for K and ϑ'."
            raise errors.ParameterError(msg)

        strength = mesh.geometry.regime.K + mu
        coefficients = coefficients + strength * mesh.geometry.diffeomorphism.derivative(mesh.x1)

    return coefficients


def _check_resolution(mesh: CellMesh | StripMesh, kind: OperatorKind) -> None:
    geometry = mesh.geometry
    if kind is not OperatorKind.PERTURBED or geometry is None or geometry.degenerate:
        return

    stretched = mesh.step / mesh.epsilon
    if stretched > 0.5 * geometry.eta:
        msg = (
            f"The mesh does not resolve the alternation: h/ε = {stretched:.4g} > η/2 ="
            f" {0.5 * geometry.eta:.4g}."
        )
        raise errors.MeshError(msg)

    if not mesh.refined:
        _LOGGER.warning(
            "Mesh step h/ε = %.4g does not meet the refinement criterion h/ε <= η/8 = %.4g.",
            stretched,
            geometry.eta / 8.0,
        )


def _assemble(
    mesh: CellMesh | StripMesh,
    physics: models.PhysicsConfig,
    kind: OperatorKind,
    *,
    mu: float = 0.0,
    tau: float = 0.0,
    shifted: bool = False,
) -> AssembledOperator:
    _check_resolution(mesh, kind)
    n1, n2 = mesh.shape
    index = np.arange(mesh.size).reshape(n1, n2)
    x1, x2 = mesh.grid()
    w1, w2 = mesh.weights1, mesh.weights2
    h = mesh.step
    magnetic = physics.magnetic
    assembler = _Assembler(mesh.size)

    # x₁ edges.
    if mesh.periodic:
        left, right = index, np.roll(index, -1, axis=0)
        edge_x1 = x1
    else:
        left, right = index[:-1], index[1:]
        edge_x1 = x1[:-1]

    edge_x2 = np.broadcast_to(x2[: left.shape[0]], left.shape)
    a1, _ = magnetic(edge_x1 + 0.5 * h, edge_x2)
    phase1 = h * a1
    assembler.add_edges(left, right, np.broadcast_to(w2, left.shape) / h, phase1)

    # x₂ edges.
    steps = np.diff(mesh.x2)
    _, a2 = magnetic(x1[:, :-1], 0.5 * (x2[:, :-1] + x2[:, 1:]))
    assembler.add_edges(
        index[:, :-1],
        index[:, 1:],
        w1[:, None] / steps[None, :],
        steps[None, :] * a2,
    )

    # Quasimomentum: -2(τ/ε)·(i∂ + A₁) with the Hermitian central difference.
    if mesh.periodic and tau != 0.0:
        coupling = (-2.0 * tau / mesh.epsilon) * (1j / (2.0 * h)) * np.exp(-1j * phase1)
        assembler.add_coupling(left, right, coupling * (w1[0] * w2)[None, :])

    if not shifted and mesh.periodic:
        assembler.add_diagonal(index, np.full(index.shape, (tau / mesh.epsilon) ** 2) * mesh.mass)

    potential = physics.potential(x1, x2)
    assembler.add_diagonal(index, potential * mesh.mass)

    robin = _robin_coefficients(mesh, physics, kind, mu)
    assembler.add_diagonal(index[:, 0], robin * w1)

    free = _free_mask(mesh, kind)
    matrix = assembler.build(free)
    mass = mesh.mass[free]

    bottom_free = free[:, 0]
    lowest_robin = float(robin[bottom_free].min()) if np.any(bottom_free) else 0.0
    lower_bound = physics.potential.minimum - min(0.0, lowest_robin) ** 2 - 1.0
    if mesh.periodic:
        lower_bound -= (tau / mesh.epsilon) ** 2 if shifted else 0.0

    _LOGGER.debug(
        "Assembled a %s operator with %d free nodes and %d non-zeros (τ=%g).",
        kind.value,
        mass.size,
        matrix.nnz,
        tau,
    )
    return AssembledOperator(
        matrix=matrix,
        mass=mass,
        free=free,
        mesh=mesh,
        kind=kind,
        tau=tau,
        shifted=shifted and mesh.periodic,
        lower_bound=lower_bound,
    )


def assemble_cell(
    mesh: CellMesh,
    tau: float,
    physics: models.PhysicsConfig,
    *,
    kind: OperatorKind = OperatorKind.PERTURBED,
    mu: float = 0.0,
    shifted: bool = True,
) -> AssembledOperator:
    """The cell operator H_per,ε(τ), by default with τ²/ε² removed.

    A and V are sampled in physical coordinates and must be επ-periodic in x₁.
    """
    if not abs(tau) <= 1.0:
        msg = f"The quasimomentum must satisfy |τ| <= 1, got {tau!r}."
        raise errors.ParameterError(msg)

    return _assemble(mesh, physics, kind, mu=mu, tau=tau, shifted=shifted)


def assemble_strip(
    mesh: StripMesh,
    physics: models.PhysicsConfig,
    geometry: geometry_.AlternationGeometry | None,
    kind: OperatorKind,
    *,
    mu: float = 0.0,
) -> AssembledOperator:
    """(i∇ + A)² + V on the truncated strip with the requested lower boundary condition."""
    if geometry is not mesh.geometry:
        msg = "The strip mesh was classified with a different geometry."
        raise errors.MeshError(msg)

    if kind is OperatorKind.ROBIN_HOMOGENIZED and geometry is not None:
        if geometry.regime.kind is not models.RegimeKind.ROBIN:
            msg = "The homogenized Robin operator needs a Robin-regime geometry."
            raise errors.RegimeError(msg)

    return _assemble(mesh, physics, kind, mu=mu)


# Solves...


@attr.define(frozen=True, kw_only=True, weakref_slot=False, eq=False)
class SpectrumResult:
    eigenvalues: FloatArray = attr.field()
    """Ascending."""

    vectors: ComplexArray = attr.field()
    """Mass-normalized eigenvectors on the free nodes, one per column."""

    residuals: FloatArray = attr.field()
    """‖Av - λMv‖ / (‖Mv‖ max(1, |λ|)) per eigenpair."""

    tolerance: float = attr.field()

    applications: int = attr.field()
    """Number of shift-and-invert solves performed."""

    operator: AssembledOperator = attr.field()

    def grid_vector(self, index: int) -> ComplexArray:
        return self.operator.expand(self.vectors[:, index])


def _normalize_phase(vectors: ComplexArray) -> ComplexArray:
    # Largest entry real and positive, so results do not depend on the solver's phase.
    pivots = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(vectors.shape[1])]
    return vectors * (np.abs(pivots) / pivots)[None, :]


def eigensolve_lowest(
    op: AssembledOperator,
    count: int,
    tol: float = 1e-10,
    *,
    seed: int = 0,
    sigma: float | None = None,
    max_iterations: int | None = None,
) -> SpectrumResult:
    """The ``count`` lowest eigenpairs of A v = λ M v by shift-and-invert Lanczos."""
    size = op.dimension
    if count < 1 or count >= size:
        msg = f"Cannot compute {count} eigenpairs of a {size}-dimensional operator."
        raise errors.ParameterError(msg)

    mass = op.mass_matrix
    applications = 0

    if size <= _DENSE_LIMIT:
        values, vectors = linalg.eigh(op.matrix.toarray(), np.diag(op.mass))
        values, vectors = values[:count], vectors[:, :count]

    else:
        shift = op.lower_bound if sigma is None else sigma
        try:
            factor = sparse_linalg.splu((op.matrix - shift * mass).tocsc())
        except RuntimeError as exc:
            msg = f"Factorizing the shifted operator failed at σ={shift:g}."
            raise errors.SingularityError(msg) from exc

        def solve(vector: ComplexArray) -> ComplexArray:
            nonlocal applications
            applications += 1
            return factor.solve(np.asarray(vector, dtype=complex).ravel())

        inverse = sparse_linalg.LinearOperator((size, size), matvec=solve, dtype=complex)
        rng = np.random.default_rng(seed)
        start = rng.standard_normal(size) + 1j * rng.standard_normal(size)

        try:
            values, vectors = sparse_linalg.eigsh(
                op.matrix,
                k=count,
                M=mass,
                sigma=shift,
                which="LM",
                OPinv=inverse,
                v0=start,
                tol=tol,
                maxiter=max_iterations,
            )
        except sparse_linalg.ArpackNoConvergence as exc:
            msg = f"ARPACK converged on {len(exc.eigenvalues)} of {count} eigenpairs."
            raise errors.SolverError(msg) from exc

        order = np.argsort(values)
        values, vectors = values[order], vectors[:, order]
        _LOGGER.debug("eigsh: %d eigenpairs after %d operator applications.", count, applications)

    values = np.asarray(values, dtype=float)
    vectors = _normalize_phase(np.asarray(vectors, dtype=complex))
    norms_ = np.sqrt(np.real(np.sum(np.conj(vectors) * (op.mass[:, None] * vectors), axis=0)))
    vectors = vectors / norms_[None, :]

    residual_vectors = op.matrix @ vectors - (op.mass[:, None] * vectors) * values[None, :]
    scale = np.linalg.norm(op.mass[:, None] * vectors, axis=0) * np.maximum(1.0, np.abs(values))
    residuals = np.linalg.norm(residual_vectors, axis=0) / scale

    worst = float(residuals.max())
    if worst > max(_EIGEN_RESIDUAL_LIMIT, tol):
        msg = "Eigenpairs did not reach the residual limit."
        raise errors.SolverError(msg, residual=worst)

    return SpectrumResult(
        eigenvalues=values,
        vectors=vectors,
        residuals=residuals,
        tolerance=tol,
        applications=applications,
        operator=op,
    )


def resolvent_solver(op: AssembledOperator, *, z: complex = -1j) -> ResolventSolve:
    """Factorize A - zM once; the returned callable maps grid functions f to grid functions u.

    Every solve takes one step of iterative refinement and is then checked against a normwise
    backward-error cap ‖r‖ / (‖A - zM‖ ‖u‖ + ‖Mf‖), all in the maximum norm.
    """
    system = (op.matrix - z * op.mass_matrix).tocsc()
    try:
        factor = sparse_linalg.splu(system)
    except RuntimeError as exc:
        msg = f"The operator minus {z} is singular."
        raise errors.SingularityError(msg) from exc

    system_norm = float(sparse_linalg.norm(system, np.inf))
    _LOGGER.debug(
        "Factorized a %d-dimensional system with %d + %d non-zeros in L + U.",
        op.dimension,
        factor.L.nnz,
        factor.U.nnz,
    )

    def solve(f: npt.ArrayLike) -> ComplexArray:
        rhs = op.mass * op.restrict(f)
        solution = factor.solve(rhs)
        solution = solution + factor.solve(rhs - system @ solution)

        scale = system_norm * float(np.linalg.norm(solution, np.inf)) + float(np.linalg.norm(rhs, np.inf))
        if scale > 0.0:
            backward_error = float(np.linalg.norm(system @ solution - rhs, np.inf)) / scale
            if backward_error > _RESOLVENT_TOLERANCE:
                msg = "The sparse direct solve lost accuracy."
                raise errors.SolverError(msg, residual=backward_error)

        return op.expand(solution)

    return solve


def resolvent_solve(op: AssembledOperator, f: npt.ArrayLike, *, z: complex = -1j) -> ComplexArray:
    """Solve (A - zM)u = Mf; the default z = -i gives the resolvent (H + i)⁻¹."""
    return resolvent_solver(op, z=z)(f)


def cell_resolvent_solve(op: AssembledOperator, f: npt.ArrayLike) -> ComplexArray:
    """Solve (H_per,ε(τ) - τ²/ε²)u = f on the cell."""
    if not isinstance(op.mesh, CellMesh) or (op.tau != 0.0 and not op.shifted):
        msg = "The cell resolvent needs a shifted cell operator."
        raise errors.ParameterError(msg)

    return resolvent_solve(op, f, z=0.0)


# Norms and grid functions...


def norms(u: npt.ArrayLike, mesh: CellMesh | StripMesh, kind: NormKind = NormKind.L2) -> float:
    values = mesh.as_grid(u)
    squared = np.abs(values) ** 2

    if kind is NormKind.L2_BOTTOM:
        return math.sqrt(float(np.sum(mesh.weights1 * squared[:, 0])))

    if kind is NormKind.L2_ROBIN:
        robin = mesh.kinds[:, 0] == NodeKind.ROBIN
        return math.sqrt(float(np.sum((mesh.weights1 * squared[:, 0])[robin])))

    total = float(np.sum(mesh.mass * squared))
    if kind is NormKind.H1:
        across = np.roll(values, -1, axis=0) - values if mesh.periodic else np.diff(values, axis=0)
        total += float(np.sum(mesh.weights2[None, :] * np.abs(across) ** 2)) / mesh.step
        along = np.diff(values, axis=1)
        total += float(np.sum(mesh.weights1[:, None] * np.abs(along) ** 2 / np.diff(mesh.x2)[None, :]))

    return math.sqrt(total)


def probe_functions(
    mesh: CellMesh | StripMesh,
    support: float | None = None,
    seed: int = 0,
) -> dict[str, FloatArray]:
    """Five deterministic right-hand sides of unit L₂ norm.

    On a strip they vanish for |x₁| > ``support`` (default: half the strip).
    """
    x1, x2 = mesh.grid()
    if isinstance(mesh, StripMesh):
        support = mesh.support if support is None else support
        if support > mesh.support + 1e-12:
            msg = f"Probe supports must lie inside |x₁| <= L/2 = {mesh.support:.6g}."
            raise errors.MeshError(msg)

        envelope = np.where(np.abs(x1) < support, np.cos(0.5 * math.pi * x1 / support) ** 2, 0.0)
        oscillation = np.cos(4.0 * math.pi * x1 / support)
    else:
        envelope = np.ones(mesh.shape)
        oscillation = np.cos(2.0 * x1 / mesh.epsilon)

    rng = np.random.default_rng(seed)
    raw = {
        "eigenvector": envelope * np.sin(0.5 * (math.pi - x2)),
        "bump": envelope * np.exp(-4.0 * (x2 - 0.5 * math.pi) ** 2),
        "oscillatory": envelope * oscillation * np.sin(2.0 * x2),
        "boundary": envelope * np.exp(-4.0 * x2),
        "random": envelope * rng.standard_normal(mesh.shape),
    }
    return {name: values / norms(values, mesh) for name, values in raw.items()}


# Bottom-of-spectrum quasimode...


def _outer_coefficient(value: float, b: float) -> tuple[float, float, float]:
    root = math.sqrt(value)
    sine = math.sin(math.pi * root)
    return root, sine, root * math.cos(math.pi * root) + b * sine


def _quasimode(mesh: CellMesh, b: float, value: float) -> FloatArray:
    geometry = typing.cast(geometry_.AlternationGeometry, mesh.geometry)
    eps, eta = mesh.epsilon, geometry.eta
    x1, x2 = mesh.grid()
    root, _, amplitude = _outer_coefficient(value, b)

    exterior = np.sin(root * (x2 - math.pi))
    if geometry.degenerate:
        return exterior

    xi1, xi2 = x1 / eps, x2 / eps
    s1, s2 = xi1 / eta, xi2 / eta
    inner_weight = specfun.cutoff(np.hypot(s1, s2) * math.sqrt(eta))
    layer_weight = specfun.cutoff(x2)

    result = exterior * (1.0 - inner_weight)
    active = (layer_weight > 0.0) & (inner_weight < 1.0)
    layer, tail = specfun.z_values(xi1[active], xi2[active], eps * b, eps * root)
    _LOGGER.debug("Boundary-layer series truncated with tail bound %.2e.", tail)
    result[active] += (layer_weight[active] * eps * amplitude * layer) * (1.0 - inner_weight[active])

    inner = inner_weight > 0.0
    shift = eps * eta * b
    inner_values = np.exp(shift * s2[inner]) * (
        eps
        * amplitude
        * (specfun.y_values(s1[inner], s2[inner]) + shift * specfun.y1_values(s1[inner], s2[inner]))
    )
    result[inner] += inner_weight[inner] * inner_values
    return result


def quasimode_rayleigh(
    mesh: CellMesh,
    geometry: geometry_.AlternationGeometry,
    mu: float,
    value: float | None = None,
    *,
    b: float = 0.0,
) -> tuple[float, float]:
    """Rayleigh quotient of the matched quasimode at τ = 0 and its distance from Λ.

    ``value`` defaults to the bottom root Λ(ε, μ) computed by :mod:`alterna.model1d`.
    """
    if mesh.geometry is not geometry or not geometry.periodic:
        msg = "The quasimode is built on a cell mesh of the same periodic geometry."
        raise errors.ParameterError(msg)

    if value is None:
        coefficient = models.RobinCoefficient(b=b, K=geometry.regime.K, mu=mu)
        value = model1d.solve_bottom_root(mesh.epsilon, coefficient).value

    if not value > 0.0 or not mesh.epsilon**2 * value < 4.0:  # noqa: PLR2004
        msg = f"Λ={value!r} lies outside the range 0 < ε²Λ < 4 of the quasimode."
        raise errors.ParameterError(msg)

    op = assemble_cell(mesh, 0.0, models.PhysicsConfig(b=b))
    vector = op.restrict(_quasimode(mesh, b, value))
    numerator = np.vdot(vector, op.matrix @ vector).real
    denominator = np.vdot(vector, op.mass * vector).real
    rayleigh = float(numerator / denominator)
    return rayleigh, abs(rayleigh - value)


# Snapshots...


def export_snapshot(
    mesh: CellMesh | StripMesh,
    values: npt.ArrayLike,
    path: str | os.PathLike[str],
) -> None:
    """Write node coordinates, node kinds and values as CSV rows ``x1, x2, kind, re, im``."""
    grid = mesh.as_grid(values).astype(complex).ravel()
    x1, x2 = (coordinates.ravel() for coordinates in mesh.grid())
    kinds = mesh.kinds.ravel()

    with pathlib.Path(path).open("w", newline="", encoding="utf-8") as file:
        writer = csv.writer(file)
        writer.writerow(("x1", "x2", "kind", "re", "im"))
        for i in range(grid.size):
            writer.writerow(
                (
                    repr(float(x1[i])),
                    repr(float(x2[i])),
                    NodeKind(int(kinds[i])).name.lower(),
                    repr(float(grid[i].real)),
                    repr(float(grid[i].imag)),
                ),
            )
