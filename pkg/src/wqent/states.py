"""Validated state and weight types plus samplers.

Constructors check their invariants and raise; nothing is silently
renormalized. The wrapped arrays are frozen copies, safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidSimplexError, NotHermitianError, ValidationError
from .linalg import Subsystem, _as_square, hermitian_deviation, hermitian_eig, partial_trace

DEFAULT_TOL = 1e-10
SIMPLEX_TOL = 1e-12
DEFAULT_SCALE_RANGE = (0.05, 2.0)


def _frozen_square(matrix) -> np.ndarray:
    a = np.array(_as_square(matrix), dtype=complex)
    a.flags.writeable = False
    return a


def _check_hermitian(a: np.ndarray, tol: float, label: str) -> None:
    dev = hermitian_deviation(a)
    if dev > tol:
        raise NotHermitianError(f"{label} deviates from Hermitian by {dev:.3e}")


class DensityMatrix:
    """Hermitian, positive semidefinite, unit trace."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, tol: float = DEFAULT_TOL):
        a = _frozen_square(matrix)
        _check_hermitian(a, tol, "state")
        low = hermitian_eig(a, tol=tol).eigenvalues[0]
        if low < -tol:
            raise ValidationError(f"state is not positive semidefinite (min eigenvalue {low:.3e})")
        tr = complex(np.trace(a))
        if abs(tr - 1.0) > tol:
            raise ValidationError(f"state trace {tr.real:.12g} differs from 1 beyond {tol:.1e}")
        self.matrix = a

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


class WeightMatrix:
    """Hermitian positive definite observable weight.

    With ``allow_semidefinite=True`` a zero eigenvalue (within ``tol``) is
    accepted and flagged on ``degenerate``; callers hitting that case should
    expect entropy weights to kill the corresponding directions.
    """

    __slots__ = ("matrix", "degenerate")

    def __init__(self, matrix, tol: float = DEFAULT_TOL, allow_semidefinite: bool = False):
        a = _frozen_square(matrix)
        _check_hermitian(a, tol, "weight")
        low = hermitian_eig(a, tol=tol).eigenvalues[0]
        if allow_semidefinite:
            if low < -tol:
                raise ValidationError(f"weight is not positive semidefinite (min eigenvalue {low:.3e})")
            self.degenerate = bool(low <= tol)
        else:
            if low <= 0.0:
                raise ValidationError(f"weight is not positive definite (min eigenvalue {low:.3e})")
            self.degenerate = False
        self.matrix = a

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self) -> str:
        return f"WeightMatrix(dim={self.dim}, degenerate={self.degenerate})"


@dataclass(frozen=True)
class BipartiteState:
    """A density matrix together with its tensor factorization."""

    rho: DensityMatrix
    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 2 or self.dim_b < 2:
            raise ValidationError(f"subsystem dims must be >= 2, got {self.dim_a}x{self.dim_b}")
        if self.rho.dim != self.dim_a * self.dim_b:
            raise DimensionError(
                f"state dim {self.rho.dim} does not factor as {self.dim_a}x{self.dim_b}"
            )

    @property
    def dim(self) -> int:
        return self.rho.dim


@dataclass(frozen=True)
class QutritDiagonal:
    """Diagonal three-level probabilities (p1, p2, p3)."""

    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        ps = (self.p1, self.p2, self.p3)
        if min(ps) < 0.0:
            raise InvalidSimplexError(f"probabilities must be nonnegative, got {ps}")
        total = self.p1 + self.p2 + self.p3
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise InvalidSimplexError(f"probabilities sum to {total!r}, expected 1")


def embed_ququart(p1: float, p2: float, p3: float, p4: float) -> BipartiteState:
    """Diagonal four-level state viewed as two qubits (first factor slow)."""
    ps = (p1, p2, p3, p4)
    if min(ps) < 0.0:
        raise InvalidSimplexError(f"probabilities must be nonnegative, got {ps}")
    total = sum(ps)
    if abs(total - 1.0) > SIMPLEX_TOL:
        raise InvalidSimplexError(f"probabilities sum to {total!r}, expected 1")
    rho = np.diag(np.asarray(ps, dtype=complex))
    return BipartiteState(DensityMatrix(rho), 2, 2)


def embed_qutrit(q: QutritDiagonal) -> BipartiteState:
    """Embed a qutrit as a ququart by appending a zero-probability level."""
    return embed_ququart(q.p1, q.p2, q.p3, 0.0)


def reduce_state(state: BipartiteState, keep: Subsystem) -> DensityMatrix:
    return DensityMatrix(partial_trace(state.rho.matrix, state.dim_a, state.dim_b, keep))


def product_weight(weight_a: WeightMatrix, weight_b: WeightMatrix) -> WeightMatrix:
    return WeightMatrix(
        np.kron(weight_a.matrix, weight_b.matrix),
        allow_semidefinite=weight_a.degenerate or weight_b.degenerate,
    )


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_diagonal_state(dim: int, rng) -> DensityMatrix:
    """Uniform draw from the probability simplex via exponential spacings."""
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    g = _as_rng(rng)
    e = g.standard_exponential(dim)
    return DensityMatrix(np.diag((e / e.sum()).astype(complex)))


def random_density(dim: int, rng) -> DensityMatrix:
    """Trace-normalized G G^dagger for G with iid complex Gaussian entries."""
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    g = _as_rng(rng)
    z = g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))
    w = z @ z.conj().T
    rho = w / np.trace(w).real
    return DensityMatrix(0.5 * (rho + rho.conj().T))


def haar_unitary(dim: int, rng) -> np.ndarray:
    """QR of a complex Gaussian matrix, phases corrected for Haar measure."""
    g = _as_rng(rng)
    z = g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_weight(dim: int, rng, scale_range: tuple[float, float] = DEFAULT_SCALE_RANGE) -> WeightMatrix:
    """Random positive definite weight: Haar frame, uniform spectrum."""
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    lo, hi = scale_range
    if not (0.0 < lo <= hi):
        raise ValidationError(f"scale_range must satisfy 0 < lo <= hi, got {scale_range}")
    g = _as_rng(rng)
    u = g.uniform(lo, hi, size=dim)
    v = haar_unitary(dim, g)
    w = (v * u) @ v.conj().T
    return WeightMatrix(0.5 * (w + w.conj().T))
