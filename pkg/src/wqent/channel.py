"""Nonlinear projective channel ``rho -> P rho P / tr(P rho P)``."""

from __future__ import annotations

import numpy as np

from .errors import ChannelUndefinedError, DimensionError, ValidationError
from .linalg import _as_square, hermitian_deviation, hermitian_eig
from .states import BipartiteState, DensityMatrix, WeightMatrix
from .inequality import DEFAULT_REPORT_TOL, SubadditivityReport, check_subadditivity

IDEMPOTENCE_TOL = 1e-10
OVERLAP_EPS = 1e-12


class Projector:
    """Hermitian idempotent, validated on construction."""

    __slots__ = ("matrix", "rank")

    def __init__(self, matrix, tol: float = IDEMPOTENCE_TOL):
        a = np.array(_as_square(matrix), dtype=complex)
        dev = hermitian_deviation(a)
        if dev > tol:
            raise ValidationError(f"projector deviates from Hermitian by {dev:.3e}")
        idem = float(np.abs(a @ a - a).max())
        if idem > tol:
            raise ValidationError(f"projector is not idempotent (max |P^2 - P| = {idem:.3e})")
        lams = hermitian_eig(a, tol=tol).eigenvalues
        self.rank = int(np.count_nonzero(np.abs(lams - 1.0) <= tol))
        a.flags.writeable = False
        self.matrix = a

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self) -> str:
        return f"Projector(dim={self.dim}, rank={self.rank})"


def basis_projector(dim: int, indices) -> Projector:
    """Projector onto the span of the given computational basis states."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise ValidationError(f"basis indices must be distinct, got {idx}")
    if any(i < 0 or i >= dim for i in idx):
        raise ValidationError(f"basis indices must lie in [0, {dim}), got {idx}")
    d = np.zeros(dim, dtype=complex)
    d[idx] = 1.0
    return Projector(np.diag(d))


def apply_projective_channel(projector: Projector, rho: DensityMatrix) -> DensityMatrix:
    """``P rho P / tr(P rho P)``; undefined when the overlap trace vanishes."""
    if projector.dim != rho.dim:
        raise DimensionError(f"projector dim {projector.dim} does not match state dim {rho.dim}")
    prp = projector.matrix @ rho.matrix @ projector.matrix
    overlap = float(np.trace(prp).real)
    if overlap <= OVERLAP_EPS:
        raise ChannelUndefinedError(f"channel undefined: overlap trace {overlap:.3e} vanishes")
    out = prp / overlap
    return DensityMatrix(0.5 * (out + out.conj().T))


def channel_then_check(
    projector: Projector,
    weight_a: WeightMatrix,
    weight_b: WeightMatrix,
    state: BipartiteState,
    tolerance: float = DEFAULT_REPORT_TOL,
) -> tuple[DensityMatrix, SubadditivityReport]:
    """Push the state through the channel, then re-run the subadditivity check."""
    rho_out = apply_projective_channel(projector, state.rho)
    state_out = BipartiteState(rho_out, state.dim_a, state.dim_b)
    return rho_out, check_subadditivity(weight_a, weight_b, state_out, tolerance)
