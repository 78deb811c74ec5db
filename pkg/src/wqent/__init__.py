"""Weighted entropies, subadditivity checks, and a projective channel."""

from .errors import (
    ChannelUndefinedError,
    ConvergenceError,
    DimensionError,
    InvalidSimplexError,
    MatrixFileError,
    NegativeEigenvalueError,
    NotHermitianError,
    ValidationError,
)
from .linalg import (
    SpectralDecomposition,
    hermitian_eig,
    is_hermitian,
    is_psd,
    kron,
    log_on_support,
    partial_trace,
    trace,
    xlogx_matrix,
)
from .states import (
    BipartiteState,
    DensityMatrix,
    QutritDiagonal,
    WeightMatrix,
    embed_ququart,
    embed_qutrit,
    haar_unitary,
    product_weight,
    random_density,
    random_diagonal_state,
    random_weight,
    reduce_state,
)
from .entropy import (
    qutrit_mutual_information_closed_form,
    reduced_weighted_state,
    subsystem_weighted_entropy,
    weighted_entropy,
    weighted_mutual_information,
)
from .inequality import (
    AuditSummary,
    SubadditivityReport,
    TraceCondition,
    ViolationRecord,
    WeightCondition,
    audit_random,
    check_subadditivity,
    qutrit_condition_gap,
    qutrit_weight_condition,
    trace_condition,
)
from .channel import (
    Projector,
    apply_projective_channel,
    basis_projector,
    channel_then_check,
)
from .sweeps import SweepGrid, grid_to_csv, sweep_probabilities, sweep_weights

__version__ = "0.1.0"
