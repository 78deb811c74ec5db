"""Subadditivity checks and randomized audits.

Nothing here asserts: every check returns a report with the numbers and the
boolean verdicts, and the audit collects violations instead of raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, InvalidSimplexError, ValidationError
from .linalg import SUPPORT_EPS, partial_trace
from .states import (
    DEFAULT_SCALE_RANGE,
    BipartiteState,
    DensityMatrix,
    WeightMatrix,
    product_weight,
    random_density,
    random_weight,
)
from .entropy import subsystem_weighted_entropy, weighted_entropy

# Fixed slack for the standalone trace-condition verdict; report verdicts use
# the report's own tolerance instead.
CONDITION_SLACK = 1e-12
DEFAULT_REPORT_TOL = 1e-10

AUDIT_REGIMES = (
    "diagonal-condition-satisfying",
    "diagonal-unconstrained",
    "general-unconstrained",
)

_LOG_FLOOR = np.finfo(float).tiny


class TraceCondition(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def trace_condition(weight_a: WeightMatrix, weight_b: WeightMatrix, state: BipartiteState) -> TraceCondition:
    """Compare tr(phi_AB rho_AB) against tr(phi_A rho_A) tr(phi_B rho_B)."""
    if weight_a.dim != state.dim_a or weight_b.dim != state.dim_b:
        raise DimensionError(
            f"weight dims {weight_a.dim}x{weight_b.dim} do not match "
            f"state factors {state.dim_a}x{state.dim_b}"
        )
    rho = state.rho.matrix
    phi_ab = np.kron(weight_a.matrix, weight_b.matrix)
    lhs = float(np.einsum("ij,ji->", phi_ab, rho).real)
    rho_a = partial_trace(rho, state.dim_a, state.dim_b, "A")
    rho_b = partial_trace(rho, state.dim_a, state.dim_b, "B")
    ta = float(np.einsum("ij,ji->", weight_a.matrix, rho_a).real)
    tb = float(np.einsum("ij,ji->", weight_b.matrix, rho_b).real)
    rhs = ta * tb
    return TraceCondition(lhs, rhs, bool(lhs >= rhs - CONDITION_SLACK))


class WeightCondition(NamedTuple):
    value: float
    holds: bool


def qutrit_weight_condition(phi1: float, phi2: float, chi1: float, chi2: float) -> WeightCondition:
    """Sign test ``(phi1 - phi2)(chi2 - chi1) >= 0`` for embedded qutrits."""
    value = (phi1 - phi2) * (chi2 - chi1)
    return WeightCondition(float(value), bool(value >= 0.0))


def qutrit_condition_gap(p1, p2, phi1, phi2, chi1, chi2):
    """Trace-condition gap of an embedded qutrit in product form.

    Equals ``lhs - rhs`` of :func:`trace_condition` exactly:
    ``p2 (1 - p1 - p2) (phi1 - phi2) (chi2 - chi1)``.
    """
    p1v = np.asarray(p1, dtype=float)
    p2v = np.asarray(p2, dtype=float)
    if (
        np.any(p1v < -1e-12)
        or np.any(p2v < -1e-12)
        or np.any(p1v + p2v > 1.0 + 1e-12)
    ):
        raise InvalidSimplexError("need p1 >= 0, p2 >= 0 and p1 + p2 <= 1")
    out = p2v * (1.0 - p1v - p2v) * (np.asarray(phi1, float) - phi2) * (np.asarray(chi2, float) - chi1)
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class SubadditivityReport:
    s_ab: float
    s_a: float
    s_b: float
    gap: float
    condition_lhs: float
    condition_rhs: float
    condition_gap: float
    condition_holds: bool
    subadditivity_holds: bool
    tolerance: float


def check_subadditivity(
    weight_a: WeightMatrix,
    weight_b: WeightMatrix,
    state: BipartiteState,
    tolerance: float = DEFAULT_REPORT_TOL,
    im_tol: float = 1e-10,
) -> SubadditivityReport:
    """Full report: entropies, gap, trace condition, verdicts.

    Both verdicts compare their gap against ``-tolerance`` so a marginal
    negative within noise still counts as holding.
    """
    if tolerance <= 0.0:
        raise ValidationError(f"tolerance must be positive, got {tolerance}")
    phi_ab = product_weight(weight_a, weight_b)
    s_ab = weighted_entropy(phi_ab, state.rho, im_tol=im_tol)
    s_a = subsystem_weighted_entropy(phi_ab, state, "A", im_tol=im_tol)
    s_b = subsystem_weighted_entropy(phi_ab, state, "B", im_tol=im_tol)
    cond = trace_condition(weight_a, weight_b, state)
    gap = s_a + s_b - s_ab
    condition_gap = cond.lhs - cond.rhs
    return SubadditivityReport(
        s_ab=s_ab,
        s_a=s_a,
        s_b=s_b,
        gap=gap,
        condition_lhs=cond.lhs,
        condition_rhs=cond.rhs,
        condition_gap=condition_gap,
        condition_holds=bool(condition_gap >= -tolerance),
        subadditivity_holds=bool(gap >= -tolerance),
        tolerance=tolerance,
    )


@dataclass(frozen=True)
class ViolationRecord:
    state: np.ndarray
    weight_a: np.ndarray
    weight_b: np.ndarray
    report: SubadditivityReport


@dataclass(frozen=True)
class AuditSummary:
    samples: int
    violations: tuple[ViolationRecord, ...]
    min_gap: float
    seed: int
    regime: str


def _xlnx(x: np.ndarray) -> np.ndarray:
    return np.where(x > SUPPORT_EPS, x * np.log(np.maximum(x, _LOG_FLOOR)), 0.0)


def _ln_support(x: np.ndarray) -> np.ndarray:
    return np.where(x > SUPPORT_EPS, np.log(np.maximum(x, _LOG_FLOOR)), 0.0)


def _diagonal_report_fields(probs: np.ndarray, weights: np.ndarray) -> dict[str, np.ndarray]:
    """Report fields for embedded-qutrit states under diagonal weights.

    ``probs`` is (n, 3) simplex rows, ``weights`` is (n, 4) columns
    (phi1, phi2, chi1, chi2). Mirrors the matrix path term by term, support
    conventions keyed on the same eigenvalues.
    """
    p1, p2, p3 = probs[:, 0], probs[:, 1], probs[:, 2]
    f1, f2, c1, c2 = weights[:, 0], weights[:, 1], weights[:, 2], weights[:, 3]
    w11 = f1 * c1
    w12 = f1 * c2
    w21 = f2 * c1
    s_ab = -(w11 * _xlnx(p1) + w12 * _xlnx(p2) + w21 * _xlnx(p3))
    a1 = p1 + p2
    b1 = p1 + p3
    s_a = -((w11 * p1 + w12 * p2) * _ln_support(a1) + w21 * p3 * _ln_support(p3))
    s_b = -((w11 * p1 + w21 * p3) * _ln_support(b1) + w12 * p2 * _ln_support(p2))
    gap = s_a + s_b - s_ab
    lhs = w11 * p1 + w12 * p2 + w21 * p3
    rhs = (f1 * a1 + f2 * p3) * (c1 * b1 + c2 * p2)
    return {
        "s_ab": s_ab,
        "s_a": s_a,
        "s_b": s_b,
        "gap": gap,
        "condition_lhs": lhs,
        "condition_rhs": rhs,
        "condition_gap": lhs - rhs,
    }


def _sample_diagonal(rng: np.random.Generator, n: int, condition_satisfying: bool):
    e = rng.standard_exponential((n, 3))
    probs = e / e.sum(axis=1, keepdims=True)
    lo, hi = DEFAULT_SCALE_RANGE
    weights = rng.uniform(lo, hi, size=(n, 4))
    if condition_satisfying:
        # resample weight rows until (phi1 - phi2)(chi2 - chi1) >= 0
        bad = (weights[:, 0] - weights[:, 1]) * (weights[:, 3] - weights[:, 2]) < 0.0
        while bad.any():
            weights[bad] = rng.uniform(lo, hi, size=(int(bad.sum()), 4))
            bad = (weights[:, 0] - weights[:, 1]) * (weights[:, 3] - weights[:, 2]) < 0.0
    return probs, weights


def _diagonal_violation(probs: np.ndarray, weights: np.ndarray, fields, i: int, tolerance: float) -> ViolationRecord:
    state = np.diag(np.array([probs[i, 0], probs[i, 1], probs[i, 2], 0.0], dtype=complex))
    weight_a = np.diag(weights[i, 0:2].astype(complex))
    weight_b = np.diag(weights[i, 2:4].astype(complex))
    report = SubadditivityReport(
        s_ab=float(fields["s_ab"][i]),
        s_a=float(fields["s_a"][i]),
        s_b=float(fields["s_b"][i]),
        gap=float(fields["gap"][i]),
        condition_lhs=float(fields["condition_lhs"][i]),
        condition_rhs=float(fields["condition_rhs"][i]),
        condition_gap=float(fields["condition_gap"][i]),
        condition_holds=bool(fields["condition_gap"][i] >= -tolerance),
        subadditivity_holds=bool(fields["gap"][i] >= -tolerance),
        tolerance=tolerance,
    )
    return ViolationRecord(state, weight_a, weight_b, report)


def audit_random(
    n: int,
    dim_a: int,
    dim_b: int,
    seed: int,
    regime: str,
    tolerance: float = DEFAULT_REPORT_TOL,
) -> AuditSummary:
    """Sample n (state, weights) pairs and collect subadditivity violations.

    Regimes:

    - ``diagonal-condition-satisfying``: embedded-qutrit states (a zero
      fourth level) with diagonal weights resampled until the sign condition
      holds. The inequality is a theorem here; violations mean a bug.
    - ``diagonal-unconstrained``: same family, weights unconstrained, so
      genuine violations are expected and get recorded.
    - ``general-unconstrained``: dense random states and weights of any
      requested factor dims. Entropy traces are kept as real parts since the
      non-commuting case has a genuine imaginary component.

    The diagonal regimes model the zero-padded qutrit family, which is what
    the sign condition is about, so they require 2x2 factors.
    """
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if seed < 0:
        raise ValidationError(f"seed must be nonnegative, got {seed}")
    if tolerance <= 0.0:
        raise ValidationError(f"tolerance must be positive, got {tolerance}")
    if regime not in AUDIT_REGIMES:
        raise ValidationError(f"unknown regime {regime!r}, expected one of {AUDIT_REGIMES}")
    if dim_a < 2 or dim_b < 2:
        raise DimensionError(f"factor dims must be >= 2, got {dim_a}x{dim_b}")
    rng = np.random.default_rng(seed)

    if regime == "general-unconstrained":
        violations = []
        min_gap = math.inf
        for _ in range(n):
            rho = random_density(dim_a * dim_b, rng)
            wa = random_weight(dim_a, rng)
            wb = random_weight(dim_b, rng)
            state = BipartiteState(rho, dim_a, dim_b)
            report = check_subadditivity(wa, wb, state, tolerance, im_tol=math.inf)
            min_gap = min(min_gap, report.gap)
            if not report.subadditivity_holds:
                violations.append(ViolationRecord(rho.matrix, wa.matrix, wb.matrix, report))
        return AuditSummary(n, tuple(violations), float(min_gap), seed, regime)

    if dim_a != 2 or dim_b != 2:
        raise DimensionError(f"regime {regime!r} needs 2x2 factors, got {dim_a}x{dim_b}")
    probs, weights = _sample_diagonal(rng, n, regime == "diagonal-condition-satisfying")
    fields = _diagonal_report_fields(probs, weights)
    gap = fields["gap"]
    bad = np.nonzero(gap < -tolerance)[0]
    violations = tuple(_diagonal_violation(probs, weights, fields, int(i), tolerance) for i in bad)
    return AuditSummary(n, violations, float(gap.min()), seed, regime)
