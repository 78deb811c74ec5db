"""Mutual-information grids over probability and weight planes, CSV output."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .entropy import qutrit_mutual_information_closed_form

PROB_SWEEP_WEIGHTS = (0.75, 0.25, 1.0 / 3.0, 2.0 / 3.0)
WEIGHT_SWEEP_PROBS = (0.25, 0.125)

# phi1 and chi1 ranges per region; the complements are 1 - phi1, 1 - chi1
WEIGHT_REGIONS = {
    "a": ((0.5, 1.0), (0.0, 0.5)),
    "b": ((0.0, 0.5), (0.5, 1.0)),
}


@dataclass(frozen=True)
class SweepGrid:
    """Row-major grid of values; masked cells are outside the domain."""

    axis_names: tuple[str, str]
    axis_values: tuple[np.ndarray, np.ndarray]
    values: np.ndarray
    mask: np.ndarray


def sweep_probabilities(
    grid_n: int,
    phi1: float = PROB_SWEEP_WEIGHTS[0],
    phi2: float = PROB_SWEEP_WEIGHTS[1],
    chi1: float = PROB_SWEEP_WEIGHTS[2],
    chi2: float = PROB_SWEEP_WEIGHTS[3],
) -> SweepGrid:
    """Mutual information over the (p1, p2) simplex interior.

    Axes sample the grid_n cell centers (k + 1/2) / grid_n, so no coordinate
    is ever exactly 0. Cells with p1 + p2 >= 1 are masked; the comparison is
    done in exact integer form, (2i + 1) + (2j + 1) >= 2 grid_n, so boundary
    cells never flip on rounding.
    """
    if grid_n < 1:
        raise ValidationError(f"grid_n must be >= 1, got {grid_n}")
    k = np.arange(grid_n)
    centers = (k + 0.5) / grid_n
    mask = (k[:, None] + k[None, :] + 1) >= grid_n
    values = np.full((grid_n, grid_n), np.nan)
    i, j = np.nonzero(~mask)
    if i.size:
        values[i, j] = qutrit_mutual_information_closed_form(
            centers[i], centers[j], phi1, phi2, chi1, chi2
        )
    return SweepGrid(("p1", "p2"), (centers, centers.copy()), values, mask)


def sweep_weights(
    region: str,
    grid_n: int,
    p1: float = WEIGHT_SWEEP_PROBS[0],
    p2: float = WEIGHT_SWEEP_PROBS[1],
) -> SweepGrid:
    """Mutual information over a (phi1, chi1) rectangle, complements implied.

    Region "a" spans phi1 in [1/2, 1] with chi1 in [0, 1/2]; region "b" the
    mirror. Bounds are inclusive, so the sign condition holds everywhere
    including the boundary where it is an equality.
    """
    if grid_n < 1:
        raise ValidationError(f"grid_n must be >= 1, got {grid_n}")
    if region not in WEIGHT_REGIONS:
        raise ValidationError(f"region must be one of {sorted(WEIGHT_REGIONS)}, got {region!r}")
    (f_lo, f_hi), (c_lo, c_hi) = WEIGHT_REGIONS[region]
    phi1 = np.linspace(f_lo, f_hi, grid_n)
    chi1 = np.linspace(c_lo, c_hi, grid_n)
    f_grid, c_grid = np.meshgrid(phi1, chi1, indexing="ij")
    values = qutrit_mutual_information_closed_form(
        p1, p2, f_grid, 1.0 - f_grid, c_grid, 1.0 - c_grid
    )
    mask = np.zeros((grid_n, grid_n), dtype=bool)
    return SweepGrid(("phi1", "chi1"), (phi1, chi1), values, mask)


def grid_to_csv(grid: SweepGrid, comments: Sequence[str] = ()) -> str:
    """Render unmasked cells in row-major order, 17 significant digits."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"{grid.axis_names[0]},{grid.axis_names[1]},I")
    ax0, ax1 = grid.axis_values
    n0, n1 = grid.values.shape
    for i in range(n0):
        for j in range(n1):
            if grid.mask[i, j]:
                continue
            lines.append(f"{ax0[i]:.17g},{ax1[j]:.17g},{grid.values[i, j]:.17g}")
    return "\n".join(lines) + "\n"
