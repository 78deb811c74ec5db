"""Command line front end.

Exit codes: 0 success, 2 validation failure, 3 dimension mismatch,
4 channel undefined, 5 matrix-file parse error. Matrix files are JSON
objects with keys ``dim``, ``re`` and optionally ``im`` (dim x dim arrays).
"""

from __future__ import annotations

import dataclasses
import functools
import json
import sys

import click
import numpy as np

from .errors import (
    ChannelUndefinedError,
    ConvergenceError,
    DimensionError,
    MatrixFileError,
    ValidationError,
)
from .states import (
    BipartiteState,
    DensityMatrix,
    QutritDiagonal,
    WeightMatrix,
    embed_qutrit,
)
from .entropy import (
    qutrit_mutual_information_closed_form,
    weighted_entropy,
    weighted_mutual_information,
)
from .inequality import (
    AUDIT_REGIMES,
    audit_random,
    check_subadditivity,
    qutrit_condition_gap,
    qutrit_weight_condition,
)
from .channel import Projector, channel_then_check
from .sweeps import grid_to_csv, sweep_probabilities, sweep_weights

EXIT_VALIDATION = 2
EXIT_DIMENSION = 3
EXIT_CHANNEL = 4
EXIT_PARSE = 5

CROSS_CHECK_WARN = 1e-9


def load_matrix(path: str) -> np.ndarray:
    """Read a JSON matrix file into a complex array."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"{path}: cannot read file ({exc.strerror or exc})") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFileError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}",
            row=exc.lineno,
            column=exc.colno,
        ) from exc
    if not isinstance(data, dict):
        raise MatrixFileError(f"{path}: top level must be an object")
    if "dim" not in data or "re" not in data:
        raise MatrixFileError(f"{path}: required keys 'dim' and 're' missing")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise MatrixFileError(f"{path}: 'dim' must be a positive integer, got {dim!r}")
    re = _real_rows(path, "re", data["re"], dim)
    if "im" in data and data["im"] is not None:
        im = _real_rows(path, "im", data["im"], dim)
    else:
        im = np.zeros((dim, dim))
    return re + 1j * im


def _real_rows(path: str, name: str, rows, dim: int) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        found = len(rows) if isinstance(rows, list) else type(rows).__name__
        raise MatrixFileError(f"{path}: '{name}' must be a list of {dim} rows, found {found}")
    out = np.empty((dim, dim))
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise MatrixFileError(
                f"{path}: '{name}' row {i} must have {dim} entries", row=i
            )
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise MatrixFileError(
                    f"{path}: '{name}' entry at row {i}, column {j} is not a number",
                    row=i,
                    column=j,
                )
            out[i, j] = v
    return out


def matrix_to_dict(m: np.ndarray) -> dict:
    return {
        "dim": int(m.shape[0]),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


def _fail(code: int, exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except MatrixFileError as exc:
            _fail(EXIT_PARSE, exc)
        except DimensionError as exc:
            _fail(EXIT_DIMENSION, exc)
        except ChannelUndefinedError as exc:
            _fail(EXIT_CHANNEL, exc)
        except (ValidationError, ConvergenceError) as exc:
            _fail(EXIT_VALIDATION, exc)

    return wrapper


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError as exc:
        raise ValidationError(f"dims must look like '2x2', got {text!r}") from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _diag_weight(x1: float, x2: float) -> WeightMatrix:
    return WeightMatrix(np.diag([complex(x1), complex(x2)]), allow_semidefinite=True)


@click.group()
def main():
    """Weighted entropies and subadditivity checks for small qudit systems."""


@main.command()
@click.argument("state_file")
@click.argument("weight_file")
@click.option("--tol", default=1e-10, show_default=True, help="validation tolerance")
@handle_errors
def entropy(state_file, weight_file, tol):
    """Weighted entropy of STATE_FILE under WEIGHT_FILE, in nats."""
    rho = DensityMatrix(load_matrix(state_file), tol=tol)
    phi = WeightMatrix(load_matrix(weight_file), tol=tol, allow_semidefinite=True)
    click.echo(f"{weighted_entropy(phi, rho):.12g}")


@main.command()
@click.argument("state_file")
@click.argument("weight_a_file")
@click.argument("weight_b_file")
@click.option("--dims", default="2x2", show_default=True, help="subsystem dims, e.g. 2x3")
@click.option("--tol", default=1e-10, show_default=True)
@click.option("--out", default=None, help="write the JSON report here instead of stdout")
@handle_errors
def check(state_file, weight_a_file, weight_b_file, dims, tol, out):
    """Subadditivity report for a bipartite state, as JSON."""
    dim_a, dim_b = _parse_dims(dims)
    rho = DensityMatrix(load_matrix(state_file), tol=tol)
    state = BipartiteState(rho, dim_a, dim_b)
    wa = WeightMatrix(load_matrix(weight_a_file), tol=tol, allow_semidefinite=True)
    wb = WeightMatrix(load_matrix(weight_b_file), tol=tol, allow_semidefinite=True)
    report = check_subadditivity(wa, wb, state, tolerance=tol)
    _emit(json.dumps(dataclasses.asdict(report), indent=2) + "\n", out)


@main.command()
@click.argument("p1", type=float)
@click.argument("p2", type=float)
@click.argument("phi1", type=float)
@click.argument("phi2", type=float)
@click.argument("chi1", type=float)
@click.argument("chi2", type=float)
@handle_errors
def qutrit(p1, p2, phi1, phi2, chi1, chi2):
    """Closed-form mutual information of a diagonal qutrit, cross-checked."""
    value = qutrit_mutual_information_closed_form(p1, p2, phi1, phi2, chi1, chi2)
    cond = qutrit_weight_condition(phi1, phi2, chi1, chi2)
    gap = qutrit_condition_gap(p1, p2, phi1, phi2, chi1, chi2)

    p3 = 1.0 - p1 - p2
    if p3 < 0.0:
        # clip separator dust so the embedding accepts boundary inputs
        p3 = 0.0
    state = embed_qutrit(QutritDiagonal(p1, p2, p3))
    general = weighted_mutual_information(_diag_weight(phi1, phi2), _diag_weight(chi1, chi2), state)
    delta = abs(value - general)

    click.echo(f"mutual_information = {value:.12g}")
    click.echo(f"weight_condition_value = {cond.value:.12g} ({'holds' if cond.holds else 'fails'})")
    click.echo(f"condition_gap = {gap:.12g}")
    click.echo(f"cross_check_delta = {delta:.12g}")
    if delta > CROSS_CHECK_WARN:
        click.echo(
            f"warning: closed form and matrix path disagree by {delta:.3e}", err=True
        )


@main.group()
def sweep():
    """Write mutual-information grids as CSV."""


@sweep.command("prob")
@click.option("--grid-n", default=97, show_default=True, help="cells per axis")
@click.option("--phi1", default=0.75, show_default=True)
@click.option("--phi2", default=0.25, show_default=True)
@click.option("--chi1", default=1.0 / 3.0, show_default=True)
@click.option("--chi2", default=2.0 / 3.0, show_default=True)
@click.option("--out", default=None, help="output CSV path (default stdout)")
@handle_errors
def sweep_prob(grid_n, phi1, phi2, chi1, chi2, out):
    """Mutual information over the (p1, p2) simplex at fixed weights."""
    grid = sweep_probabilities(grid_n, phi1, phi2, chi1, chi2)
    comments = [
        f"sweep prob grid_n={grid_n} phi1={phi1:.17g} phi2={phi2:.17g} "
        f"chi1={chi1:.17g} chi2={chi2:.17g}",
        "axes sample cell centers (k + 1/2) / grid_n; cells with p1 + p2 >= 1 are omitted",
    ]
    _emit(grid_to_csv(grid, comments), out)


@sweep.command("weight")
@click.option("--region", type=click.Choice(["a", "b"]), required=True)
@click.option("--grid-n", default=97, show_default=True, help="samples per axis")
@click.option("--p1", default=0.25, show_default=True)
@click.option("--p2", default=0.125, show_default=True)
@click.option("--out", default=None, help="output CSV path (default stdout)")
@handle_errors
def sweep_weight(region, grid_n, p1, p2, out):
    """Mutual information over a (phi1, chi1) rectangle at a fixed state."""
    grid = sweep_weights(region, grid_n, p1, p2)
    comments = [
        f"sweep weight region={region} grid_n={grid_n} p1={p1:.17g} p2={p2:.17g}",
        "phi2 = 1 - phi1 and chi2 = 1 - chi1; bounds inclusive",
    ]
    _emit(grid_to_csv(grid, comments), out)


@main.command()
@click.argument("state_file")
@click.argument("projector_file")
@click.option("--phi1", default=0.75, show_default=True)
@click.option("--phi2", default=0.25, show_default=True)
@click.option("--chi1", default=1.0 / 3.0, show_default=True)
@click.option("--chi2", default=2.0 / 3.0, show_default=True)
@click.option("--tol", default=1e-10, show_default=True)
@click.option("--out", default=None, help="write the JSON result here instead of stdout")
@handle_errors
def channel(state_file, projector_file, phi1, phi2, chi1, chi2, tol, out):
    """Apply the projective channel, then re-check subadditivity (2x2 systems)."""
    rho = DensityMatrix(load_matrix(state_file), tol=tol)
    state = BipartiteState(rho, 2, 2)
    proj = Projector(load_matrix(projector_file), tol=tol)
    rho_out, report = channel_then_check(
        proj, _diag_weight(phi1, phi2), _diag_weight(chi1, chi2), state, tolerance=tol
    )
    payload = {
        "state": matrix_to_dict(rho_out.matrix),
        "report": dataclasses.asdict(report),
    }
    _emit(json.dumps(payload, indent=2) + "\n", out)


@main.command()
@click.option("--n", default=1000, show_default=True, help="number of samples")
@click.option("--dims", default="2x2", show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option(
    "--regime",
    type=click.Choice(AUDIT_REGIMES),
    default="diagonal-condition-satisfying",
    show_default=True,
)
@click.option("--tol", default=1e-10, show_default=True)
@click.option("--out", default=None, help="write the JSON summary here instead of stdout")
@handle_errors
def audit(n, dims, seed, regime, tol, out):
    """Randomized subadditivity audit; violations land in the JSON summary."""
    dim_a, dim_b = _parse_dims(dims)
    summary = audit_random(n, dim_a, dim_b, seed, regime, tolerance=tol)
    payload = {
        "regime": summary.regime,
        "dims": f"{dim_a}x{dim_b}",
        "samples": summary.samples,
        "seed": summary.seed,
        "tolerance": tol,
        "min_gap": summary.min_gap,
        "violations": [
            {
                "state": matrix_to_dict(v.state),
                "weight_a": matrix_to_dict(v.weight_a),
                "weight_b": matrix_to_dict(v.weight_b),
                "report": dataclasses.asdict(v.report),
            }
            for v in summary.violations
        ],
    }
    _emit(json.dumps(payload, indent=2) + "\n", out)


if __name__ == "__main__":
    main()
