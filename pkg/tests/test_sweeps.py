import numpy as np
import pytest

from wqent.errors import ValidationError
from wqent.entropy import qutrit_mutual_information_closed_form
from wqent.sweeps import grid_to_csv, sweep_probabilities, sweep_weights


class TestProbabilitySweep:
    def test_grid_shape_and_mask_count(self):
        grid = sweep_probabilities(97)
        assert grid.values.shape == (97, 97)
        # cells with p1 + p2 < 1: exactly n(n-1)/2 of them
        assert int((~grid.mask).sum()) == 97 * 96 // 2
        assert np.isnan(grid.values[grid.mask]).all()

    def test_axes_are_cell_centers(self):
        grid = sweep_probabilities(4)
        assert np.array_equal(grid.axis_values[0], np.array([0.125, 0.375, 0.625, 0.875]))
        assert grid.axis_values[0].min() > 0.0

    def test_mask_is_exact_on_the_diagonal(self):
        # cell centers with (2i+1)+(2j+1) == 2n sit on p1+p2 = 1 and are masked
        grid = sweep_probabilities(4)
        assert grid.mask[0, 3] and grid.mask[3, 0] and grid.mask[1, 2]
        assert not grid.mask[0, 2]

    def test_values_match_closed_form(self):
        grid = sweep_probabilities(95)
        # (0.1, 0.1) is a cell center at n = 95: (9 + 0.5)/95 == 0.1 exactly
        assert grid.axis_values[0][9] == 0.1
        expected = qutrit_mutual_information_closed_form(0.1, 0.1, 0.75, 0.25, 1 / 3, 2 / 3)
        assert grid.values[9, 9] == expected

    def test_default_weights_give_nonnegative_values(self):
        grid = sweep_probabilities(97)
        assert np.nanmin(grid.values) >= -1e-9

    def test_custom_weights(self):
        grid = sweep_probabilities(5, phi1=0.25, phi2=0.75, chi1=2 / 3, chi2=1 / 3)
        # sign condition still holds (both factors flipped), so still nonnegative
        assert np.nanmin(grid.values) >= -1e-9

    def test_rejects_bad_grid(self):
        with pytest.raises(ValidationError):
            sweep_probabilities(0)


class TestWeightSweep:
    def test_region_a_bounds_inclusive(self):
        grid = sweep_weights("a", 5)
        assert grid.axis_values[0][0] == 0.5
        assert grid.axis_values[0][-1] == 1.0
        assert grid.axis_values[1][0] == 0.0
        assert grid.axis_values[1][-1] == 0.5
        assert not grid.mask.any()

    def test_region_b_mirrors(self):
        grid = sweep_weights("b", 5)
        assert grid.axis_values[0][0] == 0.0
        assert grid.axis_values[0][-1] == 0.5
        assert grid.axis_values[1][0] == 0.5
        assert grid.axis_values[1][-1] == 1.0

    def test_values_nonnegative_in_both_regions(self):
        for region in ("a", "b"):
            grid = sweep_weights(region, 97)
            assert grid.values.min() >= -1e-9

    def test_spot_value(self):
        grid = sweep_weights("a", 3, p1=0.25, p2=0.125)
        expected = qutrit_mutual_information_closed_form(0.25, 0.125, 0.75, 0.25, 0.25, 0.75)
        assert grid.values[1, 1] == expected

    def test_rejects_unknown_region(self):
        with pytest.raises(ValidationError):
            sweep_weights("c", 5)


class TestCsv:
    def test_header_comments_and_row_count(self):
        grid = sweep_probabilities(7)
        text = grid_to_csv(grid, ["alpha", "beta"])
        lines = text.splitlines()
        assert lines[0] == "# alpha"
        assert lines[1] == "# beta"
        assert lines[2] == "p1,p2,I"
        assert len(lines) == 3 + 7 * 6 // 2
        assert text.endswith("\n")

    def test_17_digit_round_trip(self):
        grid = sweep_weights("a", 4)
        text = grid_to_csv(grid)
        row = text.splitlines()[1].split(",")
        assert float(row[0]) == grid.axis_values[0][0]
        assert float(row[2]) == grid.values[0, 0]

    def test_rerun_is_byte_identical(self):
        a = grid_to_csv(sweep_probabilities(31), ["x"])
        b = grid_to_csv(sweep_probabilities(31), ["x"])
        assert a == b

    def test_row_major_order(self):
        grid = sweep_weights("a", 3)
        rows = grid_to_csv(grid).splitlines()[1:]
        phis = [float(r.split(",")[0]) for r in rows]
        assert phis == sorted(phis)
        chis = [float(r.split(",")[1]) for r in rows[:3]]
        assert chis == [0.0, 0.25, 0.5]
