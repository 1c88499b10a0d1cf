"""Cross-module invariants tying the dynamics, coordinates and phase
estimates together."""

import pytest

from per1lab import (NumericalError, RunConfig, estimate_lifted_phase_im,
                     find_parameter_for_height, perturb,
                     repelling_coordinate, scan_delta_disk)
from per1lab.verify import multiplier_expansion_slope


@pytest.mark.parametrize("t", [1.9, 2.0, 2.2])
def test_real_delta_phase_horizontal(t):
    a = find_parameter_for_height(t)
    for d in (1e-4, 1e-5, 1e-6):
        est = estimate_lifted_phase_im(perturb(a, d))
        assert abs(est.im_sigma) < 0.05, (t, d, est.im_sigma)
        assert est.stability < 0.05


def test_multiplier_slope_sign_flip():
    # parabolic-attracting side: negative slope; repelling side: positive
    s_att = multiplier_expansion_slope(0.5)
    assert s_att == pytest.approx(4.0 * (0.5 - 2.0), rel=0.05)
    assert s_att < 0
    s_rep = multiplier_expansion_slope(1.3)
    assert s_rep == pytest.approx(4.0 * (1.3 - 1.0 / 1.3), rel=0.05)
    assert s_rep > 0


def test_scan_at_height_two_parameter():
    a = find_parameter_for_height(2.0)
    grid = scan_delta_disk(a, 1e-4, 5)
    # center cell delta=0 is parabolic; real positive cells escape
    assert grid.cells[2][2].verdict == "ParabolicFixedPoint"
    for j in (3, 4):
        assert grid.cells[2][j].verdict == "BothCriticalEscape"
    assert grid.misiurewicz_count == 0


def test_repelling_coordinate_rejects_attracting_side():
    with pytest.raises(NumericalError):
        repelling_coordinate(1.2, -0.1)


def test_run_config_validation():
    cfg = RunConfig()
    assert cfg.epsilon == 0.005 and cfg.tol == 1e-6
    assert cfg.header_lines()[0].startswith("# epsilon=")
    with pytest.raises(ValueError):
        RunConfig(epsilon=0.02)
    with pytest.raises(ValueError):
        RunConfig(epsilon=0.0)
    with pytest.raises(ValueError):
        RunConfig(tol=1e-2)
    with pytest.raises(ValueError):
        RunConfig(escape_radius=5.0)
    with pytest.raises(ValueError):
        RunConfig(jobs=0)
