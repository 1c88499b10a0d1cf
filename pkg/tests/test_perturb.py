import cmath
import math

import pytest

from per1lab import (CapturedError, NumericalError, TransitError,
                     PerturbedMap, classify_perturbation,
                     estimate_lifted_phase_im, per1_map, perturb,
                     residue_index, resit, return_multiplier_modulus,
                     split_fixed_points)
from per1lab.perturb import (VERDICT_ATTRACTING, VERDICT_BOTH_ESCAPE,
                             VERDICT_PARABOLIC)


def test_perturb_validation_and_reduction():
    pm = perturb(1.2, 0.0)
    g = pm.map
    fa = per1_map(1.2)
    for z in (0.3 + 0.1j, -0.7, 1j):
        assert g(z) == fa(z)
    with pytest.raises(ValueError):
        perturb(1.2, 2e-3)
    pm = perturb(1.0, 1e-6)
    assert pm.map.C == 1e-6


def test_split_fixed_points_multiplier_signs():
    # |lambda|^2 = 1 + 4 delta (a - 1/a) + O(delta^2)
    d = 1e-6
    p_plus, p_minus = split_fixed_points(perturb(1.3, d))
    assert p_plus.location.imag > 0 > p_minus.location.imag
    for fp in (p_plus, p_minus):
        expect = 4.0 * d * (1.3 - 1.0 / 1.3)
        assert abs(fp.multiplier) ** 2 - 1.0 == pytest.approx(expect, rel=1e-2)
        assert abs(fp.multiplier) > 1.0   # parabolic-repelling side

    p_plus, p_minus = split_fixed_points(perturb(0.5, d))
    for fp in (p_plus, p_minus):
        assert abs(fp.multiplier) < 1.0   # parabolic-attracting side


def test_split_fixed_points_errors():
    with pytest.raises(ValueError):
        split_fixed_points(perturb(1.2, 0.0))
    with pytest.raises(NumericalError):
        # all three roots inside 3 sqrt|delta|: ambiguous cluster
        split_fixed_points(PerturbedMap(0.5, 0.5))


def test_index_sum_continuity():
    for a in (1.2, 1.5):
        p_plus, p_minus = split_fixed_points(perturb(a, 1e-6))
        total = p_plus.index + p_minus.index
        assert abs(total - residue_index(a)) < 1e-2


def test_phase_real_delta_is_horizontal():
    for d in (1e-4, 1e-5):
        est = estimate_lifted_phase_im(perturb(1.2, d))
        assert abs(est.im_sigma) < 0.05
        assert est.stability < 0.05
        assert est.reliable
        assert est.transit_length > 10
        assert len(est.samples) >= 1


def test_phase_conjugation_antisymmetry():
    d = 1e-5 * cmath.exp(1j * math.pi / 2048)
    plus = estimate_lifted_phase_im(perturb(1.2, d))
    minus = estimate_lifted_phase_im(perturb(1.2, d.conjugate()))
    assert plus.im_sigma == pytest.approx(-minus.im_sigma, abs=1e-9)


def test_phase_sign_consistency_with_multipliers():
    # theta chosen on each side of the attracting/repelling transition of
    # the split pair; the phase estimate must agree with the exact
    # multipliers (the content of the return-map multiplier formula)
    a = 1.2
    pb = math.pi * resit(a)
    pm_attr = perturb(a, 1e-5 * cmath.exp(1j * math.pi / 1024))
    est = estimate_lifted_phase_im(pm_attr)
    assert est.reliable
    assert est.im_sigma - pb > 0.1
    p_plus, p_minus = split_fixed_points(pm_attr)
    assert min(abs(p_plus.multiplier), abs(p_minus.multiplier)) < 1.0

    pm_rep = perturb(a, 1e-5 * cmath.exp(1j * math.pi / 4096))
    est = estimate_lifted_phase_im(pm_rep)
    assert est.reliable
    assert est.im_sigma - pb < -0.1
    p_plus, p_minus = split_fixed_points(pm_rep)
    assert min(abs(p_plus.multiplier), abs(p_minus.multiplier)) > 1.0


def test_phase_error_paths():
    with pytest.raises(TransitError):
        # base point on the escaping side never reaches the annulus
        estimate_lifted_phase_im(perturb(1.2, 1e-5), z0=1.0)
    with pytest.raises(CapturedError):
        # strongly twisted perturbation: orbit spirals into the attracting
        # split point before any transit
        estimate_lifted_phase_im(perturb(1.2, 1e-5 * cmath.exp(1j * math.pi / 4)))


def test_phase_delta_refinement():
    # real ray: both estimates are horizontal transits
    a = 1.2
    e1 = estimate_lifted_phase_im(perturb(a, 1e-5))
    e2 = estimate_lifted_phase_im(perturb(a, 0.25e-5))
    assert abs(e1.im_sigma - e2.im_sigma) < 0.1
    # constant-phase refinement: rescale the argument with sqrt|delta| so
    # the true Im(sigma) stays put, then the proxy estimates must agree
    target = 0.7
    for mag in (1e-5, 0.25e-5):
        theta = 2.0 * math.asin(target * math.sqrt(a * mag) / math.pi)
        est = estimate_lifted_phase_im(perturb(a, mag * cmath.exp(1j * theta)))
        assert est.im_sigma == pytest.approx(target, abs=0.1)


def test_return_multiplier_modulus():
    a = 1.2
    pb = math.pi * resit(a)
    assert return_multiplier_modulus(a, pb) == pytest.approx(1.0)
    assert return_multiplier_modulus(1.0, 1.0) == pytest.approx(
        math.exp(-2.0 * math.pi), rel=1e-12)
    assert return_multiplier_modulus(a, pb + 0.5) < 1.0
    assert return_multiplier_modulus(a, pb - 0.5) > 1.0


def test_classify_parabolic_and_attracting():
    out = classify_perturbation(perturb(1.2, 0.0))
    assert out.verdict == VERDICT_PARABOLIC
    assert not out.misiurewicz_like

    out = classify_perturbation(perturb(0.5, 1e-5))
    assert out.verdict == VERDICT_ATTRACTING
    assert out.min_multiplier_modulus < 1.0

    out = classify_perturbation(perturb(0.5, 1e-9))
    assert out.verdict in (VERDICT_ATTRACTING, VERDICT_PARABOLIC)


def test_classify_shift_locus_cell():
    # a = 1.45 has critical height well inside the escape band
    out = classify_perturbation(perturb(1.45, 1e-5))
    assert out.verdict == VERDICT_BOTH_ESCAPE
    assert out.escape_plus is not None and out.escape_minus is not None
    assert out.escape_plus == out.escape_minus  # conjugate orbits
    assert not out.misiurewicz_like
