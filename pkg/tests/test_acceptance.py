"""Acceptance suite: one test per criterion, each at its stated tolerance.

Run with  pytest tests/test_acceptance.py -v -s  to see one line per
criterion.  The theorem-disk criteria run 64x64 grids and take the bulk
of the time (a few minutes total).
"""

import math

import pytest

from per1lab import (attracting_coordinate, critical_ecalle_height,
                     find_parameter_for_height,
                     repelling_coordinate, residue_index,
                     residue_index_quadrature, resit, split_fixed_points,
                     perturb, verify_cylinder, verify_lemma41,
                     verify_lemma42, verify_theorem, M_CONSTANT,
                     theorem_interval)
from per1lab.fatou import petal_entry_scale

SQRT3 = math.sqrt(3.0)


def _report(num, name, detail=""):
    print(f"ACCEPTANCE {num} ({name}): PASS {detail}")


def test_acceptance_1_residue_index():
    for a in (0.5, 1.0, 1.2, 1.5):
        diff = abs(residue_index_quadrature(a, 1e-2, 1024) - residue_index(a))
        assert diff < 1e-8, f"a={a}: quadrature diff {diff}"
    for i in range(100):
        a = SQRT3 * (i + 1) / 101.0
        assert resit(a) < 2.0 / 3.0
    _report(1, "residue index", "closed form vs quadrature < 1e-8; "
            "resit < 2/3 on 100-point grid")


def _petal_sample(a, count_att=36, count_rep=18):
    W = petal_entry_scale(a) + 2.0
    pts = []
    for k in range(count_att):
        w = complex(W + 3.0 * (k % 6), -15.0 + 6.0 * (k // 6))
        pts.append(("att", -1.0 / (a * w)))
    for k in range(count_rep):
        w = complex(-(W + 4.0 * (k % 6)), -9.0 + 6.0 * (k // 6))
        pts.append(("rep", -1.0 / (a * w)))
    return pts


def test_acceptance_2_fatou_correctness():
    params = [find_parameter_for_height(1.9), find_parameter_for_height(2.0),
              1.2]
    checked = 0
    for a in params:
        for side, z in _petal_sample(a):
            coord = (attracting_coordinate if side == "att"
                     else repelling_coordinate)
            v = coord(a, z, 1e-6)
            assert v.residual < 1e-6, f"a={a} z={z}: residual {v.residual}"
            vc = coord(a, z.conjugate(), 1e-6)
            assert abs(vc.value - v.value.conjugate()) < 2e-6
            checked += 1
    assert checked >= 3 * 50
    _report(2, "Fatou coordinates", f"Abel residual < 1e-6 and conjugation "
            f"equivariance < 2e-6 on {checked} petal points")


def test_acceptance_3_height_parametrization():
    ts = (0.5, 1.9, 2.0, 2.3)
    a_of = {t: find_parameter_for_height(t, 1e-6) for t in ts}
    for t in ts:
        h = critical_ecalle_height(a_of[t], 1e-8).h
        assert abs(h - t) < 1e-6, f"round trip t={t}: h={h}"
    assert a_of[0.5] > a_of[1.9] > a_of[2.0] > a_of[2.3]
    for t in (1.9, 2.0, 2.3):
        assert 1.0 < a_of[t] < SQRT3, f"a({t})={a_of[t]} not in (1, sqrt3)"
    _report(3, "height parametrization",
            "round trips < 1e-6; a(t) decreasing; a(t) in (1, sqrt3) "
            "for t in {1.9, 2.0, 2.3}")


def test_acceptance_4_constants_gate():
    m = M_CONSTANT
    assert abs(m - 2.3596) < 5e-5, f"m={m}"
    assert abs((4.0 * math.pi / 3.0 - m) - 1.8292) < 5e-5
    lower, upper = theorem_interval(0.005)
    assert lower < upper
    _report(4, "constants gate",
            f"m={m:.6f}, 4pi/3-m={4 * math.pi / 3 - m:.6f}, "
            f"interval=({lower:.4f}, {upper:.4f})")


def test_acceptance_5_round_cylinder():
    report = verify_cylinder(t=2.0, budget=10 ** 6)
    escape_checks = [c for c in report.checks if "escapes at all x" in c.label]
    assert len(escape_checks) == 7
    for c in escape_checks:
        assert c.passed, f"{c.label}: {c.detail}"
    bounded_notes = [c.detail for c in report.checks
                     if "bounded (non-fatal)" in c.label]
    unexpected = sum("UNEXPECTED" in d for d in bounded_notes)
    _report(5, "round-cylinder containment",
            f"heights 0, +-0.5, +-1.0, +-1.17 escape; bounded half: "
            f"{2 - unexpected}/2 as expected (non-fatal)")


def test_acceptance_6_lemma41_suite():
    report = verify_lemma41((0.5, 1.0, 2.0, 2.3), (1e-4, 1e-5, 1e-6))
    assert report.passed, report.render()
    _report(6, "escape suite",
            "both criticals escape, split pair repelling, slope fit "
            "within 5% for t in {0.5, 1.0, 2.0, 2.3}")


def test_acceptance_7_lemma42_cross_check():
    report = verify_lemma42(t=2.0, magnitude=1e-5, n_angles=16)
    assert report.passed, report.render()
    resolved = [c for c in report.checks if "excess" in c.label]
    assert len(resolved) >= 2
    _report(7, "phase/multiplier cross-check",
            f"{len(resolved)} resolved estimates all consistent; "
            "real-delta |im_sigma| < 0.05")


@pytest.mark.parametrize("t", [2.0, 1.9, 2.3])
def test_acceptance_8_theorem_disk(t):
    report, grid = verify_theorem(t=t, radius=1e-4, n=64)
    assert report.passed, report.render()
    assert grid.misiurewicz_count == 0
    _report(8, f"theorem disk t={t}",
            f"64x64 grid, zero Misiurewicz-like cells")


def test_acceptance_8_theorem_disk_contrast():
    report, grid = verify_theorem(a=0.5, radius=1e-4, n=64)
    assert report.passed, report.render()
    assert grid.misiurewicz_count == 0
    _report(8, "theorem disk contrast a=0.5",
            "zero Misiurewicz-like cells on the parabolic-attracting side")


def test_acceptance_9_index_continuity():
    for a in (1.2, 1.5):
        p_plus, p_minus = split_fixed_points(perturb(a, 1e-6))
        total = p_plus.index + p_minus.index
        assert abs(total - residue_index(a)) < 1e-2, f"a={a}: {total}"
    _report(9, "index continuity",
            "sum of split indices within 1e-2 of 1/a^2 at delta=1e-6")
