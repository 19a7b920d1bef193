import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import apinterp as ap
from apinterp.errors import DomainError, InvariantViolation

from conftest import point_lists


def test_split_regions_membership(log_shift):
    v = ap.Variety([(5 + 0j, 1), (5 + 10j, 1), (complex(3, -2 * math.log(1 + 3)), 1)])
    split = ap.split_regions(v, log_shift)
    assert [complex(z) for z in split.strip.lam] == [5 + 0j]
    assert [complex(z) for z in split.upper.lam] == [5 + 10j]
    assert len(split.lower) == 1


def test_split_boundary_tie_goes_to_strip(log_shift):
    # put a point exactly on Im z = omega(|z|) by fixed-point iteration
    x, im = 3.0, 1.0
    for _ in range(80):
        im = log_shift.omega(math.hypot(x, im))
    z = complex(x, im)
    assert abs(z.imag - log_shift.omega(abs(z))) < 1e-14
    split = ap.split_regions(ap.Variety([(z, 1)]), log_shift)
    assert len(split.strip) == 1


@settings(max_examples=40, deadline=None)
@given(point_lists(min_size=1, max_size=25))
def test_split_partitions_exactly(pts):
    w = ap.BeurlingWeight(ap.OmegaProfile.log_shift(1.0))
    v = ap.Variety(pts)
    split = ap.split_regions(v, w)
    together = ap.Variety(
        [(z, m) for part in (split.strip, split.upper, split.lower)
         for z, m in zip(part.lam, part.mult)], v.window_radius)
    assert np.array_equal(together.lam, v.lam)
    assert np.array_equal(together.mult, v.mult)


def test_balayage_value_cases():
    assert ap.balayage_value(ap.Variety([(1j, 1)]), 0.0) == 1.0
    assert ap.balayage_value(ap.Variety([(2j, 3)]), 0.0) == pytest.approx(1.5)
    assert ap.balayage_value(ap.Variety([(3 + 4j, 1)]), 3.0) == pytest.approx(0.25)


def test_balayage_value_rejects_real_points():
    with pytest.raises(InvariantViolation):
        ap.balayage_value(ap.Variety([(1 + 0j, 1)]), 0.0)


def test_balayage_sup_empty_and_single_point():
    assert ap.balayage_sup(ap.Variety([])) == (0.0, 0.0)
    x, sup = ap.balayage_sup(ap.Variety([(3 + 2j, 4)], window_radius=10))
    assert abs(x - 3.0) < 1e-9
    assert abs(sup - 2.0) < 1e-9  # mult / Im at the kernel peak


def test_balayage_sup_dominates_candidates():
    rng = np.random.default_rng(5)
    pts = [(complex(rng.uniform(-8, 8), rng.uniform(0.3, 3)), 1) for _ in range(30)]
    v = ap.Variety(pts, window_radius=20)
    _, sup = ap.balayage_sup(v)
    cand_max = max(ap.balayage_value(v, float(z.real)) for z in v.lam)
    assert sup >= cand_max - 1e-12


@settings(max_examples=30, deadline=None)
@given(point_lists(min_size=1, max_size=15, min_im=0.2, max_im=5.0),
       st.floats(-10, 10))
def test_balayage_reflection_invariance(pts, x):
    v = ap.Variety(pts)
    assert ap.balayage_value(v, x) == pytest.approx(
        ap.balayage_value(v.conjugate(), x), rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(point_lists(min_size=1, max_size=12, min_im=0.2, max_im=5.0),
       st.integers(2, 5))
def test_multiplicity_scaling_equivariance(pts, k):
    v = ap.Variety(pts)
    scaled = v.scale_mult(k)
    x = 0.375
    assert ap.balayage_value(scaled, x) == pytest.approx(
        k * ap.balayage_value(v, x), rel=1e-12)
    z, r = 0.5 + 0.5j, 4.0
    assert ap.integrated_count(scaled, z, r) == pytest.approx(
        k * ap.integrated_count(v, z, r), rel=1e-12)
    x1, s1 = ap.balayage_sup(v)
    xk, sk = ap.balayage_sup(scaled)
    assert sk == pytest.approx(k * s1, rel=1e-9)
    assert xk == pytest.approx(x1, abs=1e-5)


def test_condition_a_singleton_center_term(log_shift):
    # with the literal center term a singleton gives m log p / p
    v = ap.Variety([(100 + 0j, 1)], window_radius=400)
    radii = [25, 50, 100, 200]
    p = log_shift.p(100 + 0j)
    sweep = ap.condition_a_constants(v, log_shift, radii, include_center=True)
    assert sweep.constants[-1] == pytest.approx(math.log(p) / p, rel=1e-12)
    # the default convention drops it
    sweep0 = ap.condition_a_constants(v, log_shift, radii)
    assert sweep0.constants == [0.0] * 4


def test_condition_a_lattice_plateau(log_shift):
    v = ap.generate(ap.FamilySpec("integer_lattice", {"window": 2000}))
    radii = ap.default_radii(v.window_radius)
    sweep = ap.condition_a_constants(v, log_shift, radii)
    p = math.log(1 + 1000)
    expected = 2 * (math.floor(p) * math.log(p) - math.log(math.factorial(math.floor(p)))) / p
    assert sweep.constants[-1] == pytest.approx(expected, rel=1e-9)
    trend = ap.classify_trend(radii, sweep.constants)
    assert trend.verdict == "bounded-evidence"


def test_condition_a_rejects_radii_beyond_window(log_shift):
    v = ap.generate(ap.FamilySpec("integer_lattice", {"window": 100}))
    with pytest.raises(DomainError):
        ap.condition_a_constants(v, log_shift, [10, 20, 40, 80])


def test_condition_b_all_real_is_zero(log_shift):
    v = ap.generate(ap.FamilySpec("integer_lattice", {"window": 200}))
    sweep = ap.condition_b_constants(v, log_shift, ap.default_radii(v.window_radius))
    assert all(c == 0.0 for c in sweep.constants)


def test_condition_b_low_line_flat(log_shift):
    # height-one line: only |lambda| < e - 1 sits outside the strip
    v = ap.generate(ap.FamilySpec("horizontal_line", {"height": 1.0, "extent": 400}))
    split = ap.split_regions(v, log_shift)
    assert len(split.upper) == 3
    radii = ap.default_radii(v.window_radius)
    sweep = ap.condition_b_constants(v, log_shift, radii)
    assert sweep.constants[-1] == pytest.approx(2.0, abs=1e-6)
    assert max(sweep.constants) - min(c for c in sweep.constants if c > 0) < 1e-9
    trend = ap.classify_trend(radii, sweep.constants)
    assert trend.verdict == "bounded-evidence"


def test_dyadic_balayage_increments(log_shift):
    for n in (6, 8, 10):
        row = ap.generators.dyadic_row(n)
        inc = ap.balayage_value(row, 0.0)
        assert inc == pytest.approx(math.pi / 4, rel=0.10)


def test_dyadic_condition_b_grows(log_shift):
    v = ap.generate(ap.FamilySpec("dyadic_angle", {"n_min": 1, "n_max": 9}))
    radii = ap.default_radii(v.window_radius)
    sweep = ap.condition_b_constants(v, log_shift, radii)
    assert all(c2 >= c1 - 1e-9 for c1, c2 in zip(sweep.constants, sweep.constants[1:]))
    assert sweep.constants[-1] > sweep.constants[0] + 1.0


def test_classify_trend_synthetic():
    radii = [10, 20, 40, 80, 160, 320]
    flat = ap.classify_trend(radii, [3.0] * 6)
    assert flat.verdict == "bounded-evidence" and flat.exponent == pytest.approx(0.0, abs=1e-12)
    linear = ap.classify_trend(radii, radii)
    assert linear.verdict == "divergence-evidence" and linear.exponent == pytest.approx(1.0, rel=1e-9)
    zeros = ap.classify_trend(radii, [0.0] * 6)
    assert zeros.verdict == "bounded-evidence" and zeros.exponent == 0.0
    log_growth = ap.classify_trend(radii, [math.log(r) for r in radii])
    assert log_growth.verdict == "inconclusive"
    tight = ap.classify_trend(radii, [math.log(r) for r in radii], thresholds=(0.05, 0.1))
    assert tight.verdict == "divergence-evidence"


def test_classify_trend_span_requirements():
    with pytest.raises(DomainError):
        ap.classify_trend([1, 2, 3], [1.0, 1.0, 1.0])
    with pytest.raises(DomainError):
        ap.classify_trend([10, 11, 12, 13], [1.0, 1.0, 1.0, 2.0])


def test_balayage_profile_rows(log_shift):
    v = ap.Variety([(1j, 1)], window_radius=4)
    prof = ap.balayage_profile(v, ap.ScanSpec(xmin=-2, xmax=2, samples=5))
    rows = list(prof.rows())
    assert rows[-1] == (prof.x_star, prof.sup)
    assert prof.sup == pytest.approx(1.0, abs=1e-9)
    assert prof.slope_bound > 0
    empty = ap.balayage_profile(ap.Variety([]), ap.ScanSpec(xmin=-1, xmax=1, samples=3))
    assert empty.sup == 0.0 and all(v == 0.0 for v in empty.values)


def test_report_round_trip_dict(log_shift):
    v = ap.generate(ap.FamilySpec("dyadic_angle", {"n_min": 1, "n_max": 6}))
    report = ap.run_condition_report(v, log_shift)
    payload = report.to_dict()
    assert set(payload) >= {"radii", "condition_a", "condition_b", "thresholds"}
    assert len(payload["condition_a"]["constants"]) == len(payload["radii"])
    assert payload["condition_b"]["verdict"] in (
        "bounded-evidence", "divergence-evidence", "inconclusive")
