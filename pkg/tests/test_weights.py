import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import apinterp as ap
from apinterp.errors import DomainError, TabulatedRangeError

from conftest import finite_complex

PI_LOG2 = math.pi * math.log(2.0)          # closed form of the log-square growth integral
CATALAN = 0.915965594177219015              # sum (-1)^k / (2k+1)^2
U_LOG_SHIFT_AT_I = (2 / math.pi) * ((math.pi / 4) * math.log(2.0) + CATALAN)


def test_omega_values():
    assert ap.omega_eval(ap.OmegaProfile.log_shift(1.0), 0.0) == 0.0
    assert ap.omega_eval(ap.OmegaProfile.power(0.5), 4.0) == pytest.approx(2.0, abs=1e-15)
    assert ap.omega_eval(ap.OmegaProfile.log_square(), 1.0) == pytest.approx(math.log(2), abs=1e-12)


def test_omega_rejects_bad_arguments():
    with pytest.raises(DomainError):
        ap.omega_eval(ap.OmegaProfile.log_shift(1.0), -1.0)
    tab = ap.OmegaProfile.tabulated([(0, 0), (10, 1)])
    with pytest.raises(TabulatedRangeError):
        ap.omega_eval(tab, 11.0)
    with pytest.raises(DomainError):
        ap.OmegaProfile.power(1.0)
    with pytest.raises(DomainError):
        ap.OmegaProfile.tabulated([(0, 1), (5, 0.5)])  # decreasing values


def test_p_values(log_shift, log_square):
    assert ap.p_eval(log_shift, 3j) == pytest.approx(3 + math.log(4), abs=1e-12)
    assert ap.p_eval(log_shift, 0j) == 0.0
    assert ap.p_eval(log_square, 1 + 1j) == pytest.approx(1 + math.log(3), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(finite_complex(max_abs=1e6))
def test_p_symmetries_exact(z):
    w = ap.BeurlingWeight(ap.OmegaProfile.log_square())
    assert w.p(z) == w.p(z.conjugate()) == w.p(-z)


def test_p_symmetries_bulk(log_square):
    rng = np.random.default_rng(0)
    zs = rng.uniform(-1e4, 1e4, 10_000) + 1j * rng.uniform(-1e4, 1e4, 10_000)
    p = log_square.p(zs)
    assert np.array_equal(p, log_square.p(np.conj(zs)))
    assert np.array_equal(p, log_square.p(-zs))


def test_log_shift_is_strictly_subadditive(log_shift):
    rep = ap.check_axioms(log_shift)
    assert rep.subadd_excess <= 1e-12
    assert rep.subadd_strict and rep.subadd_relaxed


def test_log_square_subadditivity_excess(log_square):
    # pointwise excess at s = t = 1 is log 5 - 2 log 2, positive
    omega = log_square.omega
    assert omega(2.0) - 2 * omega(1.0) == pytest.approx(math.log(5) - 2 * math.log(2), abs=1e-12)
    rep = ap.check_axioms(log_square)
    assert rep.subadd_excess >= math.log(5) - 2 * math.log(2) - 1e-12
    # exact supremum of the excess is log(4/3), below the relaxed tolerance
    assert rep.subadd_excess <= math.log(4 / 3) + 1e-9
    assert not rep.subadd_strict
    assert rep.subadd_relaxed


def test_power_subadditive():
    rep = ap.check_axioms(ap.BeurlingWeight(ap.OmegaProfile.power(0.5)))
    assert rep.subadd_excess <= 1e-12
    assert rep.w2_finite


def test_w2_log_square_closed_form(log_square):
    rep = ap.check_axioms(log_square)
    assert rep.w2_integral == pytest.approx(PI_LOG2, abs=1e-6)
    assert not rep.w2_tail_is_estimate
    assert rep.w2_refined_delta < 1e-6 * (1 + rep.w2_integral)


def test_w2_tabulated_tail_is_estimate():
    w = ap.BeurlingWeight(ap.OmegaProfile.tabulated([(0, 0), (50, 2), (100, 3)]))
    rep = ap.check_axioms(w)
    assert rep.w2_tail_is_estimate
    assert rep.w2_finite and rep.w2_tail > 0


def test_oscillation_within_factor_two(log_shift, log_square):
    for w in (log_shift, log_square):
        rep = ap.check_axioms(w)
        assert rep.oscillation_ok
        assert 1.0 <= rep.oscillation_worst <= 2.0


def test_doubling_growth_from_subadditivity(log_shift, log_square):
    ts = np.geomspace(0.5, 5e3, 64)
    for w in (log_shift, log_square):
        excess = ap.check_axioms(w).subadd_excess
        omega = w.omega
        assert np.all(omega(2 * ts) <= 2 * omega(ts) + max(excess, 0.0) + 1e-12)


def test_disk_constant_shrinks_with_eps(log_shift):
    c_small = ap.estimate_disk_constant(log_shift, 0.01)
    c_big = ap.estimate_disk_constant(log_shift, 0.2)
    assert 1.0 <= c_small <= c_big
    assert c_small < 1.1


def test_poisson_transform_zero_profile():
    w = ap.BeurlingWeight(ap.OmegaProfile.tabulated([(0, 0), (100, 0)]))
    assert ap.poisson_transform(w, 1j) == 0.0


def test_poisson_transform_log_square_closed_form(log_square):
    # harmonic extension of log(1+t^2) is 2 log|z + i|
    u = ap.poisson_transform(log_square, 1j)
    assert u == pytest.approx(2 * math.log(2), abs=1e-5)
    for z in (0.5 + 2j, -3 + 0.7j):
        u = ap.poisson_transform(log_square, z)
        assert u == pytest.approx(2 * math.log(abs(z + 1j)), rel=1e-8)


def test_poisson_transform_log_shift_value(log_shift):
    u1 = ap.poisson_transform(log_shift, 1j)
    u2 = ap.poisson_transform(log_shift, 1j, ap.QuadSpec(epsabs=1e-12, epsrel=1e-12, limit=400))
    assert abs(u1 - u2) < 1e-4
    assert u1 == pytest.approx(U_LOG_SHIFT_AT_I, abs=1e-3)
    assert u1 == pytest.approx(0.9297, abs=1e-3)


def test_poisson_transform_even_symmetry(log_shift):
    for z in (2 + 1j, 0.3 + 0.5j, -4 + 2.5j):
        u = ap.poisson_transform(log_shift, z)
        u_m = ap.poisson_transform(log_shift, complex(-z.real, z.imag))
        assert u == pytest.approx(u_m, rel=1e-8, abs=1e-10)


def test_poisson_transform_requires_upper_half(log_shift):
    with pytest.raises(DomainError):
        ap.poisson_transform(log_shift, 1 - 1j)


def test_poisson_bound_zero_profile():
    w = ap.BeurlingWeight(ap.OmegaProfile.tabulated([(0, 0), (100, 0)]))
    rep = ap.verify_poisson_bound(w, [1j, 2 + 3j, -5 + 0.5j])
    assert rep.a_fit == 0.0 and rep.b_fit == 0.0 and rep.max_deviation == 0.0


def test_poisson_bound_on_horizontal_line(log_square):
    samples = [complex(x, 1.0) for x in np.linspace(-50, 50, 21)]
    rep = ap.verify_poisson_bound(log_square, samples)
    assert rep.b_fit == 0.0  # one shared height
    assert 0 < rep.a_fit < 1.5
    # deviation peaks over the origin: log((x^2+4)/(x^2+2)) maximal at x = 0
    assert rep.worst_point == pytest.approx(1j)


def test_poisson_bound_linear_residual(log_shift):
    ys = np.geomspace(1.0, 100.0, 12)
    samples = [complex(0, y) for y in ys]
    rep = ap.verify_poisson_bound(log_shift, samples)
    devs = [abs(ap.poisson_transform(log_shift, z) - log_shift.omega(abs(z)))
            for z in samples]
    assert all(d <= rep.a_fit + rep.b_fit * z.imag + 1e-9
               for d, z in zip(devs, samples))


def test_weight_config_round_trip():
    for cfg in ({"family": "log_shift", "a": 2.0},
                {"family": "log_square"},
                {"family": "power", "gamma": 0.3},
                {"family": "tabulated", "knots": [[0.0, 0.0], [5.0, 1.0]]}):
        w = ap.BeurlingWeight.from_dict(cfg)
        assert w.to_dict() == cfg


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 1e5), st.floats(0.0, 1e5))
def test_omega_monotone(s, t):
    omega = ap.OmegaProfile.log_shift(1.5)
    lo, hi = min(s, t), max(s, t)
    assert omega(lo) <= omega(hi) + 1e-12
