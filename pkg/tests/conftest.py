import math

import numpy as np
import pytest
from hypothesis import strategies as st

import apinterp as ap


@pytest.fixture(scope="session")
def log_shift():
    return ap.BeurlingWeight(ap.OmegaProfile.log_shift(1.0))


@pytest.fixture(scope="session")
def log_square():
    return ap.BeurlingWeight(ap.OmegaProfile.log_square())


def finite_complex(max_abs=50.0, min_im=None, max_im=None):
    re = st.floats(-max_abs, max_abs, allow_nan=False, allow_infinity=False)
    lo = -max_abs if min_im is None else min_im
    hi = max_abs if max_im is None else max_im
    im = st.floats(lo, hi, allow_nan=False, allow_infinity=False)
    return st.builds(complex, re, im)


def point_lists(min_size=1, max_size=20, **kwargs):
    pair = st.tuples(finite_complex(**kwargs), st.integers(1, 3))
    return st.lists(pair, min_size=min_size, max_size=max_size)


def wirtinger_stencil(f, z, h):
    """(d/dx + i d/dy)/2 of f at z via centered differences."""
    return ((f(z + h) - f(z - h)) + 1j * (f(z + 1j * h) - f(z - 1j * h))) / (4 * h)


def jensen_quadrature(hv, z, steps=20000):
    """Independent route to the hyperbolic Jensen value: integrate the
    pseudohyperbolic counting function n(z, t)/t over (0, 1) with geometric
    trapezoid nodes between the exact jump locations."""
    rho = np.abs(z - hv.lam) / np.abs(z - np.conj(hv.lam))
    bps = np.unique(rho)
    edges = np.append(bps, 1.0)
    log_lens = np.log(edges[1:] / edges[:-1])
    weights = log_lens / log_lens.sum()
    total = 0.0
    for i in range(bps.size):
        a, b = edges[i], edges[i + 1]
        if b <= a:
            continue
        c = int(hv.mult[rho <= bps[i]].sum())
        n = max(2, int(round(steps * weights[i])))
        nodes = a * (b / a) ** np.linspace(0.0, 1.0, n + 1)
        total += float(np.trapezoid(c / nodes, nodes))
    return total


def collapsing_pairs(count=24, window=52.0):
    """Pairs (k, k + e^{-k}): gaps shrink much faster than the weight grows."""
    pts = []
    for k in range(1, count + 1):
        pts.append((complex(k, 0.0), 1))
        pts.append((complex(k + math.exp(-k), 0.0), 1))
    return ap.Variety(pts, window_radius=window)
