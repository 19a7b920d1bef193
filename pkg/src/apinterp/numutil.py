"""Small numeric helpers: compensated sums, 1-D search, quadrature wrapper."""

import math

import numpy as np
from scipy.integrate import quad

from .errors import NumericError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def neumaier_sum(values) -> float:
    """Compensated (Kahan-Babuska) sum in fixed iteration order.

    Used wherever terms span many orders of magnitude, so results are
    reproducible to roughly 1 ulp independent of how callers batch work.
    """
    total = 0.0
    comp = 0.0
    for v in values:
        v = float(v)
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def golden_section_max(f, a: float, b: float, tol: float = 1e-6, max_iter: int = 200):
    """Maximize a scalar function on [a, b]; returns the best point seen.

    Only locally reliable (unimodal bracket assumed); the caller keeps the
    result honest by comparing against its own candidate grid.
    """
    best_x, best_f = a, f(a)
    fb = f(b)
    if fb > best_f:
        best_x, best_f = b, fb
    lo, hi = a, b
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if f1 > best_f:
            best_x, best_f = x1, f1
        if f2 > best_f:
            best_x, best_f = x2, f2
        if hi - lo < tol:
            break
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
    return best_x, best_f


def adaptive_quad(f, a: float, b: float, *, points=None, epsabs: float = 1e-10,
                  epsrel: float = 1e-10, limit: int = 200):
    """scipy.integrate.quad with error checking; returns (value, abserr).

    Raises NumericError when QUADPACK reports failure and the error estimate
    is materially above the requested tolerance.
    """
    pts = None
    if points is not None and math.isfinite(a) and math.isfinite(b):
        pts = sorted(p for p in points if a < p < b)
        if not pts:
            pts = None
    out = quad(f, a, b, points=pts, epsabs=epsabs, epsrel=epsrel,
               limit=limit, full_output=1)
    val, err = out[0], out[1]
    if len(out) > 3:
        budget = 50.0 * max(epsabs, abs(val) * epsrel, 1e-300)
        if not math.isfinite(val) or err > budget:
            raise NumericError(
                f"quadrature on [{a}, {b}] did not converge: "
                f"estimate {val!r}, error {err!r} ({out[3]})")
    return val, err


def close_pairs(lam: np.ndarray, cutoff: float):
    """Yield (i, j, distance) over pairs with distance < cutoff, i < j.

    Uniform grid hashing with cell size equal to the cutoff; deterministic
    iteration order, near-linear cost for spread-out configurations.
    """
    if lam.size < 2:
        return
    inv = 1.0 / cutoff
    cells: dict[tuple[int, int], list[int]] = {}
    keys = []
    for i in range(lam.size):
        key = (math.floor(lam[i].real * inv), math.floor(lam[i].imag * inv))
        keys.append(key)
        cells.setdefault(key, []).append(i)
    offsets = [(dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1)]
    for i in range(lam.size):
        cx, cy = keys[i]
        for dx, dy in offsets:
            for j in cells.get((cx + dx, cy + dy), ()):
                if j <= i:
                    continue
                d = abs(lam[i] - lam[j])
                if d < cutoff:
                    yield i, j, d
