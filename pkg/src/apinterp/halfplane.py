"""Upper half-plane potential theory for point configurations.

Pseudohyperbolic distance rho(z, w) = |z - w| / |z - conj w|, log of the
Blaschke modulus, per-point exclusion sums, hyperbolic disk counting, and
the distribution-function identity

    sum mult * log(1/rho(z, lambda)) = integral over t in (0,1) of n(z,t)/t,

where n(z, t) counts multiplicity inside the pseudohyperbolic disk of
radius t.  Only |B| is ever needed; phases are out of scope.  Lower
half-plane data is handled by conjugating at the call site.
"""

import math
from dataclasses import dataclass

import numpy as np

from .conditions import DEFAULT_THRESHOLDS, TrendResult, classify_trend, _validate_radii
from .errors import DomainError
from .numutil import neumaier_sum
from .variety import P_MIN, Variety
from .weights import BeurlingWeight

#: Sentinel returned by log_blaschke_abs at a configuration point.  It is
#: detected up front and returned directly, never accumulated into a sum.
LOG_ZERO = float("-inf")


class HalfPlaneVariety:
    """Weighted points with strictly positive imaginary parts."""

    def __init__(self, points, window_radius: float | None = None):
        inner = Variety(points, window_radius)
        if inner.lam.size and np.any(inner.lam.imag <= 0):
            raise DomainError("all points must satisfy Im lambda > 0")
        self.lam = inner.lam
        self.mult = inner.mult
        self.window_radius = inner.window_radius

    def __len__(self) -> int:
        return int(self.lam.size)

    @classmethod
    def from_variety(cls, v: Variety, conjugate_lower: bool = False) -> "HalfPlaneVariety":
        """Select the open upper half of a variety.

        With conjugate_lower=True the lower-half points are reflected into
        the upper half-plane instead (the conjugation reduction).
        """
        if conjugate_lower:
            keep = v.lam.imag < 0
            lam = np.conj(v.lam[keep])
        else:
            keep = v.lam.imag > 0
            lam = v.lam[keep]
        return cls(zip(lam, v.mult[keep]), v.window_radius)

    def restrict(self, radius: float) -> "HalfPlaneVariety":
        keep = np.abs(self.lam) <= radius
        return HalfPlaneVariety(zip(self.lam[keep], self.mult[keep]),
                                self.window_radius)


def pseudo_distance(z: complex, w: complex) -> float:
    """rho(z, w) = |z - w| / |z - conj w|, in [0, 1) for z, w in the upper half."""
    z, w = complex(z), complex(w)
    if z.imag <= 0 or w.imag <= 0:
        raise DomainError("pseudo_distance requires Im > 0 for both arguments")
    return abs(z - w) / abs(z - w.conjugate())


@dataclass(frozen=True)
class HypDisk:
    """Pseudohyperbolic disk of center z and radius t, with its Euclidean form.

    The set rho(., z) < t is the Euclidean disk of center
    Re z + i (1+t^2)/(1-t^2) Im z and radius 2t/(1-t^2) Im z, always inside
    the upper half-plane.
    """

    center: complex
    radius: float

    def __post_init__(self):
        if self.center.imag <= 0:
            raise DomainError("center must lie in the upper half-plane")
        if not 0.0 < self.radius < 1.0:
            raise DomainError("radius must lie in (0, 1)")

    @property
    def euclidean_center(self) -> complex:
        t = self.radius
        return complex(self.center.real,
                       (1 + t * t) / (1 - t * t) * self.center.imag)

    @property
    def euclidean_radius(self) -> float:
        t = self.radius
        return 2 * t / (1 - t * t) * self.center.imag

    def contains(self, w: complex) -> bool:
        return abs(complex(w) - self.euclidean_center) <= self.euclidean_radius


def _rho_array(hv: HalfPlaneVariety, z: complex) -> np.ndarray:
    return np.abs(z - hv.lam) / np.abs(z - np.conj(hv.lam))


def log_blaschke_abs(hv: HalfPlaneVariety, z: complex):
    """log|B(z)| = sum mult * log rho(z, lambda) <= 0.

    Returns the LOG_ZERO sentinel when z coincides with a configuration
    point; the sentinel is produced before any summation starts.
    """
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("log_blaschke_abs requires Im z > 0")
    if not len(hv):
        return 0.0
    rho = _rho_array(hv, z)
    if np.any(rho == 0.0):
        return LOG_ZERO
    return neumaier_sum(hv.mult * np.log(rho))


def blaschke_sum(hv: HalfPlaneVariety, lam: complex) -> float:
    """Exclusion sum S(lambda) = sum over lambda' != lambda of
    mult(lambda') * log(1/rho(lambda, lambda')).

    Equals -log of the Blaschke modulus with lambda's own factor removed.
    """
    lam = complex(lam)
    idx = np.nonzero(hv.lam == lam)[0]
    if idx.size == 0:
        raise DomainError("lambda is not a point of the configuration")
    others = np.ones(len(hv), dtype=bool)
    others[idx[0]] = False
    if not others.any():
        return 0.0
    rho = np.abs(lam - hv.lam[others]) / np.abs(lam - np.conj(hv.lam[others]))
    return neumaier_sum(hv.mult[others] * -np.log(rho))


def count_in_hyp_disk(hv: HalfPlaneVariety, z: complex, t: float) -> int:
    """Total multiplicity with rho(z, lambda) <= t (closed convention)."""
    if not 0.0 < t < 1.0:
        raise DomainError("t must lie in (0, 1)")
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("center must lie in the upper half-plane")
    if not len(hv):
        return 0
    rho = _rho_array(hv, z)
    return int(hv.mult[rho <= t].sum())


def hyperbolic_jensen(hv: HalfPlaneVariety, z: complex) -> float:
    """sum mult * log(1/rho(z, lambda)) = integral of n(z,t)/t over (0,1).

    Identical summation to -log_blaschke_abs; raises at configuration points
    where the value would be infinite.
    """
    val = log_blaschke_abs(hv, z)
    if val == LOG_ZERO:
        raise DomainError("hyperbolic_jensen is infinite at configuration points")
    return -val


@dataclass
class SweepReport:
    radii: list[float]
    constants: list[float]
    witnesses: list
    trend: TrendResult

    def to_dict(self) -> dict:
        return {
            "radii": self.radii,
            "constants": self.constants,
            "witnesses": [None if z is None else [z.real, z.imag]
                          for z in self.witnesses],
            "verdict": self.trend.verdict,
            "exponent": self.trend.exponent,
        }


def _exclusion_sums(lam: np.ndarray, mult: np.ndarray, chunk: int = 64) -> np.ndarray:
    """S(lambda_i) for every point at once, chunked over rows."""
    out = np.empty(lam.size)
    for lo in range(0, lam.size, chunk):
        hi = min(lo + chunk, lam.size)
        block = lam[lo:hi, None]
        num = np.abs(block - lam[None, :])
        den = np.abs(block - np.conj(lam)[None, :])
        ratio = np.ones_like(num)
        np.divide(num, den, out=ratio, where=num > 0)
        out[lo:hi] = (mult[None, :] * -np.log(ratio)).sum(axis=1)
    return out


def blaschke_sum_report(hv: HalfPlaneVariety, w: BeurlingWeight, radii,
                        thresholds: tuple[float, float] = DEFAULT_THRESHOLDS) -> SweepReport:
    """Per-radius worst S(lambda)/p(lambda) over |lambda| <= R, trend-classified.

    Both the scanned point and the exclusion sum are truncated to the same
    radius, mirroring the other finite-sample sweeps.
    """
    radii = _validate_radii(radii, hv.window_radius)
    constants, witnesses = [], []
    abs_lam = np.abs(hv.lam)
    for r in radii:
        keep = abs_lam <= r
        lam, mult = hv.lam[keep], hv.mult[keep]
        if lam.size == 0:
            constants.append(0.0)
            witnesses.append(None)
            continue
        ratios = _exclusion_sums(lam, mult) / np.maximum(w.p(lam), P_MIN)
        k = int(np.argmax(ratios))
        constants.append(float(max(ratios[k], 0.0)))
        witnesses.append(complex(lam[k]) if ratios[k] > 0 else None)
    return SweepReport(list(map(float, radii)), constants, witnesses,
                       classify_trend(radii, constants, thresholds))


@dataclass
class LowerBoundReport:
    worst: float
    witness: complex | None
    n_samples: int


def blaschke_lower_bound_report(hv: HalfPlaneVariety, w: BeurlingWeight,
                                samples) -> LowerBoundReport:
    """Worst (-log|B(z)|) / max(p(z), 1) over the given sample points."""
    worst, witness, n = 0.0, None, 0
    for z in samples:
        z = complex(z)
        val = log_blaschke_abs(hv, z)
        if val == LOG_ZERO:
            raise DomainError("sample coincides with a configuration point")
        n += 1
        ratio = -val / max(w.p(z), P_MIN)
        if ratio > worst:
            worst, witness = ratio, z
    return LowerBoundReport(worst, witness, n)


def poisson_kernel(lam: complex, x: float) -> float:
    """P(lambda, x) = Im lambda / ((x - Re lambda)^2 + (Im lambda)^2).

    Unnormalized: integrates to pi over the real line.
    """
    lam = complex(lam)
    if lam.imag <= 0:
        raise DomainError("poisson_kernel requires Im lambda > 0")
    return lam.imag / ((x - lam.real) ** 2 + lam.imag ** 2)


def green_function(lam: complex, z: complex) -> float:
    """G(lambda, z) = log(1/rho(lambda, z)) >= 0, the half-plane Green kernel."""
    rho = pseudo_distance(lam, z)
    if rho == 0.0:
        return math.inf
    return -math.log(rho)
