"""Geometric interpolation conditions: counting bound and Poisson balayage.

Two per-point statistics decide interpolation at desk scale:

  (a) integrated count N(lambda, p(lambda)) / p(lambda) stays bounded;
  (b) the balayage sum  Phi(x) = sum mult * |Im lambda| / |x - lambda|^2
      over points outside the strip |Im z| <= omega(|z|) stays bounded
      over real x.

A finite sample can only exhibit evidence, so both are swept over a
schedule of truncation radii and the growth trend of the per-radius
constants is classified from a log-log slope fit.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvariantViolation
from .numutil import golden_section_max, neumaier_sum
from .variety import P_MIN, Variety
from .weights import BeurlingWeight

BOUNDED = "bounded-evidence"
DIVERGENT = "divergence-evidence"
INCONCLUSIVE = "inconclusive"

DEFAULT_THRESHOLDS = (0.05, 0.2)

_CHUNK = 64  # rows per block in the pairwise kernels, keeps temporaries small


@dataclass
class RegionSplit:
    """Partition by the strip |Im z| <= omega(|z|); ties go to the strip."""

    strip: Variety
    upper: Variety
    lower: Variety

    def exterior(self) -> Variety:
        pts = list(zip(self.upper.lam, self.upper.mult))
        pts += list(zip(self.lower.lam, self.lower.mult))
        return Variety(pts, self.strip.window_radius)

    def counts(self) -> dict:
        return {"strip": len(self.strip), "upper": len(self.upper),
                "lower": len(self.lower)}


def split_regions(v: Variety, w: BeurlingWeight) -> RegionSplit:
    if not len(v):
        empty = Variety([], v.window_radius)
        return RegionSplit(empty, empty, empty)
    omega_abs = w.omega(np.abs(v.lam))
    im = v.lam.imag
    in_strip = np.abs(im) <= omega_abs
    up = im > omega_abs
    down = im < -omega_abs
    window = v.window_radius
    return RegionSplit(
        Variety(zip(v.lam[in_strip], v.mult[in_strip]), window),
        Variety(zip(v.lam[up], v.mult[up]), window),
        Variety(zip(v.lam[down], v.mult[down]), window),
    )


def _validate_radii(radii, window: float) -> np.ndarray:
    radii = np.asarray(list(radii), dtype=float)
    if radii.size == 0 or np.any(radii <= 0):
        raise DomainError("radii must be positive")
    if np.any(np.diff(radii) <= 0):
        raise DomainError("radii must be strictly increasing")
    if radii[-1] > window / 2 * (1 + 1e-12):
        raise DomainError("radii must not exceed window_radius / 2")
    return radii


def integrated_counts_at_points(v: Variety, w: BeurlingWeight,
                                centers: np.ndarray, radii_at: np.ndarray,
                                include_center: bool = False) -> np.ndarray:
    """Integrated count at each center with its own radius, chunked.

    Vectorized equivalent of integrated_count over many centers; the center
    multiplicity term is optional because the per-point condition constant
    is conventionally taken without it (see condition_a_constants).  Centers
    with a non-positive radius get value 0 (empty disk).

    Relies on the variety's canonical order: points sorted by |lambda|, so
    only the annulus | |lambda| - |center| | <= radius needs scanning.
    """
    abs_all = np.abs(v.lam)
    out = np.empty(centers.size)
    for lo in range(0, centers.size, _CHUNK):
        hi = min(lo + _CHUNK, centers.size)
        block = centers[lo:hi, None]
        r = np.maximum(radii_at[lo:hi, None], 0.0)
        abs_block = np.abs(centers[lo:hi])
        a = int(np.searchsorted(abs_all, np.min(abs_block - r[:, 0]), side="left"))
        b = int(np.searchsorted(abs_all, np.max(abs_block + r[:, 0]), side="right"))
        lam_win = v.lam[a:b][None, :]
        mult_win = v.mult[a:b][None, :]
        d = np.abs(lam_win - block)
        inside = (d > 0) & (d <= r)
        logs = np.zeros_like(d)
        np.log(d, out=logs, where=inside)
        log_r = np.log(np.where(r > 0, r, 1.0))
        contrib = np.where(inside, mult_win * (log_r - logs), 0.0)
        vals = contrib.sum(axis=1)
        if include_center:
            n0 = np.where(d == 0, mult_win, 0).sum(axis=1)
            vals = vals + np.where(radii_at[lo:hi] > 0,
                                   n0 * log_r[:, 0], 0.0)
        out[lo:hi] = vals
    return out


@dataclass
class ConditionSweep:
    radii: list[float]
    constants: list[float]
    witnesses: list
    floor_hits: int = 0


def condition_a_constants(v: Variety, w: BeurlingWeight, radii,
                          include_center: bool = False,
                          p_min: float = P_MIN) -> ConditionSweep:
    """Per-radius worst integrated-count density.

    For each truncation radius R: max over points with |lambda| <= R of
    N(lambda, p(lambda)) / max(p(lambda), p_min), where N is the integrated
    count over the whole sample.  By default N excludes the center's own
    multiplicity term mult * log p(lambda); the center term is dominated by
    p(lambda) asymptotically and leaving it out matches the direct-summation
    calibration used by the reference configurations.  Pass
    include_center=True for the literal formula.
    """
    radii = _validate_radii(radii, v.window_radius)
    if not len(v):
        return ConditionSweep(list(radii), [0.0] * radii.size,
                              [None] * radii.size)
    abs_lam = np.abs(v.lam)  # canonical order is sorted by |lambda|
    keep = abs_lam <= radii[-1]
    centers = v.lam[keep]
    if centers.size == 0:
        return ConditionSweep(list(radii), [0.0] * radii.size,
                              [None] * radii.size)
    p_c = w.p(centers)
    floor_hits = int(np.sum(p_c < p_min))
    n_vals = integrated_counts_at_points(v, w, centers, p_c, include_center)
    ratios = n_vals / np.maximum(p_c, p_min)
    abs_centers = np.abs(centers)
    constants, witnesses = [], []
    for r in radii:
        k = int(np.searchsorted(abs_centers, r, side="right"))
        if k == 0:
            constants.append(0.0)
            witnesses.append(None)
            continue
        j = int(np.argmax(ratios[:k]))
        constants.append(float(ratios[j]))
        witnesses.append(complex(centers[j]))
    return ConditionSweep(list(radii), constants, witnesses, floor_hits)


def balayage_value(v_exterior: Variety, x: float) -> float:
    """Exact sum of mult * |Im lambda| / |x - lambda|^2 at a real abscissa."""
    if not len(v_exterior):
        return 0.0
    im = v_exterior.lam.imag
    if np.any(im == 0):
        raise InvariantViolation("exterior variety contains a real point")
    re = v_exterior.lam.real
    terms = v_exterior.mult * np.abs(im) / ((x - re) ** 2 + im * im)
    return neumaier_sum(terms)


@dataclass
class ScanSpec:
    xmin: float | None = None
    xmax: float | None = None
    samples: int = 512
    refine_tol: float = 1e-6


def _balayage_array(re, im2, mim, xs) -> np.ndarray:
    out = np.empty(xs.size)
    for lo in range(0, xs.size, _CHUNK):
        hi = min(lo + _CHUNK, xs.size)
        d2 = (xs[lo:hi, None] - re[None, :]) ** 2 + im2[None, :]
        out[lo:hi] = (mim[None, :] / d2).sum(axis=1)
    return out


def balayage_sup(v_exterior: Variety, scan: ScanSpec | None = None) -> tuple[float, float]:
    """Scan-and-refine maximum of the balayage profile.

    Candidates are every point's real part (each kernel peaks there) plus a
    uniform grid over the window; the best candidate is refined by golden
    section until the bracket is below refine_tol.  The result is a certified
    lower bound on the true supremum and is never below the candidate grid
    maximum.
    """
    if not len(v_exterior):
        return 0.0, 0.0
    scan = scan or ScanSpec()
    im = v_exterior.lam.imag
    if np.any(im == 0):
        raise InvariantViolation("exterior variety contains a real point")
    re = v_exterior.lam.real
    im2 = im * im
    mim = v_exterior.mult * np.abs(im)
    xmin = scan.xmin if scan.xmin is not None else -v_exterior.window_radius
    xmax = scan.xmax if scan.xmax is not None else v_exterior.window_radius
    grid = np.linspace(xmin, xmax, max(2, scan.samples))
    cands = np.unique(np.concatenate([re, grid]))
    vals = _balayage_array(re, im2, mim, cands)
    k = int(np.argmax(vals))
    best_x, best_v = float(cands[k]), float(vals[k])
    left = cands[k - 1] if k > 0 else cands[k] - 1.0
    right = cands[k + 1] if k + 1 < cands.size else cands[k] + 1.0
    span = max(best_x - left, right - best_x, 1e-9)

    def phi(x):
        return float((mim / ((x - re) ** 2 + im2)).sum())

    rx, rv = golden_section_max(phi, best_x - span, best_x + span,
                                tol=scan.refine_tol)
    if rv > best_v:
        return float(rx), float(rv)
    return best_x, best_v


@dataclass
class BalayageProfile:
    xs: list[float]
    values: list[float]
    x_star: float
    sup: float
    slope_bound: float
    max_miss: float

    def rows(self):
        yield from zip(self.xs, self.values)
        yield (self.x_star, self.sup)


def balayage_profile(v_exterior: Variety, scan: ScanSpec | None = None) -> BalayageProfile:
    """Sampled balayage map plus the refined supremum row.

    slope_bound is sup |Phi'| <= 0.6495 * sum mult / Im^2 (peak derivative of
    each kernel), and max_miss = slope_bound * grid spacing / 2 estimates how
    far the grid maximum can sit below the true supremum between samples.
    """
    scan = scan or ScanSpec()
    xmin = scan.xmin if scan.xmin is not None else -v_exterior.window_radius
    xmax = scan.xmax if scan.xmax is not None else v_exterior.window_radius
    xs = np.linspace(xmin, xmax, max(2, scan.samples))
    if not len(v_exterior):
        return BalayageProfile(list(xs), [0.0] * xs.size, 0.0, 0.0, 0.0, 0.0)
    im = v_exterior.lam.imag
    re = v_exterior.lam.real
    values = _balayage_array(re, im * im, v_exterior.mult * np.abs(im), xs)
    x_star, sup = balayage_sup(v_exterior, scan)
    slope_bound = float((0.6495 * v_exterior.mult / (im * im)).sum())
    spacing = (xmax - xmin) / (xs.size - 1)
    return BalayageProfile(list(map(float, xs)), list(map(float, values)),
                           x_star, sup, slope_bound, slope_bound * spacing / 2)


def condition_b_constants(v: Variety, w: BeurlingWeight, radii,
                          scan: ScanSpec | None = None) -> ConditionSweep:
    """Per-radius balayage supremum over strip-exterior points with |lambda| <= R.

    Exterior membership uses the strict inequality |Im lambda| > omega(|lambda|).
    """
    radii = _validate_radii(radii, v.window_radius)
    if not len(v):
        return ConditionSweep(list(radii), [0.0] * radii.size,
                              [None] * radii.size)
    omega_abs = w.omega(np.abs(v.lam))
    ext = np.abs(v.lam.imag) > omega_abs
    lam_ext = v.lam[ext]
    mult_ext = v.mult[ext]
    constants, witnesses = [], []
    for r in radii:
        keep = np.abs(lam_ext) <= r
        sub = Variety(zip(lam_ext[keep], mult_ext[keep]), v.window_radius)
        x_star, sup = balayage_sup(sub, scan)
        constants.append(float(sup))
        witnesses.append(float(x_star) if len(sub) else None)
    return ConditionSweep(list(radii), constants, witnesses)


@dataclass
class TrendResult:
    verdict: str
    exponent: float
    n_fit: int

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "exponent": self.exponent,
                "n_fit": self.n_fit}


def classify_trend(radii, constants,
                   thresholds: tuple[float, float] = DEFAULT_THRESHOLDS) -> TrendResult:
    """Least-squares slope of log(constant) against log(radius).

    Fitted over the upper half of the schedule; slope below thresholds[0]
    reads as bounded-evidence, above thresholds[1] as divergence-evidence,
    otherwise inconclusive.  Non-positive constants are excluded from the
    fit; an all-zero series is bounded-evidence with exponent 0.
    """
    radii = np.asarray(list(radii), dtype=float)
    constants = np.asarray(list(constants), dtype=float)
    if radii.size != constants.size:
        raise DomainError("radii and constants must have equal length")
    if np.all(constants <= 0):
        return TrendResult(BOUNDED, 0.0, 0)
    if radii.size < 4 or radii[-1] / radii[0] < 4 * (1 - 1e-12):
        raise DomainError("need at least 4 radii spanning two doublings")
    lo, hi = thresholds
    half = radii.size // 2
    r_fit = radii[half:]
    c_fit = constants[half:]
    pos = c_fit > 0
    if pos.sum() < 2:
        return TrendResult(INCONCLUSIVE, math.nan, int(pos.sum()))
    slope = float(np.polyfit(np.log(r_fit[pos]), np.log(c_fit[pos]), 1)[0])
    if slope < lo:
        verdict = BOUNDED
    elif slope > hi:
        verdict = DIVERGENT
    else:
        verdict = INCONCLUSIVE
    return TrendResult(verdict, slope, int(pos.sum()))


@dataclass
class ConditionReport:
    radii: list[float]
    constants_a: list[float]
    constants_b: list[float]
    trend_a: TrendResult
    trend_b: TrendResult
    witnesses_a: list = field(default_factory=list)
    witnesses_b: list = field(default_factory=list)
    floor_hits_a: int = 0
    thresholds: tuple[float, float] = DEFAULT_THRESHOLDS

    def to_dict(self) -> dict:
        return {
            "radii": self.radii,
            "condition_a": {
                "constants": self.constants_a,
                "verdict": self.trend_a.verdict,
                "exponent": self.trend_a.exponent,
                "witnesses": [None if z is None else [z.real, z.imag]
                              for z in self.witnesses_a],
                "floor_hits": self.floor_hits_a,
            },
            "condition_b": {
                "constants": self.constants_b,
                "verdict": self.trend_b.verdict,
                "exponent": self.trend_b.exponent,
                "witnesses": self.witnesses_b,
            },
            "thresholds": list(self.thresholds),
        }


def default_radii(window_radius: float, n: int = 8) -> list[float]:
    """Geometric schedule from window/32 to window/2."""
    return list(np.geomspace(window_radius / 32, window_radius / 2, n))


def run_condition_report(v: Variety, w: BeurlingWeight, radii=None,
                         thresholds: tuple[float, float] = DEFAULT_THRESHOLDS,
                         scan: ScanSpec | None = None,
                         include_center: bool = False) -> ConditionReport:
    radii = list(radii) if radii is not None else default_radii(v.window_radius)
    sweep_a = condition_a_constants(v, w, radii, include_center=include_center)
    sweep_b = condition_b_constants(v, w, radii, scan=scan)
    return ConditionReport(
        radii=list(map(float, radii)),
        constants_a=sweep_a.constants,
        constants_b=sweep_b.constants,
        trend_a=classify_trend(radii, sweep_a.constants, thresholds),
        trend_b=classify_trend(radii, sweep_b.constants, thresholds),
        witnesses_a=sweep_a.witnesses,
        witnesses_b=sweep_b.witnesses,
        floor_hits_a=sweep_a.floor_hits,
        thresholds=thresholds,
    )
