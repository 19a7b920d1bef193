"""Subharmonic regularization of the weight: p~(z) = |Im z| + r(z).

The correction r is a difference of logarithmic potentials.  The real line
is tiled by intervals I_n of center x_n and length omega_n = omega(x_n);
each interval carries the length measure nu_n and a smeared companion mu_n
obtained by averaging the uniform disk of radius 10 omega_n over I_n; both
have mass omega_n.  Then

    r(z) = integral of log|z - w| d(mu - nu)(w)
         = sum over intervals of  integral over I_n of  M(x) dx,

where M(x) is the disk mean of log|z - .| over D(x, 10 omega_n) minus
log|z - x|, which is non-negative and vanishes once |z - x| >= 10 omega_n.
Off the real axis the (distributional) Laplacian of p~ is 2 pi times the
density of mu, which laplacian_audit checks against a five-point stencil.
"""

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .errors import ConstructionError, DomainError, NumericError
from .numutil import adaptive_quad
from .weights import BeurlingWeight

SMEAR_FACTOR = 10.0  # disk radius = SMEAR_FACTOR * omega_n


@dataclass(frozen=True)
class Interval:
    left: float
    right: float
    center: float
    omega: float


@dataclass
class PartitionAudit:
    max_gap: float
    max_center_error: float


class IntervalPartition:
    """Tiling of [-t_outer, -t_inner] and [t_inner, t_outer] by intervals
    with length omega(center); the two sides are exact mirror images."""

    def __init__(self, intervals, t_inner: float, t_outer: float):
        self.intervals = tuple(sorted(intervals, key=lambda iv: iv.center))
        self.t_inner = t_inner
        self.t_outer = t_outer
        self._centers = [iv.center for iv in self.intervals]

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def max_omega(self) -> float:
        return max(iv.omega for iv in self.intervals) if self.intervals else 0.0

    def near(self, x: float, reach: float):
        lo = bisect_left(self._centers, x - reach)
        hi = bisect_right(self._centers, x + reach)
        return self.intervals[lo:hi]

    def positive_side(self):
        return [iv for iv in self.intervals if iv.center > 0]

    def audit(self) -> PartitionAudit:
        max_gap = 0.0
        pos = self.positive_side()
        for a, b in zip(pos, pos[1:]):
            max_gap = max(max_gap, abs(b.left - a.right))
        max_center = max((abs(iv.center - (iv.left + iv.right) / 2)
                          for iv in self.intervals), default=0.0)
        return PartitionAudit(max_gap, max_center)


def build_partition(w: BeurlingWeight, t_extent: float,
                    omega_floor: float = 1e-3, fp_tol: float = 1e-10,
                    max_iter: int = 200) -> IntervalPartition:
    """March intervals over [t_inner, t_extent] and mirror them to t < 0.

    The tiling starts at the smallest t0 >= 0 with omega(t0) >= omega_floor
    (below it the profile is too flat to carry an interval of its own
    length).  From a left endpoint t, the center solves x = t + omega(x)/2
    by fixed-point iteration and the interval [t, t + omega(x)] is emitted;
    consecutive intervals share endpoints exactly.
    """
    if not t_extent > 0:
        raise DomainError("t_extent must be positive")
    omega = w.omega
    if omega(t_extent) < omega_floor:
        raise ConstructionError("profile stays below omega_floor on the range")
    # Smallest start point with omega >= floor, by bisection on monotone omega.
    if omega(0.0) >= omega_floor:
        t0 = 0.0
    else:
        lo, hi = 0.0, t_extent
        for _ in range(200):
            mid = (lo + hi) / 2
            if omega(mid) >= omega_floor:
                hi = mid
            else:
                lo = mid
        t0 = hi
    intervals = []
    t = t0
    while t < t_extent:
        x = t + max(omega_floor, omega(t)) / 2
        converged = False
        for _ in range(max_iter):
            x_next = t + omega(x) / 2
            if abs(x_next - x) <= fp_tol * max(1.0, abs(x)):
                x = x_next
                converged = True
                break
            x = x_next
        if not converged:
            raise ConstructionError(f"center iteration stalled at t = {t}")
        length = omega(x)
        if length <= 0:
            raise ConstructionError(f"degenerate interval at t = {t}")
        right = t + length
        intervals.append(Interval(t, right, x, length))
        t = right
    mirrored = [Interval(-iv.right, -iv.left, -iv.center, iv.omega)
                for iv in intervals]
    return IntervalPartition(intervals + mirrored, t0, t)


@dataclass
class RegQuadSpec:
    epsabs_factor: float = 1e-8   # absolute tolerance per interval = factor * omega_n
    epsrel: float = 1e-10
    limit: int = 200


@dataclass
class RegularizedWeight:
    base: BeurlingWeight
    partition: IntervalPartition
    quad: RegQuadSpec

    @property
    def reliable_half_width(self) -> float:
        return self.partition.t_outer - SMEAR_FACTOR * self.partition.max_omega


def regularize(w: BeurlingWeight, t_extent: float,
               quad: RegQuadSpec | None = None, **kwargs) -> RegularizedWeight:
    return RegularizedWeight(w, build_partition(w, t_extent, **kwargs),
                             quad or RegQuadSpec())


def circular_mean_log(z: complex, a: complex, radius: float) -> float:
    """Area mean of log|z - .| over the disk D(a, radius).

    Equals log|z - a| outside the disk (harmonicity) and
    log radius - 1/2 + |z - a|^2 / (2 radius^2) inside; the two branches
    agree on the boundary circle.
    """
    if not radius > 0:
        raise DomainError("radius must be positive")
    d = abs(complex(z) - complex(a))
    if d >= radius:
        return math.log(d)
    return math.log(radius) - 0.5 + d * d / (2 * radius * radius)


def mean_log_gap(z: complex, x: float, radius: float) -> float:
    """circular_mean_log(z, x, radius) - log|z - x|; non-negative, zero
    outside the disk, +inf at z = x (integrable; quadrature callers put a
    breakpoint there instead of evaluating it)."""
    d = abs(complex(z) - x)
    if d >= radius:
        return 0.0
    if d == 0.0:
        return math.inf
    return math.log(radius) - 0.5 + d * d / (2 * radius * radius) - math.log(d)


def _interval_correction(iv: Interval, zx: float, zy: float,
                         quad: RegQuadSpec) -> float:
    """Adaptive quadrature of the mean-log gap over one interval."""
    radius = SMEAR_FACTOR * iv.omega
    r2 = radius * radius
    y2 = zy * zy

    def integrand(x):
        dx = zx - x
        d2 = dx * dx + y2
        if d2 >= r2:
            return 0.0
        d = math.sqrt(d2)
        return math.log(radius) - 0.5 + d2 / (2 * r2) - math.log(d)

    points = []
    if y2 < r2:
        half = math.sqrt(r2 - y2)
        points.extend((zx - half, zx + half))
    if zy == 0.0:
        points.append(zx)
    val, _ = adaptive_quad(integrand, iv.left, iv.right, points=points,
                           epsabs=quad.epsabs_factor * iv.omega,
                           epsrel=quad.epsrel, limit=quad.limit)
    return val


def potential_correction(rw: RegularizedWeight, z: complex) -> float:
    """r(z): sum of per-interval corrections over the intervals whose smeared
    support contains z; intervals farther than 10 omega_n contribute exactly
    zero and are skipped by index lookup."""
    z = complex(z)
    if abs(z.real) > rw.reliable_half_width:
        raise DomainError("z lies outside the reliable region of the partition")
    part = rw.partition
    reach = (SMEAR_FACTOR + 0.5) * part.max_omega
    total = 0.0
    for iv in part.near(z.real, reach):
        radius = SMEAR_FACTOR * iv.omega
        gap = max(0.0, abs(z.real - iv.center) - iv.omega / 2)
        if math.hypot(gap, z.imag) > radius:
            continue
        try:
            total += _interval_correction(iv, z.real, z.imag, rw.quad)
        except NumericError as exc:
            raise NumericError(
                f"correction quadrature failed on the interval centered at "
                f"{iv.center} (length {iv.omega}): {exc}") from exc
    return total


def regularized_p(rw: RegularizedWeight, z: complex) -> float:
    """p~(z) = |Im z| + r(z); comparable to the base weight on the strip."""
    return abs(complex(z).imag) + potential_correction(rw, z)


def measure_density(rw: RegularizedWeight, z: complex) -> float:
    """Area density of mu at z: sum over intervals of
    |{x in I_n : |z - x| <= 10 omega_n}| / (100 pi omega_n^2)."""
    z = complex(z)
    part = rw.partition
    reach = (SMEAR_FACTOR + 0.5) * part.max_omega
    total = 0.0
    for iv in part.near(z.real, reach):
        radius = SMEAR_FACTOR * iv.omega
        if abs(z.imag) >= radius:
            continue
        half = math.sqrt(radius * radius - z.imag * z.imag)
        overlap = min(iv.right, z.real + half) - max(iv.left, z.real - half)
        if overlap <= 0:
            continue
        total += overlap / (math.pi * radius * radius)
    return total


@dataclass
class LaplacianAudit:
    stencil: float
    density: float
    expected: float
    residual: float


def laplacian_audit(rw: RegularizedWeight, z: complex, h: float) -> LaplacianAudit:
    """Five-point stencil Laplacian of r against 2 pi times the mu density.

    The |Im z| part of p~ carries its distributional Laplacian on the real
    line, so the stencil must stay off it: |Im z| >= 2h is required.
    """
    z = complex(z)
    if not h > 0:
        raise DomainError("step must be positive")
    if abs(z.imag) < 2 * h:
        raise DomainError("stencil would cross the real axis; need |Im z| >= 2h")
    r0 = potential_correction(rw, z)
    stencil = (potential_correction(rw, z + h) + potential_correction(rw, z - h)
               + potential_correction(rw, z + 1j * h)
               + potential_correction(rw, z - 1j * h) - 4 * r0) / (h * h)
    density = measure_density(rw, z)
    expected = 2 * math.pi * density
    return LaplacianAudit(stencil, density, expected, stencil - expected)


@dataclass
class MassAudit:
    nu_mass: float
    mu_mass: float
    discrepancy: float


def interval_mass_audit(part: IntervalPartition, index: int,
                        epsrel: float = 1e-12) -> MassAudit:
    """Check that mu_n and nu_n carry the same mass omega_n.

    nu_n is length measure on I_n, mass = |I_n| exactly.  The mu_n mass is
    recomputed by integrating the chord length of the smearing disk over
    heights, an independent numerical route to the same number.
    """
    iv = part.intervals[index]
    radius = SMEAR_FACTOR * iv.omega
    chord, _ = adaptive_quad(lambda y: 2 * math.sqrt(max(radius * radius - y * y, 0.0)),
                             -radius, radius, epsabs=1e-14, epsrel=epsrel)
    mu_mass = (iv.right - iv.left) * chord / (math.pi * radius * radius)
    nu_mass = iv.right - iv.left
    return MassAudit(nu_mass, mu_mass, mu_mass - nu_mass)
