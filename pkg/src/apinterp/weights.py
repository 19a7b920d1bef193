"""Growth weights of the form p(z) = |Im z| + omega(|z|).

The radial profile omega: [0, inf) -> [0, inf) is expected to vanish at 0,
increase continuously, stay subadditive up to a small additive excess,
dominate log(1+t) for t > 1, and have a finite integral of
omega(t)/(1+t^2) over the positive axis.  check_axioms measures each of
these properties numerically on grids instead of assuming them.

The module also provides the harmonic extension of omega(|t|) to the upper
half-plane (poisson_transform) and a fitter for the bound
|u(z) - omega(|z|)| <= A + B * Im z that the extension satisfies.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericError, TabulatedRangeError
from .numutil import adaptive_quad

LOG_SHIFT = "log_shift"
LOG_SQUARE = "log_square"
POWER = "power"
TABULATED = "tabulated"

_FAMILIES = (LOG_SHIFT, LOG_SQUARE, POWER, TABULATED)


@dataclass(frozen=True)
class OmegaProfile:
    """Radial profile omega.  Built-in families:

    log_shift(a):  omega(t) = a * log(1+t)
    log_square():  omega(t) = log(1+t^2)
    power(gamma):  omega(t) = t^gamma, 0 < gamma < 1
    tabulated(knots): linear interpolation through sorted (t, omega) pairs;
        evaluation outside the knot range is rejected, never extrapolated.
    """

    family: str
    a: float = 1.0
    gamma: float = 0.5
    knots: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DomainError(f"unknown omega family {self.family!r}")
        if self.family == LOG_SHIFT and not self.a > 0:
            raise DomainError("log_shift requires a > 0")
        if self.family == POWER and not 0.0 < self.gamma < 1.0:
            raise DomainError("power requires gamma in (0, 1)")
        if self.family == TABULATED:
            if not self.knots or len(self.knots) < 2:
                raise DomainError("tabulated profile needs at least two knots")
            ts = [t for t, _ in self.knots]
            ws = [w for _, w in self.knots]
            if ts[0] < 0:
                raise DomainError("tabulated knots must have t >= 0")
            if any(t1 >= t2 for t1, t2 in zip(ts, ts[1:])):
                raise DomainError("tabulated knots must be strictly increasing in t")
            if any(w1 > w2 for w1, w2 in zip(ws, ws[1:])):
                raise DomainError("tabulated values must be non-decreasing")
            if any(w < 0 for w in ws):
                raise DomainError("tabulated values must be non-negative")

    @classmethod
    def log_shift(cls, a: float = 1.0) -> "OmegaProfile":
        return cls(family=LOG_SHIFT, a=float(a))

    @classmethod
    def log_square(cls) -> "OmegaProfile":
        return cls(family=LOG_SQUARE)

    @classmethod
    def power(cls, gamma: float) -> "OmegaProfile":
        return cls(family=POWER, gamma=float(gamma))

    @classmethod
    def tabulated(cls, knots) -> "OmegaProfile":
        return cls(family=TABULATED,
                   knots=tuple((float(t), float(w)) for t, w in knots))

    @property
    def t_max(self) -> float:
        """Largest evaluable argument (inf for the closed-form families)."""
        if self.family == TABULATED:
            return self.knots[-1][0]
        return math.inf

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        if np.any(arr < 0):
            raise DomainError("omega is only defined for t >= 0")
        if self.family == LOG_SHIFT:
            out = self.a * np.log1p(arr)
        elif self.family == LOG_SQUARE:
            out = np.log1p(arr * arr)
        elif self.family == POWER:
            out = arr ** self.gamma
        else:
            ts = np.array([k[0] for k in self.knots])
            ws = np.array([k[1] for k in self.knots])
            if np.any(arr < ts[0]) or np.any(arr > ts[-1]):
                raise TabulatedRangeError(
                    f"argument outside tabulated range [{ts[0]}, {ts[-1]}]")
            out = np.interp(arr, ts, ws)
        if np.ndim(t) == 0:
            return float(out)
        return out

    def to_dict(self) -> dict:
        if self.family == LOG_SHIFT:
            return {"family": LOG_SHIFT, "a": self.a}
        if self.family == LOG_SQUARE:
            return {"family": LOG_SQUARE}
        if self.family == POWER:
            return {"family": POWER, "gamma": self.gamma}
        return {"family": TABULATED, "knots": [list(k) for k in self.knots]}

    @classmethod
    def from_dict(cls, cfg: dict) -> "OmegaProfile":
        family = cfg.get("family")
        if family == LOG_SHIFT:
            return cls.log_shift(cfg.get("a", 1.0))
        if family == LOG_SQUARE:
            return cls.log_square()
        if family == POWER:
            return cls.power(cfg["gamma"])
        if family == TABULATED:
            return cls.tabulated(cfg["knots"])
        raise DomainError(f"unknown omega family {family!r}")


def omega_eval(profile: OmegaProfile, t):
    """omega(t); rejects negative t and out-of-range tabulated arguments."""
    return profile(t)


@dataclass
class GridSpec:
    """Scan grids used by check_axioms."""

    t_max: float = 1e4
    n_linear: int = 160          # dense low range [0, 10]
    n_log: int = 160             # log-spaced [10, t_max]
    prop_e_c: float = 1.0        # window half-width factor C in (x - C w(x), x + C w(x))
    prop_e_xmin: float = 100.0
    n_prop_e: int = 120
    spot_samples: int = 64
    seed: int = 20240801

    def scan_points(self, cap: float) -> np.ndarray:
        hi = min(self.t_max, cap)
        lo_block = np.linspace(0.0, min(10.0, hi), self.n_linear)
        if hi > 10.0:
            hi_block = np.geomspace(10.0, hi, self.n_log)
            return np.unique(np.concatenate([lo_block, hi_block]))
        return np.unique(lo_block)


@dataclass
class ToleranceSpec:
    # Allowed additive subadditivity excess.  The log-square profile, which
    # must pass as subadditive-up-to-a-constant, has exact excess supremum
    # log(4/3) ~ 0.2877 (attained at s = t = 1/sqrt(2)), so the default sits
    # just above it.
    eps_add: float = 0.30
    quad_epsabs: float = 1e-10
    quad_epsrel: float = 1e-10
    mesh_agree: float = 1e-6     # W2 refinement stability requirement


@dataclass
class QuadSpec:
    epsabs: float = 1e-10
    epsrel: float = 1e-10
    limit: int = 200


@dataclass
class AxiomReport:
    subadd_excess: float
    subadd_argmax: tuple[float, float]
    subadd_strict: bool
    subadd_relaxed: bool
    w1_constant: float
    w1_argmax: float
    w2_integral: float
    w2_tail: float
    w2_tail_is_estimate: bool
    w2_refined_delta: float
    w2_finite: bool
    oscillation_worst: float
    oscillation_argmax: tuple[float, float]
    oscillation_ok: bool
    prop_c_constant: float
    prop_d_constant: float
    prop_d_eps: float

    def to_dict(self) -> dict:
        return {
            "subadd_excess": self.subadd_excess,
            "subadd_argmax": list(self.subadd_argmax),
            "subadd_strict": self.subadd_strict,
            "subadd_relaxed": self.subadd_relaxed,
            "w1_constant": self.w1_constant,
            "w1_argmax": self.w1_argmax,
            "w2_integral": self.w2_integral,
            "w2_tail": self.w2_tail,
            "w2_tail_is_estimate": self.w2_tail_is_estimate,
            "w2_refined_delta": self.w2_refined_delta,
            "w2_finite": self.w2_finite,
            "oscillation_worst": self.oscillation_worst,
            "oscillation_argmax": list(self.oscillation_argmax),
            "oscillation_ok": self.oscillation_ok,
            "prop_c_constant": self.prop_c_constant,
            "prop_d_constant": self.prop_d_constant,
            "prop_d_eps": self.prop_d_eps,
        }


@dataclass
class BeurlingWeight:
    """p(z) = |Im z| + omega(|z|); always >= 0, vanishing only where both
    Im z = 0 and omega(|z|) = 0."""

    omega: OmegaProfile
    axiom_report: AxiomReport | None = field(default=None, repr=False)

    def p(self, z):
        arr = np.asarray(z, dtype=complex)
        out = np.abs(arr.imag) + self.omega(np.abs(arr))
        if np.ndim(z) == 0:
            return float(out)
        return out

    def to_dict(self) -> dict:
        return self.omega.to_dict()

    @classmethod
    def from_dict(cls, cfg: dict) -> "BeurlingWeight":
        return cls(OmegaProfile.from_dict(cfg))


def p_eval(w: BeurlingWeight, z):
    """Weight value |Im z| + omega(|z|); symmetric under conjugation and z -> -z."""
    return w.p(z)


def _w2_tail_estimate(omega: OmegaProfile, t_cap: float, tol: ToleranceSpec):
    """First-order tail estimate past t_cap from the monotone subadditive
    extension omega(t) <= omega(t_cap) + omega(t - t_cap).

    Subadditivity alone cannot pin the tail rigorously (profiles as large as
    t/log t are subadditive yet non-integrable), so this is reported as an
    estimate, not a bound.
    """
    w_cap = omega(t_cap)
    head = w_cap * (math.pi / 2 - math.atan(t_cap))
    shifted, _ = adaptive_quad(
        lambda s: omega(min(s, t_cap)) / (1.0 + (s + t_cap) ** 2),
        0.0, t_cap, epsabs=tol.quad_epsabs, epsrel=tol.quad_epsrel)
    return head + shifted


def _w2_value(omega: OmegaProfile, t_cap: float, tol: ToleranceSpec):
    f = lambda t: omega(t) / (1.0 + t * t)
    main, _ = adaptive_quad(f, 0.0, t_cap, points=[1.0],
                            epsabs=tol.quad_epsabs, epsrel=tol.quad_epsrel)
    refined, _ = adaptive_quad(f, 0.0, t_cap, points=[1.0],
                               epsabs=tol.quad_epsabs / 100.0,
                               epsrel=tol.quad_epsrel / 100.0, limit=400)
    if math.isinf(omega.t_max):
        tail, _ = adaptive_quad(f, t_cap, math.inf,
                                epsabs=tol.quad_epsabs, epsrel=tol.quad_epsrel)
        estimate = False
    else:
        tail = _w2_tail_estimate(omega, t_cap, tol)
        estimate = True
    return main + tail, tail, estimate, abs(main - refined)


def check_axioms(w: BeurlingWeight, grid: GridSpec | None = None,
                 tol: ToleranceSpec | None = None) -> AxiomReport:
    """Scan the profile axioms on grids and record worst cases.

    Subadditivity is scanned over pairs from the grid; the ratio
    log(1+t)/omega(t) over t > 1; the integral of omega(t)/(1+t^2) by
    adaptive quadrature (exact improper integral for closed-form families,
    capped range plus tail estimate for tabulated ones); the oscillation
    ratio omega(y)/omega(x) over windows y in (x - C omega(x), x + C omega(x));
    and the disk comparability constants by random sampling.
    """
    grid = grid or GridSpec()
    tol = tol or ToleranceSpec()
    omega = w.omega
    if math.isinf(omega.t_max) and grid.t_max < 1e4:
        raise DomainError("axiom grid must cover [0, 1e4]")

    # subadditivity: pairs must stay evaluable, so cap at half the range
    cap_pair = omega.t_max / 2 if math.isfinite(omega.t_max) else grid.t_max / 2
    s = grid.scan_points(cap_pair)
    s = s[s > 0]
    ws = omega(s)
    sum_matrix = omega(s[:, None] + s[None, :])
    excess = sum_matrix - ws[:, None] - ws[None, :]
    idx = np.unravel_index(int(np.argmax(excess)), excess.shape)
    subadd_excess = float(excess[idx])
    subadd_argmax = (float(s[idx[0]]), float(s[idx[1]]))

    # growth floor: worst log(1+t)/omega(t) for t > 1
    t_hi = grid.scan_points(omega.t_max if math.isfinite(omega.t_max) else grid.t_max)
    t_hi = t_hi[t_hi > 1.0]
    w_hi = omega(t_hi)
    with np.errstate(divide="ignore"):
        ratios = np.where(w_hi > 0, np.log1p(t_hi) / np.where(w_hi > 0, w_hi, 1.0),
                          np.inf)
    k = int(np.argmax(ratios))
    w1_constant = float(ratios[k])
    w1_argmax = float(t_hi[k])

    t_cap = min(grid.t_max, omega.t_max)
    w2, w2_tail, w2_estimate, w2_delta = _w2_value(omega, t_cap, tol)
    if not math.isfinite(w2):
        raise NumericError("integral of omega(t)/(1+t^2) did not converge")

    # oscillation over windows around large x
    osc_worst = 1.0
    osc_arg = (grid.prop_e_xmin, grid.prop_e_xmin)
    x_hi = min(t_cap * 0.9, grid.t_max)
    if x_hi > grid.prop_e_xmin:
        xs = np.geomspace(grid.prop_e_xmin, x_hi, grid.n_prop_e)
        for x in xs:
            half = grid.prop_e_c * omega(x)
            ys = np.linspace(max(x - half, 0.0), min(x + half, t_cap), 41)
            wy = omega(ys)
            wx = omega(x)
            if wx <= 0:
                continue
            with np.errstate(divide="ignore"):
                r = np.where(wy > 0, np.maximum(wy / wx, wx / np.where(wy > 0, wy, 1.0)),
                             np.inf)
            j = int(np.argmax(r))
            if r[j] > osc_worst:
                osc_worst = float(r[j])
                osc_arg = (float(x), float(ys[j]))

    prop_c = _disk_constant(w, radius_factor=1.0, eps_mode=False,
                            n=grid.spot_samples, seed=grid.seed, t_cap=t_cap)
    prop_d = _disk_constant(w, radius_factor=0.1, eps_mode=True,
                            n=grid.spot_samples, seed=grid.seed + 1, t_cap=t_cap)

    report = AxiomReport(
        subadd_excess=subadd_excess,
        subadd_argmax=subadd_argmax,
        subadd_strict=subadd_excess <= 1e-12,
        subadd_relaxed=subadd_excess <= tol.eps_add,
        w1_constant=w1_constant,
        w1_argmax=w1_argmax,
        w2_integral=w2,
        w2_tail=w2_tail,
        w2_tail_is_estimate=w2_estimate,
        w2_refined_delta=w2_delta,
        w2_finite=math.isfinite(w2),
        oscillation_worst=osc_worst,
        oscillation_argmax=osc_arg,
        oscillation_ok=osc_worst <= 2.0,
        prop_c_constant=prop_c,
        prop_d_constant=prop_d,
        prop_d_eps=0.1,
    )
    w.axiom_report = report
    return report


def _disk_constant(w: BeurlingWeight, radius_factor: float, eps_mode: bool,
                   n: int, seed: int, t_cap: float) -> float:
    """Worst p(zeta)/p(z) over sampled zeta in D(z, radius_factor * p(.))."""
    rng = np.random.default_rng(seed)
    hi = min(t_cap / 4 if math.isfinite(t_cap) else 1e3, 1e3)
    radii = np.geomspace(1.0, max(hi, 2.0), n)
    angles = rng.uniform(0.0, 2 * math.pi, n)
    zs = radii * np.exp(1j * angles)
    worst = 1.0
    for z in zs:
        pz = w.p(z)
        if pz <= 0:
            continue
        r = radius_factor * pz
        offs = r * np.sqrt(rng.uniform(0, 1, 16)) * np.exp(1j * rng.uniform(0, 2 * math.pi, 16))
        zetas = z + offs
        if math.isfinite(t_cap):
            zetas = zetas[np.abs(zetas) <= t_cap]
        if zetas.size == 0:
            continue
        p_zeta = w.p(zetas)
        if eps_mode:
            # property (d): only pairs with |z - zeta| <= eps p(zeta) count
            keep = np.abs(zetas - z) <= radius_factor * p_zeta
            p_zeta = p_zeta[keep]
            if p_zeta.size == 0:
                continue
        worst = max(worst, float(np.max(p_zeta)) / pz)
    return worst


def estimate_disk_constant(w: BeurlingWeight, eps: float, n: int = 64,
                           seed: int = 7) -> float:
    """C(eps) with p(zeta) <= C(eps) p(z) whenever |z - zeta| <= eps p(zeta).

    Empirical sampling estimate; tends to 1 as eps tends to 0.
    """
    cap = w.omega.t_max
    return _disk_constant(w, radius_factor=eps, eps_mode=True, n=n, seed=seed,
                          t_cap=cap if math.isfinite(cap) else math.inf)


def poisson_transform(w: BeurlingWeight, z: complex, quad: QuadSpec | None = None) -> float:
    """Harmonic extension u(z) = (1/pi) * int y omega(|t|) / ((x-t)^2 + y^2) dt.

    Normalized so that u has boundary value omega(|x|) on the real axis.
    For tabulated profiles the integral is restricted to the knot range
    (evaluation outside it is forbidden); closed-form families integrate
    over the whole line.
    """
    quad = quad or QuadSpec()
    x, y = z.real, z.imag
    if not y > 0:
        raise DomainError("poisson_transform requires Im z > 0")
    omega = w.omega

    def f(t):
        return y * omega(abs(t)) / ((x - t) ** 2 + y * y)

    cap = omega.t_max
    if math.isfinite(cap):
        lo, hi = -cap, cap
    else:
        lo, hi = -math.inf, math.inf
    breaks = sorted({0.0, x})
    edges = [lo] + [b for b in breaks if lo < b < hi] + [hi]
    total = 0.0
    for a, b in zip(edges, edges[1:]):
        if a == b:
            continue
        val, _ = adaptive_quad(f, a, b, epsabs=quad.epsabs,
                               epsrel=quad.epsrel, limit=quad.limit)
        total += val
    return total / math.pi


@dataclass
class PoissonBoundReport:
    a_fit: float
    b_fit: float
    max_deviation: float
    worst_point: complex
    n_samples: int

    def to_dict(self) -> dict:
        return {
            "a_fit": self.a_fit,
            "b_fit": self.b_fit,
            "max_deviation": self.max_deviation,
            "worst_point": [self.worst_point.real, self.worst_point.imag],
            "n_samples": self.n_samples,
        }


def verify_poisson_bound(w: BeurlingWeight, samples,
                         quad: QuadSpec | None = None) -> PoissonBoundReport:
    """Fit the smallest (A, B) with |u(z) - omega(|z|)| <= A + B Im z on samples.

    B is the non-negative least-squares slope of deviation against height
    (zero when all samples share one height); A then closes the bound
    exactly at the binding sample.  Report-only, never raises on content.
    """
    zs = [complex(z) for z in samples]
    if any(z.imag <= 0 for z in zs):
        raise DomainError("all samples must lie in the open upper half-plane")
    ys = np.array([z.imag for z in zs])
    devs = np.array([abs(poisson_transform(w, z, quad) - w.omega(abs(z)))
                     for z in zs])
    if np.ptp(ys) > 0:
        slope = float(np.polyfit(ys, devs, 1)[0])
        b_fit = max(0.0, slope)
    else:
        b_fit = 0.0
    a_fit = max(0.0, float(np.max(devs - b_fit * ys))) if len(zs) else 0.0
    k = int(np.argmax(devs)) if len(zs) else 0
    return PoissonBoundReport(
        a_fit=a_fit, b_fit=b_fit,
        max_deviation=float(devs[k]) if len(zs) else 0.0,
        worst_point=zs[k] if len(zs) else 0j,
        n_samples=len(zs))
