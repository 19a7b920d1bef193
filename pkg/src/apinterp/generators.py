"""Parametric point-configuration families used by tests and sweeps."""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .variety import Variety

INTEGER_LATTICE = "integer_lattice"
HORIZONTAL_LINE = "horizontal_line"
DYADIC_ANGLE = "dyadic_angle"
PERTURBED_LATTICE = "perturbed_lattice"
STRIP_RANDOM = "strip_random"
GEOMETRIC_RAY = "geometric_ray"

_FAMILIES = (INTEGER_LATTICE, HORIZONTAL_LINE, DYADIC_ANGLE,
             PERTURBED_LATTICE, STRIP_RANDOM, GEOMETRIC_RAY)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")

    def to_dict(self) -> dict:
        return {"family": self.family, **self.params}

    @classmethod
    def from_dict(cls, cfg: dict) -> "FamilySpec":
        cfg = dict(cfg)
        family = cfg.pop("family", None)
        return cls(family, cfg)


def generate(spec: FamilySpec) -> Variety:
    """Deterministic construction; the same spec (and seed) gives the same
    variety bit for bit."""
    fn = {
        INTEGER_LATTICE: _integer_lattice,
        HORIZONTAL_LINE: _horizontal_line,
        DYADIC_ANGLE: _dyadic_angle,
        PERTURBED_LATTICE: _perturbed_lattice,
        STRIP_RANDOM: _strip_random,
        GEOMETRIC_RAY: _geometric_ray,
    }[spec.family]
    return fn(**spec.params)


def _integer_lattice(mult: int = 1, window: float = 100.0) -> Variety:
    ks = np.arange(-math.floor(window), math.floor(window) + 1)
    return Variety([(complex(k, 0.0), mult) for k in ks], window_radius=window)


def _horizontal_line(height: float = 1.0, spacing: float = 1.0, mult: int = 1,
                     extent: float = 100.0) -> Variety:
    if spacing <= 0:
        raise DomainError("spacing must be positive")
    n = math.floor(extent / spacing)
    ks = np.arange(-n, n + 1)
    pts = [(complex(k * spacing, height), mult) for k in ks]
    return Variety(pts, window_radius=math.hypot(extent, height) * 1.01)


def _dyadic_angle(n_min: int = 1, n_max: int = 10) -> Variety:
    """Rows of 2^n points at height 2^n, spacing two, strictly inside the
    angle |Re z| < Im z.  Per-row real parts are the cell centers
    -2^n + 1, -2^n + 3, ..., 2^n - 1."""
    if not 1 <= n_min <= n_max:
        raise DomainError("need 1 <= n_min <= n_max")
    if n_max > 20:
        raise DomainError("n_max is capped at 20")
    pts = []
    for n in range(n_min, n_max + 1):
        h = float(2 ** n)
        res = np.arange(-h + 1.0, h, 2.0)
        pts.extend((complex(x, h), 1) for x in res)
    return Variety(pts, window_radius=float(2 ** (n_max + 1)))


def _perturbed_lattice(amplitude: float = 0.25, seed: int = 0,
                       half_count: int = 100) -> Variety:
    if not 0 <= amplitude < 0.5:
        raise DomainError("amplitude must lie in [0, 1/2)")
    rng = np.random.default_rng(seed)
    ks = np.arange(-half_count, half_count + 1)
    jitter = amplitude * (rng.uniform(-1, 1, ks.size)
                          + 1j * rng.uniform(-1, 1, ks.size))
    pts = [(complex(k) + j, 1) for k, j in zip(ks, jitter)]
    return Variety(pts, window_radius=half_count + 1.0)


def _strip_random(count: int = 200, strip_height: float = 1.0, seed: int = 0,
                  half_width: float = 100.0) -> Variety:
    rng = np.random.default_rng(seed)
    re = rng.uniform(-half_width, half_width, count)
    im = rng.uniform(-strip_height, strip_height, count)
    pts = [(complex(a, b), 1) for a, b in zip(re, im)]
    return Variety(pts, window_radius=math.hypot(half_width, strip_height) * 1.01)


def _geometric_ray(ratio: float = 0.5, count: int = 20) -> Variety:
    """Collapsing ray lambda_k = k * ratio^k, a family whose nearest-pair
    distances shrink geometrically while the weight stays bounded."""
    if not 0.0 < ratio < 1.0:
        raise DomainError("ratio must lie in (0, 1)")
    if count < 1:
        raise DomainError("count must be positive")
    pts = [(complex(k * ratio ** k, 0.0), 1) for k in range(1, count + 1)]
    window = 2.0 * max(p[0].real for p in pts)
    return Variety(pts, window_radius=window)


def expected_profile(spec: FamilySpec) -> dict:
    """Machine-readable expectations, where the family has documented ones."""
    if spec.family == DYADIC_ANGLE:
        return {
            "condition_a": "bounded",
            "condition_b": "divergent",
            "balayage_increment_at_0": math.pi / 4,
        }
    if spec.family == INTEGER_LATTICE:
        return {
            "condition_a": "bounded",
            "condition_a_limit_constant": 2.0,
            "condition_b": "zero",
        }
    return {}


def dyadic_row(n: int) -> Variety:
    """A single height-2^n row of the dyadic angle family."""
    return _dyadic_angle(n_min=n, n_max=n)
