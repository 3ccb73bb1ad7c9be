"""
Coverage experiment: spectral-efficiency CDF over randomly placed users.

Every user's location comes from its own generator derived from
``(seed, user index)``, and the surface's random configuration from
``(seed, "config")``. Work can therefore be split over any number of
threads without changing a single bit of the output.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .array import (
    ArrayGeometry,
    DualPolConfig,
    ElementPattern,
    config_broad,
    config_random,
    config_steered,
    element_gain_db,
)
from .errors import InvalidArgument
from .link import LinkBudget, UserSample, pathloss_db, spectral_efficiency
from .sequences import golay_of_length

Scheme = Literal["broad", "closest", "random"]
SCHEMES = ("broad", "closest", "random")

_USER_STREAM = 0
_CONFIG_STREAM = 1


@dataclass(frozen=True)
class Scenario:
    geom: ArrayGeometry = field(default_factory=lambda: ArrayGeometry(60))
    pattern: ElementPattern = field(default_factory=ElementPattern)
    budget: LinkBudget = field(default_factory=LinkBudget)
    k_users: int = 1000
    dist_range_m: tuple[float, float] = (50.0, 100.0)
    angle_range: tuple[float, float] = (-np.pi / 2, np.pi / 6)
    scheme: Scheme = "broad"
    seed: int = 0
    # closest-UE steering angle; None picks the best-channel sampled user
    target: float | None = None

    def __post_init__(self):
        if int(self.k_users) != self.k_users or self.k_users < 1:
            raise InvalidArgument("k_users must be a positive integer")
        lo, hi = self.dist_range_m
        if not 0 < lo <= hi:
            raise InvalidArgument("dist_range_m must satisfy 0 < low <= high")
        lo, hi = self.angle_range
        if not -np.pi / 2 - 1e-12 <= lo <= hi <= np.pi / 2 + 1e-12:
            raise InvalidArgument("angle_range must be ordered and inside [-pi/2, pi/2]")
        if self.scheme not in SCHEMES:
            raise InvalidArgument(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise InvalidArgument("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class CdfCurve:
    sorted_values: np.ndarray
    fractions: np.ndarray

    @classmethod
    def from_samples(cls, samples) -> CdfCurve:
        x = np.sort(np.asarray(samples, dtype=float), kind="stable")
        k = x.size
        return cls(x, np.arange(1, k + 1) / k)

    def fraction_above(self, level: float) -> float:
        return float(np.mean(self.sorted_values > level))

    def fraction_below(self, level: float) -> float:
        return float(np.mean(self.sorted_values < level))

    def percentile(self, q: float) -> float:
        """Value at CDF fraction ``q`` in [0, 1], linearly interpolated."""
        return float(np.interp(q, self.fractions, self.sorted_values))

    @property
    def max(self) -> float:
        return float(self.sorted_values[-1])


def _threads(threads):
    if threads is None:
        threads = int(os.environ.get("RIS_THREADS", os.cpu_count() or 1))
    return max(1, int(threads))


def _draw_users(scenario: Scenario, ks) -> tuple[np.ndarray, np.ndarray]:
    d = np.empty(len(ks))
    phi = np.empty(len(ks))
    (dlo, dhi), (alo, ahi) = scenario.dist_range_m, scenario.angle_range
    for i, k in enumerate(ks):
        ss = np.random.SeedSequence(scenario.seed, spawn_key=(_USER_STREAM, int(k)))
        rng = np.random.default_rng(ss)
        d[i] = rng.uniform(dlo, dhi)
        phi[i] = rng.uniform(alo, ahi)
    return d, phi


def _chunks(n, parts):
    edges = np.linspace(0, n, min(parts, n) + 1).astype(int)
    return [range(a, b) for a, b in zip(edges[:-1], edges[1:])]


def _parallel(fn, n, threads):
    chunks = _chunks(n, _threads(threads))
    if len(chunks) == 1:
        return [fn(chunks[0])]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        return list(pool.map(fn, chunks))


def sample_user_arrays(scenario: Scenario, threads=None) -> UserSample:
    """All users as one :class:`UserSample` holding arrays."""
    parts = _parallel(lambda ks: _draw_users(scenario, ks), scenario.k_users, threads)
    return UserSample(np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts]))


def sample_users(scenario: Scenario, threads=None) -> list[UserSample]:
    users = sample_user_arrays(scenario, threads)
    return [UserSample(float(d), float(p)) for d, p in zip(users.distance_m, users.departure)]


def closest_target(scenario: Scenario, users: UserSample) -> float:
    """Departure angle of the user with the strongest surface-to-user channel.

    Ties go to the user nearest broadside.
    """
    quality = pathloss_db(scenario.budget, users.distance_m) + element_gain_db(
        scenario.pattern, users.departure
    )
    order = np.lexsort((np.abs(users.departure), -quality))
    return float(users.departure[order[0]])


def build_config(scenario: Scenario, users: UserSample | None = None) -> DualPolConfig:
    geom = scenario.geom
    if scenario.scheme == "broad":
        # raises InvalidArgument listing admissible sizes
        return config_broad(golay_of_length(geom.m_per_pol))
    if scenario.scheme == "closest":
        target = scenario.target
        if target is None:
            target = closest_target(scenario, users if users is not None else sample_user_arrays(scenario))
        return config_steered(geom, target)
    ss = np.random.SeedSequence(scenario.seed, spawn_key=(_CONFIG_STREAM,))
    return config_random(geom, ss)


def evaluate(scenario: Scenario, threads=None) -> np.ndarray:
    """Per-user spectral efficiency, in user-index order."""
    users = sample_user_arrays(scenario, threads)
    config = build_config(scenario, users)

    def se(ks):
        sl = slice(ks.start, ks.stop)
        chunk = UserSample(users.distance_m[sl], users.departure[sl])
        return spectral_efficiency(scenario.budget, scenario.geom, scenario.pattern, config, chunk)

    return np.concatenate(_parallel(se, scenario.k_users, threads))


def run(scenario: Scenario, threads=None) -> CdfCurve:
    return CdfCurve.from_samples(evaluate(scenario, threads))


def summarize(scheme: str, curve: CdfCurve) -> dict:
    return {
        "scheme": scheme,
        "fraction_above_2": curve.fraction_above(2.0),
        "fraction_below_1": curve.fraction_below(1.0),
        "max_se": curve.max,
        "median_se": curve.percentile(0.5),
    }
