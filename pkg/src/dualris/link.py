"""Line-of-sight link budget through the surface: path loss, SNR and SE."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .array import ArrayGeometry, DualPolConfig, ElementPattern, element_gain_db, pdaf, to_db
from .errors import InvalidArgument


@dataclass(frozen=True)
class LinkBudget:
    tx_power_dbm: float = 47.0
    noise_dbm: float = -90.0
    tx_ris_distance_m: float = 50.0
    pathloss_intercept_db: float = -37.5
    pathloss_slope: float = 22.0

    def __post_init__(self):
        if not self.tx_ris_distance_m > 0:
            raise InvalidArgument("tx_ris_distance_m must be positive")
        if not self.pathloss_slope > 0:
            raise InvalidArgument("pathloss_slope must be positive")


@dataclass(frozen=True)
class UserSample:
    """User location seen from the surface; fields may also be equal-shape arrays."""

    distance_m: float
    departure: float


def pathloss_db(budget: LinkBudget, distance_m):
    d = np.asarray(distance_m, dtype=float)
    if np.any(~(d > 0)):
        raise InvalidArgument("distance must be positive")
    return budget.pathloss_intercept_db - budget.pathloss_slope * np.log10(d)


def snr_db(budget, geom, pattern, config, user: UserSample):
    """End-to-end SNR in dB; ``-inf`` where the array factor has a null.

    Terminal antenna gains are taken as 0 dBi.
    """
    return (
        budget.tx_power_dbm
        - budget.noise_dbm
        + pathloss_db(budget, budget.tx_ris_distance_m)
        + pathloss_db(budget, user.distance_m)
        + element_gain_db(pattern, geom.incident_angle)
        + element_gain_db(pattern, user.departure)
        + to_db(pdaf(config, geom, user.departure))
    )


def snr_linear(budget: LinkBudget, geom: ArrayGeometry, pattern: ElementPattern,
               config: DualPolConfig, user: UserSample):
    return 10.0 ** (snr_db(budget, geom, pattern, config, user) / 10.0)


def spectral_efficiency(budget, geom, pattern, config, user):
    """``log2(1 + SNR)`` in bps/Hz."""
    return np.log2(1.0 + snr_linear(budget, geom, pattern, config, user))
