"""
Dual-polarized ULA surface: geometry, equivalent responses and patterns.

The surface has ``M`` elements per polarization, H and V interleaved at
spacing ``spacing_wl`` (wavelengths), so same-polarization neighbours sit
two spacings apart. Angles are radians throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import InvalidArgument
from .sequences import GolayPair, PhaseVector, as_phase_vector

FLATNESS_GRID = 2048


@dataclass(frozen=True)
class ArrayGeometry:
    m_per_pol: int
    spacing_wl: float = 0.5
    incident_angle: float = np.pi / 3

    def __post_init__(self):
        if int(self.m_per_pol) != self.m_per_pol or self.m_per_pol < 1:
            raise InvalidArgument(f"m_per_pol must be a positive integer, got {self.m_per_pol}")
        if not self.spacing_wl > 0:
            raise InvalidArgument("spacing_wl must be positive")
        if abs(self.incident_angle) > np.pi / 2 + 1e-12:
            raise InvalidArgument("incident_angle must lie in [-pi/2, pi/2]")

    @property
    def total_elements(self) -> int:
        return 2 * self.m_per_pol

    def resized(self, m_per_pol: int) -> ArrayGeometry:
        return ArrayGeometry(m_per_pol, self.spacing_wl, self.incident_angle)


@dataclass(frozen=True)
class DualPolConfig:
    """Phase configuration pair ``(phi_h, phi_v)``."""

    phi_h: PhaseVector
    phi_v: PhaseVector

    def __post_init__(self):
        object.__setattr__(self, "phi_h", as_phase_vector(self.phi_h))
        object.__setattr__(self, "phi_v", as_phase_vector(self.phi_v))
        if len(self.phi_h) != len(self.phi_v):
            raise InvalidArgument(
                f"polarization lengths differ: {len(self.phi_h)} vs {len(self.phi_v)}"
            )

    @property
    def m_per_pol(self) -> int:
        return len(self.phi_h)

    def rotated(self, theta: float) -> DualPolConfig:
        """Common phase rotation of both polarizations."""
        w = np.exp(1j * theta)
        return DualPolConfig(PhaseVector(w * self.phi_h.values), PhaseVector(w * self.phi_v.values))


@dataclass(frozen=True)
class ElementPattern:
    """3GPP-style element power pattern, parabolic in angle with a floor."""

    peak_gain_dbi: float = 8.0
    boresight: float = 0.0
    width: float = np.pi / 2
    floor_db: float = 30.0

    def __post_init__(self):
        if not self.width > 0:
            raise InvalidArgument("pattern width must be positive")
        if not self.floor_db > 0:
            raise InvalidArgument("pattern floor_db must be positive")


def relative_phase(geom: ArrayGeometry, departure):
    """Phase step ``2 pi d (sin(incident) + sin(departure))`` per spacing."""
    return 2 * np.pi * geom.spacing_wl * (np.sin(geom.incident_angle) + np.sin(departure))


def equiv_response(geom: ArrayGeometry, departure, polarization: Literal["H", "V"] = "H"):
    """Equivalent (incident times departure) response for one polarization.

    Returns shape ``(M,)`` for scalar ``departure`` or ``(..., M)`` otherwise.
    """
    psi = np.asarray(relative_phase(geom, departure))
    m = np.arange(geom.m_per_pol)
    a_h = np.exp(-2j * np.multiply.outer(psi, m))
    if polarization == "H":
        return a_h
    if polarization == "V":
        return np.exp(-1j * psi)[..., None] * a_h
    raise InvalidArgument(f"polarization must be 'H' or 'V', got {polarization!r}")


def _check_dims(config: DualPolConfig, geom: ArrayGeometry):
    if config.m_per_pol != geom.m_per_pol:
        raise InvalidArgument(
            f"config has {config.m_per_pol} elements per polarization, "
            f"geometry has {geom.m_per_pol}"
        )


def pdaf(config: DualPolConfig, geom: ArrayGeometry, departure):
    """Power-domain array factor ``|phi_H^T a_H|^2 + |phi_V^T a_V|^2``."""
    _check_dims(config, geom)
    a_h = equiv_response(geom, departure, "H")
    a_v = equiv_response(geom, departure, "V")
    return np.abs(a_h @ config.phi_h.values) ** 2 + np.abs(a_v @ config.phi_v.values) ** 2


def element_gain_db(pattern: ElementPattern, departure):
    ratio = (np.asarray(departure, dtype=float) - pattern.boresight) / pattern.width
    return pattern.peak_gain_dbi - np.minimum(12.0 * ratio**2, pattern.floor_db)


def to_db(x):
    """``10 log10(x)``, with ``-inf`` for exact zeros (a null is not an error)."""
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(x)


def element_pattern_db(geom: ArrayGeometry, pattern: ElementPattern, departure):
    """Pattern of one isolated element, incident and departure gains combined."""
    return element_gain_db(pattern, geom.incident_angle) + element_gain_db(pattern, departure)


def radiation_pattern_db(config, geom, pattern, departure):
    """Total pattern ``10 log10 A + G0(incident) + G0(departure)`` in dB."""
    return to_db(pdaf(config, geom, departure)) + element_pattern_db(geom, pattern, departure)


def angle_grid(n: int = FLATNESS_GRID):
    return np.linspace(-np.pi / 2, np.pi / 2, n)


def config_broad(pair: GolayPair) -> DualPolConfig:
    return DualPolConfig(pair.u, pair.v)


def config_steered(geom: ArrayGeometry, target: float) -> DualPolConfig:
    """Maximum-ratio configuration towards ``target``, ``pdaf(target) = 2 M^2``."""
    if abs(target) > np.pi / 2 + 1e-12:
        raise InvalidArgument("target must lie in [-pi/2, pi/2]")
    psi = relative_phase(geom, target)
    m = np.arange(geom.m_per_pol)
    return DualPolConfig(
        PhaseVector.from_phases(2 * m * psi),
        PhaseVector.from_phases((2 * m + 1) * psi),
    )


def config_random(geom: ArrayGeometry, rng_seed) -> DualPolConfig:
    """i.i.d. uniform phases on ``[0, 2 pi)``; ``rng_seed`` is anything
    :func:`numpy.random.default_rng` accepts except ``None``."""
    if rng_seed is None:
        raise InvalidArgument("config_random needs an explicit seed")
    rng = np.random.default_rng(rng_seed)
    phases = rng.uniform(0.0, 2 * np.pi, size=(2, geom.m_per_pol))
    return DualPolConfig(PhaseVector.from_phases(phases[0]), PhaseVector.from_phases(phases[1]))
