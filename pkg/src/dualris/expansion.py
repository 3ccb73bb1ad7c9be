"""
Pattern-preserving expansion of a dual-polarized configuration.

A configuration of ``M`` elements per polarization and a Golay pair
``(u, v)`` of length ``N`` give a configuration of ``2 M N`` elements per
polarization whose array factor is ``2 N`` times the original at every
angle. The expanded surface is one contiguous ULA at the original spacing:
first the ``u`` sub-surface, then the ``v`` sub-surface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .array import ArrayGeometry, DualPolConfig, angle_grid, equiv_response, pdaf, FLATNESS_GRID
from .errors import InvalidArgument, VerificationError
from .sequences import GolayPair, PhaseVector, is_golay

EXPANSION_TOL = 1e-9


@dataclass(frozen=True)
class ExpandedConfig:
    config: DualPolConfig
    primary_len: int
    golay_len: int

    @property
    def scale(self) -> int:
        """Array-factor gain over the primary."""
        return 2 * self.golay_len


@dataclass(frozen=True)
class ExpansionReport:
    grid_size: int
    max_ratio_deviation: float
    worst_angle: float
    max_cross_term: float
    expected_scale: int

    def as_dict(self) -> dict:
        return {
            "grid_size": self.grid_size,
            "max_ratio_deviation": self.max_ratio_deviation,
            "worst_angle_deg": float(np.degrees(self.worst_angle)),
            "max_cross_term": self.max_cross_term,
            "expected_scale": self.expected_scale,
        }


def exchange(x):
    """Exchange-matrix product: order reversal along the last axis."""
    return np.asarray(x)[..., ::-1]


def expand(primary: DualPolConfig, pair: GolayPair) -> ExpandedConfig:
    if not isinstance(primary, DualPolConfig):
        raise InvalidArgument("primary must be a DualPolConfig")
    if is_golay(pair.u, pair.v) is None:
        raise InvalidArgument("expander is not a Golay complementary pair")
    h, v = primary.phi_h.values, primary.phi_v.values
    u, w = pair.u.values, pair.v.values
    new_h = np.concatenate([np.kron(u, h), -np.kron(w, exchange(np.conj(v)))])
    new_v = np.concatenate([np.kron(u, v), np.kron(w, exchange(np.conj(h)))])
    return ExpandedConfig(
        DualPolConfig(PhaseVector(new_h), PhaseVector(new_v)),
        primary_len=primary.m_per_pol,
        golay_len=pair.length,
    )


def cross_term(expanded: ExpandedConfig, geom: ArrayGeometry, departure):
    """``a1^H (conj(h1) h2^T + conj(v1) v2^T) a2`` between the two sub-surfaces.

    ``geom`` is the expanded geometry. Vanishes identically for a valid
    expansion, which is what makes the two sub-surface patterns add.
    """
    half = expanded.config.m_per_pol // 2
    a = equiv_response(geom, departure, "H")
    a1, a2 = a[..., :half], a[..., half:]
    h, v = expanded.config.phi_h.values, expanded.config.phi_v.values
    return (np.conj(a1 @ h[:half]) * (a2 @ h[half:])
            + np.conj(a1 @ v[:half]) * (a2 @ v[half:]))


def verify_expansion(
    primary: DualPolConfig,
    pair: GolayPair,
    expanded: ExpandedConfig,
    geom: ArrayGeometry | None = None,
    grid_size: int = FLATNESS_GRID,
    tol: float = EXPANSION_TOL,
) -> ExpansionReport:
    """Check ``A_expanded = 2 N A_primary`` and the cross-term identity on a grid.

    ``geom`` supplies spacing and incident angle (its element count is
    ignored). Raises :class:`VerificationError` with the worst angle on
    failure.
    """
    m, n = primary.m_per_pol, pair.length
    if expanded.config.m_per_pol != 2 * m * n:
        raise VerificationError(
            f"expanded config has {expanded.config.m_per_pol} elements per "
            f"polarization, expected {2 * m * n}"
        )
    base = geom or ArrayGeometry(m)
    g_p, g_e = base.resized(m), base.resized(2 * m * n)
    phi = angle_grid(grid_size)
    a_p = pdaf(primary, g_p, phi)
    a_e = pdaf(expanded.config, g_e, phi)
    # relative to the flat-pattern level so nulls of the primary are harmless
    scale = 2 * n
    dev = np.abs(a_e - scale * a_p) / (scale * np.maximum(a_p, np.mean(a_p)))
    worst = int(np.argmax(dev))
    cross = np.abs(cross_term(expanded, g_e, phi))
    report = ExpansionReport(
        grid_size=grid_size,
        max_ratio_deviation=float(dev[worst]),
        worst_angle=float(phi[worst]),
        max_cross_term=float(np.max(cross)),
        expected_scale=scale,
    )
    if report.max_ratio_deviation > tol:
        raise VerificationError(
            f"expanded pattern deviates from {scale}x primary by "
            f"{report.max_ratio_deviation:.3g} (relative) at "
            f"{np.degrees(report.worst_angle):.3f} deg",
            worst=report.worst_angle,
        )
    if report.max_cross_term > tol * 2 * m * n:
        bad = float(phi[int(np.argmax(cross))])
        raise VerificationError(
            f"sub-surface cross term {report.max_cross_term:.3g} at "
            f"{np.degrees(bad):.3f} deg",
            worst=bad,
        )
    return report
