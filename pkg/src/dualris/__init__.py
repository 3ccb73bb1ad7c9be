"""Broad-beam configuration of dual-polarized reconfigurable surfaces."""

from .array import (
    ArrayGeometry,
    DualPolConfig,
    ElementPattern,
    config_broad,
    config_random,
    config_steered,
    element_gain_db,
    element_pattern_db,
    equiv_response,
    pdaf,
    radiation_pattern_db,
    relative_phase,
)
from .errors import InvalidArgument, NotFound, VerificationError
from .expansion import ExpandedConfig, expand, verify_expansion
from .link import LinkBudget, UserSample, pathloss_db, snr_linear, spectral_efficiency
from .montecarlo import CdfCurve, Scenario, run, sample_users
from .sequences import (
    AcfTable,
    GolayPair,
    PhaseVector,
    acf,
    golay_concat,
    golay_of_length,
    golay_product,
    golay_seed,
    is_golay,
    psd,
    sum_acf,
)

__version__ = "0.1.0"
