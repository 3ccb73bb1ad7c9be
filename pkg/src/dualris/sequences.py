"""
Unit-modulus sequence algebra.

Aperiodic autocorrelation, spatial power spectral density, Golay
complementary pair verification, and the small library of pairs used to
configure the surface (built-in seeds plus the doubling and product
constructions that grow them).

Conventions
-----------
For a length-``M`` sequence ``x`` the aperiodic autocorrelation is

    R[tau] = sum_m x[m] * conj(x[m + tau])          tau = 0 .. M-1
    R[tau] = sum_m x[m - tau] * conj(x[m])          tau = -M+1 .. -1

and the spectral density at relative phase ``psi`` is
``|sum_m x[m] exp(-j 2 m psi)|**2`` (zero-based ``m``), i.e. the DTFT at
normalized frequency ``2 psi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InvalidArgument, NotFound, VerificationError

UNIMODULAR_TOL = 1e-12
GOLAY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PhaseVector:
    """Unimodular complex sequence, one polarization's phase configuration.

    Holds both the phases (radians) and the complex entries. The phases are
    what gets serialized, so they are kept verbatim when the vector was built
    from phases.
    """

    values: np.ndarray
    phases: np.ndarray = field(default=None)

    def __post_init__(self):
        values = np.array(self.values, dtype=complex).reshape(-1)
        if values.size == 0:
            raise InvalidArgument("phase vector must be nonempty")
        if not np.all(np.isfinite(values)):
            raise InvalidArgument("phase vector has non-finite entries")
        dev = np.max(np.abs(np.abs(values) - 1.0))
        if dev > UNIMODULAR_TOL:
            bad = int(np.argmax(np.abs(np.abs(values) - 1.0)))
            raise InvalidArgument(
                f"entry {bad} has modulus {abs(values[bad]):.17g}, expected 1"
            )
        if self.phases is None:
            phases = np.angle(values)
        else:
            phases = np.array(self.phases, dtype=float).reshape(-1)
            if phases.shape != values.shape:
                raise InvalidArgument("phases and values differ in length")
        values.flags.writeable = False
        phases.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "phases", phases)

    @classmethod
    def from_phases(cls, phases) -> PhaseVector:
        phases = np.array(phases, dtype=float).reshape(-1)
        if phases.size and not np.all(np.isfinite(phases)):
            raise InvalidArgument("phases must be finite")
        return cls(np.exp(1j * phases), phases)

    def __len__(self):
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __neg__(self):
        return PhaseVector(-self.values)

    def __repr__(self):
        return f"PhaseVector(phases={np.round(self.phases, 6).tolist()})"


def as_phase_vector(x) -> PhaseVector:
    """Coerce complex array-likes to PhaseVector (validating modulus)."""
    if isinstance(x, PhaseVector):
        return x
    return PhaseVector(x)


@dataclass(frozen=True)
class AcfTable:
    """Aperiodic autocorrelation over lags ``-M+1 .. M-1``."""

    lags: np.ndarray
    values: np.ndarray

    @property
    def length(self) -> int:
        return (self.lags.size + 1) // 2

    def __getitem__(self, tau: int) -> complex:
        m = self.length
        if abs(tau) >= m:
            return 0j
        return complex(self.values[tau + m - 1])

    def __add__(self, other: AcfTable) -> AcfTable:
        if self.lags.size != other.lags.size:
            raise InvalidArgument("cannot add autocorrelations of different lengths")
        return AcfTable(self.lags, self.values + other.values)

    def offpeak_max(self) -> float:
        """Largest magnitude over all lags other than zero."""
        m = self.length
        if m == 1:
            return 0.0
        side = np.concatenate([self.values[: m - 1], self.values[m:]])
        return float(np.max(np.abs(side)))


@dataclass(frozen=True)
class GolayPair:
    """Verified Golay complementary pair ``(u, v)``."""

    u: PhaseVector
    v: PhaseVector
    residual: float = 0.0

    @property
    def length(self) -> int:
        return len(self.u)


def acf(v) -> AcfTable:
    """Aperiodic autocorrelation ``R[tau]`` for every lag with support.

    Both the positive and negative branches are evaluated directly, not by
    conjugate mirroring, so conjugate symmetry is a checkable property.
    """
    x = as_phase_vector(v).values
    m = x.size
    out = np.empty(2 * m - 1, dtype=complex)
    for tau in range(m):
        out[m - 1 + tau] = np.sum(x[: m - tau] * np.conj(x[tau:]))
    for tau in range(1, m):
        # R[-tau] = sum_m x[m + tau] conj(x[m])
        out[m - 1 - tau] = np.sum(x[tau:] * np.conj(x[: m - tau]))
    return AcfTable(np.arange(-m + 1, m), out)


def sum_acf(u, v) -> AcfTable:
    u, v = as_phase_vector(u), as_phase_vector(v)
    if len(u) != len(v):
        raise InvalidArgument(f"length mismatch: {len(u)} vs {len(v)}")
    return acf(u) + acf(v)


def golay_residual(u, v) -> float:
    """max over lags of ``|R_u + R_v - 2M delta|``."""
    s = sum_acf(u, v)
    m = s.length
    return max(s.offpeak_max(), abs(s[0] - 2 * m))


def is_golay(u, v, tol: float = GOLAY_TOL) -> GolayPair | None:
    """Return the pair with its residual if complementary, else ``None``."""
    if not tol > 0:
        raise InvalidArgument("tol must be positive")
    u, v = as_phase_vector(u), as_phase_vector(v)
    s = sum_acf(u, v)
    side = s.offpeak_max()
    peak = abs(s[0] - 2 * len(u))
    if side <= tol and peak <= tol:
        return GolayPair(u, v, max(side, peak))
    return None


def psd(v, psi):
    """Spectral density ``|sum_m v[m] exp(-j 2 m psi)|**2``.

    ``psi`` may be a scalar or an array; the result has the same shape.
    """
    x = as_phase_vector(v).values
    psi = np.asarray(psi, dtype=float)
    m = np.arange(x.size)
    kernel = np.exp(-2j * np.multiply.outer(psi, m))
    return np.abs(kernel @ x) ** 2


def psd_from_acf(table: AcfTable, psi):
    """Fourier series of an autocorrelation, ``sum_tau R[tau] exp(+j 2 tau psi)``.

    With the lag convention above this equals :func:`psd` at the same ``psi``.
    Real part only; the imaginary part vanishes for conjugate-symmetric input.
    """
    psi = np.asarray(psi, dtype=float)
    kernel = np.exp(2j * np.multiply.outer(psi, table.lags))
    return np.real(kernel @ table.values)


# Phase lists (radians) for the shipped seeds. Lengths 3 and 10 are the
# published pairs; 1 and 2 are trivial.
_SEED_PHASES = {
    1: ([0.0], [0.0]),
    2: ([0.0, 0.0], [0.0, np.pi]),
    3: ([0.0, np.pi / 2, 0.0], [0.0, 0.0, np.pi]),
    10: (
        [0, 0, np.pi, np.pi / 2, 0, np.pi, -np.pi / 2, np.pi, -np.pi / 2, np.pi / 2],
        [0, 0, -np.pi / 2, 0, -np.pi / 2, -np.pi / 2, 0, np.pi / 2, np.pi / 2, -np.pi / 2],
    ),
}

SEED_LENGTHS = tuple(sorted(_SEED_PHASES))


def golay_seed(length: int) -> GolayPair:
    if length not in _SEED_PHASES:
        raise NotFound(
            f"no built-in Golay pair of length {length}; "
            f"supported lengths: {list(SEED_LENGTHS)}"
        )
    pu, pv = _SEED_PHASES[length]
    return _verified(PhaseVector.from_phases(pu), PhaseVector.from_phases(pv), "seed")


def _verified(u, v, what) -> GolayPair:
    pair = is_golay(u, v)
    if pair is None:
        raise VerificationError(
            f"{what} produced a non-complementary pair "
            f"(residual {golay_residual(u, v):.3g})"
        )
    return pair


def golay_concat(p: GolayPair) -> GolayPair:
    """Doubling construction ``([u | v], [u | -v])``."""
    u, v = p.u.values, p.v.values
    return _verified(
        PhaseVector(np.concatenate([u, v])),
        PhaseVector(np.concatenate([u, -v])),
        "golay_concat",
    )


def golay_product(primary: GolayPair, expander: GolayPair) -> GolayPair:
    """Product construction giving a pair of length ``2 * M * N``.

    With ``(a, b)`` of length ``M`` and ``(c, d)`` of length ``N``::

        x = [c (x) a ; -d (x) rev(conj(b))]
        y = [c (x) b ;  d (x) rev(conj(a))]

    where ``(x)`` is the Kronecker product with the left factor indexing blocks.
    """
    a, b = primary.u.values, primary.v.values
    c, d = expander.u.values, expander.v.values
    x = np.concatenate([np.kron(c, a), -np.kron(d, np.conj(b[::-1]))])
    y = np.concatenate([np.kron(c, b), np.kron(d, np.conj(a[::-1]))])
    return _verified(PhaseVector(x), PhaseVector(y), "golay_product")


@lru_cache(maxsize=None)
def _recipe(length: int):
    # seed, then doubling, then product with the larger factor as primary
    if length in _SEED_PHASES:
        return ("seed", length)
    if length % 2 == 0 and _recipe(length // 2) is not None:
        return ("concat", length // 2)
    if length % 2 == 0:
        half = length // 2
        for a in range(half, 0, -1):
            if half % a == 0:
                b = half // a
                if _recipe(a) is not None and _recipe(b) is not None:
                    return ("product", a, b)
    return None


def is_constructible(length: int) -> bool:
    return length >= 1 and _recipe(length) is not None


def constructible_lengths(limit: int) -> list[int]:
    return [n for n in range(1, limit + 1) if is_constructible(n)]


@lru_cache(maxsize=None)
def golay_of_length(length: int) -> GolayPair:
    """Build a verified pair of the requested length from the seed library.

    Raises
    ------
    InvalidArgument
        If the length cannot be reached by doubling and products of seeds.
    """
    if length < 1 or _recipe(length) is None:
        near = constructible_lengths(max(2 * length, 16))
        raise InvalidArgument(
            f"no Golay pair of length {length} is constructible from seeds "
            f"{list(SEED_LENGTHS)}; constructible lengths up to {near[-1]}: {near}"
        )
    step = _recipe(length)
    if step[0] == "seed":
        return golay_seed(length)
    if step[0] == "concat":
        return golay_concat(golay_of_length(step[1]))
    return golay_product(golay_of_length(step[1]), golay_of_length(step[2]))
