"""
Exit criteria. Each test records a one-line verdict that is printed in the
pytest terminal summary ("acceptance criteria" section).
"""

import time

import numpy as np
import pytest

from dualris.array import (
    ArrayGeometry, DualPolConfig, ElementPattern, angle_grid, config_broad, element_pattern_db,
    equiv_response, pdaf, radiation_pattern_db, relative_phase,
)
from dualris.expansion import cross_term, exchange, expand
from dualris.montecarlo import Scenario, evaluate, run
from dualris.sequences import (
    PhaseVector, SEED_LENGTHS, acf, golay_concat, golay_of_length, golay_product,
    golay_residual, is_golay, psd, sum_acf,
)

from conftest import EQ_PAIR3_U, EQ_PAIR3_V, EQ_PRIMARY_H, EQ_PRIMARY_V, random_unimodular

GRID = angle_grid(2048)
PATTERN = ElementPattern()
MC_SEEDS = range(10)


def _primary():
    return DualPolConfig(PhaseVector.from_phases(EQ_PRIMARY_H), PhaseVector.from_phases(EQ_PRIMARY_V))


def _pair3():
    return is_golay(PhaseVector.from_phases(EQ_PAIR3_U), PhaseVector.from_phases(EQ_PAIR3_V))


def test_c1_golay_flatness_length_32(record):
    t0 = time.perf_counter()
    pair = golay_of_length(32)
    s = sum_acf(pair.u, pair.v)
    residual = golay_residual(pair.u, pair.v)
    a = pdaf(config_broad(pair), ArrayGeometry(32), GRID)
    elapsed = time.perf_counter() - t0
    rel = float(np.max(np.abs(a - 64) / 64))
    level = 10 * np.log10(a.mean())
    ok = (residual < 1e-9 and abs(s[0] - 64) < 1e-9 and rel < 1e-9
          and abs(level - 18.06) < 0.005 and elapsed < 1.0)
    record("C1 Golay flatness (M=32)",
           ok, f"residual={residual:.2e} pdaf rel dev={rel:.2e} level={level:.3f} dB t={elapsed:.3f}s")
    assert ok


def test_c2_expansion_scaling(record):
    t0 = time.perf_counter()
    primary, pair = _primary(), _pair3()
    out = expand(primary, pair)
    g_p, g_e = ArrayGeometry(10), ArrayGeometry(60)
    prim_db = radiation_pattern_db(primary, g_p, PATTERN, GRID)
    exp_db = radiation_pattern_db(out.config, g_e, PATTERN, GRID)
    single_db = element_pattern_db(g_p, PATTERN, GRID)
    elapsed = time.perf_counter() - t0
    d1 = np.max(np.abs(exp_db - prim_db - 10 * np.log10(6)))
    d2 = np.max(np.abs(exp_db - single_db - 10 * np.log10(120)))
    ok = (2 * out.config.m_per_pol == 120 and d1 < 0.01 and d2 < 0.01
          and abs(10 * np.log10(120) - 20.79) < 0.005 and elapsed < 1.0)
    record("C2 expansion scaling (20 -> 120)", ok,
           f"|dev vs +7.782 dB|={d1:.2e} |dev vs +20.792 dB|={d2:.2e} t={elapsed:.3f}s")
    assert ok


def test_c3_primary_offset(record):
    g = ArrayGeometry(10)
    diff = radiation_pattern_db(_primary(), g, PATTERN, GRID) - element_pattern_db(g, PATTERN, GRID)
    dev = np.max(np.abs(diff - 13.01))
    ok = dev < 0.01 and abs(10 * np.log10(20) - 13.01) < 0.001
    record("C3 primary offset (+13.01 dB)", ok, f"max |diff - 13.01|={dev:.2e} dB")
    assert ok


def test_c4_appendix_identities(record):
    rng = np.random.default_rng(4)
    worst_exchange = 0.0
    worst_cross = 0.0
    for _ in range(1000):
        m = int(rng.integers(1, 17))
        n = int(rng.choice(SEED_LENGTHS))
        spacing = rng.uniform(0.05, 2.0)
        incident = rng.uniform(-np.pi / 2, np.pi / 2)
        phi = rng.uniform(-np.pi / 2, np.pi / 2)
        g = ArrayGeometry(m, spacing, incident)
        a = equiv_response(g, phi, "H")
        psi = relative_phase(g, phi)
        worst_exchange = max(worst_exchange, float(np.max(np.abs(
            exchange(a) - np.exp(-2j * (m - 1) * psi) * np.conj(a)))))
        primary = DualPolConfig(random_unimodular(rng, m), random_unimodular(rng, m))
        out = expand(primary, golay_of_length(n))
        mn = m * n
        # normalized by the Cauchy-Schwarz bound of the two products, 2 (MN)^2
        c = abs(cross_term(out, g.resized(2 * mn), phi)) / (2 * mn * mn)
        worst_cross = max(worst_cross, float(c))
    ok = worst_exchange < 1e-12 and worst_cross < 1e-12
    record("C4 appendix identities", ok,
           f"exchange max err={worst_exchange:.2e} cross-term max (normalized)={worst_cross:.2e}")
    assert ok


def _mc(scheme):
    fracs, maxes, times = [], [], []
    for seed in MC_SEEDS:
        t0 = time.perf_counter()
        c = run(Scenario(scheme=scheme, seed=seed))
        times.append(time.perf_counter() - t0)
        fracs.append((c.fraction_above(2.0), c.fraction_below(1.0)))
        maxes.append(c.max)
    return np.array(fracs), np.array(maxes), max(times)


def test_c5a_broad_coverage(record):
    fracs, _, t = _mc("broad")
    above = fracs[:, 0]
    ok = bool(np.all(np.abs(above - 0.93) <= 0.04)) and t < 10
    record("C5a broad P(SE>2) = 0.93 +- 0.04", ok,
           f"per-seed {np.round(above, 3).tolist()} mean={above.mean():.3f} t_max={t:.3f}s")
    assert ok


def test_c5b_closest_ue_outage(record):
    fracs, _, t = _mc("closest")
    below = fracs[:, 1]
    ok = bool(np.all(np.abs(below - 0.96) <= 0.03)) and t < 10
    record("C5b closest-UE P(SE<1) = 0.96 +- 0.03", ok,
           f"per-seed {np.round(below, 3).tolist()} mean={below.mean():.3f} t_max={t:.3f}s")
    assert ok


def test_c5c_random_max_se(record):
    _, maxes, t = _mc("random")
    ok = bool(np.all((maxes >= 2.0) & (maxes <= 3.5))) and t < 10
    record("C5c random max SE in [2.0, 3.5]", ok,
           f"per-seed {np.round(maxes, 2).tolist()} t_max={t:.3f}s")
    assert ok


def test_c6a_wiener_khinchin(record):
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(100):
        m = int(rng.integers(1, 65))
        g = ArrayGeometry(m, rng.uniform(0.1, 1.0), rng.uniform(-np.pi / 2, np.pi / 2))
        c = DualPolConfig(random_unimodular(rng, m), random_unimodular(rng, m))
        psi = relative_phase(g, GRID)
        a = pdaf(c, g, GRID)
        ref = psd(c.phi_h, psi) + psd(c.phi_v, psi)
        worst = max(worst, float(np.max(np.abs(a - ref) / np.maximum(ref, 2 * m))))
    ok = worst < 1e-9
    record("C6a pdaf = PSD sum", ok, f"max rel err={worst:.2e}")
    assert ok


def test_c6b_single_polarization_not_flat(record):
    rng = np.random.default_rng(7)
    worst = 0.0
    for m in range(2, 65):
        r = acf(random_unimodular(rng, m))
        worst = max(worst, abs(abs(r[m - 1]) - 1))
    ok = worst < 1e-12
    record("C6b |R[M-1]| = 1 for M in [2, 64]", ok, f"max ||R[M-1]|-1|={worst:.2e}")
    assert ok


def test_c6c_construction_closure(record):
    pairs = {m: golay_of_length(m) for m in SEED_LENGTHS}
    frontier = list(pairs.values())
    built, seen = list(frontier), set()
    while frontier:
        p = frontier.pop()
        cands = [golay_concat(p)] if 2 * p.length <= 120 else []
        cands += [golay_product(p, pairs[s]) for s in SEED_LENGTHS if 2 * p.length * s <= 120]
        for q in cands:
            key = (q.u.values.round(9).tobytes(), q.v.values.round(9).tobytes())
            if key not in seen:
                seen.add(key)
                built.append(q)
                frontier.append(q)
    worst = max(golay_residual(q.u, q.v) for q in built)
    lengths = sorted({q.length for q in built})
    ok = worst < 1e-9 and all(is_golay(q.u, q.v) is not None for q in built)
    record("C6c concat/product closure <= 120", ok,
           f"{len(built)} pairs, lengths {lengths}, worst residual={worst:.2e}")
    assert ok


def test_c6d_montecarlo_determinism(record):
    same = True
    for scheme in ("broad", "closest", "random"):
        s = Scenario(scheme=scheme, seed=123)
        ref = evaluate(s, threads=1)
        for t in (4, 8):
            same &= bool(np.array_equal(evaluate(s, threads=t), ref))
    record("C6d bit-identical over threads {1,4,8}", same, "all schemes" if same else "mismatch")
    assert same
