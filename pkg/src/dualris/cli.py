"""
Command-line front end.

Exit codes: 0 success, 1 input error, 2 verification failure.
Angles are degrees on the command line and in files, radians inside.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import io
from .array import FLATNESS_GRID, angle_grid, element_pattern_db, pdaf, to_db
from .errors import InvalidArgument, NotFound, VerificationError
from .expansion import expand, verify_expansion
from .montecarlo import SCHEMES, Scenario, build_config, run, summarize
from .sequences import GolayPair, acf, golay_of_length, golay_residual, is_golay

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2

PATTERN_HEADER = ("angle_deg", "pdaf_db", "element_db", "total_db")
CDF_HEADER = ("se_bps_hz", "cdf_fraction")


def _scenario(path) -> Scenario:
    return io.load_scenario(path) if path else Scenario()


def _with_target(scenario: Scenario, target_deg):
    return scenario if target_deg is None else replace(scenario, target=float(np.radians(target_deg)))


def cmd_verify(args) -> int:
    u, v = io.load_pair(args.pair)
    residual = golay_residual(u, v)
    ok = is_golay(u, v, args.tol) is not None
    print(f"length {len(u)}  residual {residual:.3e}  {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_acf(args) -> int:
    u, v = io.load_pair(args.pair)
    ru, rv = acf(u), acf(v)
    s = ru + rv
    cols = [ru.lags]
    header = ["lag"]
    for name, t in (("r_u", ru), ("r_v", rv), ("sum", s)):
        cols += [t.values.real, t.values.imag]
        header += [f"{name}_re", f"{name}_im"]
    io.write_csv(args.out, header, cols)
    return EXIT_OK


def _pattern_config(args, scenario: Scenario):
    if args.config:
        config = io.load_config(args.config)
        return config, scenario.geom.resized(config.m_per_pol)
    if args.scheme == "single":
        return None, scenario.geom
    return build_config(replace(scenario, scheme=args.scheme)), scenario.geom


def cmd_pattern(args) -> int:
    scenario = _with_target(_scenario(args.scenario), args.target_deg)
    config, geom = _pattern_config(args, scenario)
    phi = angle_grid(args.points)
    element = element_pattern_db(geom, scenario.pattern, phi)
    # isolated element: unit array factor
    a_db = np.zeros_like(phi) if config is None else to_db(pdaf(config, geom, phi))
    io.write_csv(args.out, PATTERN_HEADER, [np.degrees(phi), a_db, element, a_db + element])
    return EXIT_OK


def cmd_expand(args) -> int:
    primary = io.load_config(args.primary)
    u, v = io.load_pair(args.pair)
    pair = is_golay(u, v)
    if pair is None:
        raise InvalidArgument(f"{args.pair}: not a Golay complementary pair")
    out = expand(primary, pair)
    geom = _scenario(args.scenario).geom
    meta = {"M": primary.m_per_pol, "N": pair.length,
            "source": {"primary": str(args.primary), "pair": str(args.pair)}}
    try:
        report = verify_expansion(primary, pair, out, geom)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    io.write_json(args.out, io.config_doc(out.config, **meta, verification=report.as_dict()))
    print(f"expanded {2 * primary.m_per_pol} -> {2 * out.config.m_per_pol} elements, "
          f"max deviation {report.max_ratio_deviation:.3e}")
    return EXIT_OK


def cmd_montecarlo(args) -> int:
    scenario = _with_target(_scenario(args.scenario), args.target_deg)
    schemes = SCHEMES if args.scheme == "all" else (args.scheme,)
    prefix = Path(args.out_prefix)
    if prefix.parent != Path("."):
        prefix.parent.mkdir(parents=True, exist_ok=True)
    summaries = []
    for scheme in schemes:
        curve = run(replace(scenario, scheme=scheme), threads=args.threads)
        io.write_csv(f"{prefix}_{scheme}.csv", CDF_HEADER, [curve.sorted_values, curve.fractions])
        summaries.append(summarize(scheme, curve))
        s = summaries[-1]
        print(f"{scheme:8s} P(SE>2)={s['fraction_above_2']:.3f} P(SE<1)={s['fraction_below_1']:.3f} "
              f"max={s['max_se']:.3f} median={s['median_se']:.3f}")
    io.write_json(f"{prefix}_summary.json", summaries)
    return EXIT_OK


def cmd_golay_gen(args) -> int:
    pair: GolayPair = golay_of_length(args.length)
    io.write_json(args.out, io.pair_doc(pair.u, pair.v, length=pair.length))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dualris", description="Dual-polarized RIS broad-beam toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check that a pair file is Golay complementary")
    s.add_argument("pair")
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("acf", help="dump autocorrelations of a pair as CSV")
    s.add_argument("pair")
    s.add_argument("-o", "--out", required=True)
    s.set_defaults(func=cmd_acf)

    s = sub.add_parser("pattern", help="radiation pattern sweep as CSV")
    s.add_argument("scenario", nargs="?")
    s.add_argument("--scheme", choices=(*SCHEMES, "single"), default="broad")
    s.add_argument("--config", help="phase configuration file; overrides --scheme")
    s.add_argument("--target-deg", type=float, help="steering angle for the closest scheme")
    s.add_argument("--points", type=int, default=FLATNESS_GRID)
    s.add_argument("-o", "--out", required=True)
    s.set_defaults(func=cmd_pattern)

    s = sub.add_parser("expand", help="Golay-expand a configuration")
    s.add_argument("primary")
    s.add_argument("pair")
    s.add_argument("-o", "--out", required=True)
    s.add_argument("--scenario", help="scenario whose geometry is used for verification")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("montecarlo", help="spectral-efficiency CDFs")
    s.add_argument("scenario", nargs="?")
    s.add_argument("--scheme", choices=(*SCHEMES, "all"), default="all")
    s.add_argument("--out-prefix", required=True)
    s.add_argument("--threads", type=int)
    s.add_argument("--target-deg", type=float)
    s.set_defaults(func=cmd_montecarlo)

    s = sub.add_parser("golay", help="Golay pair library")
    gsub = s.add_subparsers(dest="golay_command", required=True)
    g = gsub.add_parser("gen", help="write a pair of the given length")
    g.add_argument("length", type=int)
    g.add_argument("-o", "--out", required=True)
    g.set_defaults(func=cmd_golay_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidArgument, NotFound) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
