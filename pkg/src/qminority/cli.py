"""Command line entry point: ``qminority payoff|sweep|ne-check|table|minority-table``.

Exit codes: 0 ok, 1 usage/validation error, 2 numerically invalid final
state, 3 NE check failed.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .angles import format_strategy, parse_angle, parse_strategy
from .channels import ChannelKind
from .csvio import RunManifest, format_float, write_rows, write_sweep
from .equilibrium import best_response_scan, sweep
from .minority import (
    classical_random_payoff,
    minority_table,
    ne_strategy,
    pareto_payoff,
    quantum_ne_payoff,
)
from .protocol import GameConfig, expected_payoffs, run_game
from .qcore import InvalidStateError, require_valid

EXIT_OK, EXIT_USAGE, EXIT_INVALID_STATE, EXIT_NOT_NE = 0, 1, 2, 3
MAX_TABLE_N = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _angle(text: str) -> float:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_game_flags(p: argparse.ArgumentParser, with_strategies: bool = True) -> None:
    p.add_argument("--n", type=int, default=4, help="number of players (default 4)")
    p.add_argument("--gamma", type=_angle, default=math.pi / 2, help="entangling angle (default pi/2)")
    p.add_argument(
        "--channel",
        default="none",
        help="decoherence: " + ", ".join(k.value for k in ChannelKind),
    )
    p.add_argument("--p", type=float, default=0.0, help="first-stage error probability")
    p.add_argument("--p-prime", type=float, default=None, help="second-stage probability (default: --p)")
    p.add_argument("--disentangle", action="store_true", help="apply J^dag before measuring")
    if with_strategies:
        p.add_argument(
            "--strategy",
            action="append",
            default=[],
            metavar="K=THETA,ALPHA,BETA",
            help="move of player K (0-based) or 'all'; repeatable. Default: the NE strategy for even N",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qminority", description="Simulate the entangled Minority game under per-qubit noise")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("payoff", help="expected payoffs of one game")
    _add_game_flags(p)

    p = sub.add_parser("sweep", help="payoffs over a range of p or gamma, as CSV")
    _add_game_flags(p)
    p.add_argument("--param", choices=["p", "gamma"], required=True)
    p.add_argument("--from", dest="start", type=_angle, required=True)
    p.add_argument("--to", dest="stop", type=_angle, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", default="-", help="output file (default stdout)")

    p = sub.add_parser("ne-check", help="best-response grid scan around a profile")
    _add_game_flags(p)
    p.add_argument("--grid", type=int, default=17, help="points per axis (default 17)")
    p.add_argument("--deviator", type=int, default=0)

    p = sub.add_parser("table", help="quantum/classical/Pareto payoffs for even N")
    p.add_argument("--max-n", type=int, default=MAX_TABLE_N)

    p = sub.add_parser("minority-table", help="Minority-game payoff table as CSV")
    p.add_argument("--n", type=int, default=4)
    return parser


def _config(args) -> GameConfig:
    try:
        return GameConfig(
            players=args.n,
            gamma=args.gamma,
            channel=ChannelKind.parse(args.channel),
            p=args.p,
            p_prime=args.p_prime,
            apply_disentangler=args.disentangle,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _profile(args, n: int) -> list:
    chosen: dict[int, object] = {}
    specs = sorted(args.strategy, key=lambda s: not s.partition("=")[0].strip() == "all")
    for spec in specs:
        who, sep, literal = spec.partition("=")
        if not sep:
            raise UsageError(f"--strategy {spec!r} must look like K=theta,alpha,beta")
        try:
            move = parse_strategy(literal)
        except ValueError as exc:
            raise UsageError(f"--strategy {spec!r}: {exc}") from None
        who = who.strip()
        if who == "all":
            chosen.update({k: move for k in range(n)})
            continue
        try:
            k = int(who)
        except ValueError:
            raise UsageError(f"--strategy player {who!r} is not an integer or 'all'") from None
        if not 0 <= k < n:
            raise UsageError(f"--strategy player {k} out of range for {n} players")
        chosen[k] = move
    missing = [k for k in range(n) if k not in chosen]
    if missing:
        if n % 2 or n < 4:
            raise UsageError(f"no default strategy for N={n}; give --strategy for players {missing}")
        default = ne_strategy(n)
        chosen.update({k: default for k in missing})
    return [chosen[k] for k in range(n)]


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", newline="\n", encoding="utf-8"), True
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def cmd_payoff(args) -> int:
    cfg = _config(args)
    profile = _profile(args, cfg.players)
    rho = require_valid(run_game(cfg, profile))
    values = expected_payoffs(rho, minority_table(cfg.players))
    manifest = RunManifest("payoff", cfg, profile=profile)
    write_rows(sys.stdout, manifest, [f"payoff_{k + 1}" for k in range(cfg.players)], [values])
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _config(args)
    profile = _profile(args, cfg.players)
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    grid = np.linspace(args.start, args.stop, args.steps)
    lo, hi = (0.0, 1.0) if args.param == "p" else (0.0, math.pi / 2)
    if grid.min() < lo - 1e-12 or grid.max() > hi + 1e-12:
        raise UsageError(f"--{args.param} range must lie within [{lo:g}, {hi:.6g}]")
    grid = np.clip(grid, lo, hi)
    try:
        result = sweep(cfg, args.param, grid, profile, validate=True)
    except ValueError as exc:
        if isinstance(exc, InvalidStateError):
            raise
        raise UsageError(str(exc)) from None
    stream, close = _open_out(args.out)
    try:
        write_sweep(stream, result, RunManifest("sweep", cfg, args.out, profile))
    finally:
        if close:
            stream.close()
    return EXIT_OK


def cmd_ne_check(args) -> int:
    cfg = _config(args)
    profile = _profile(args, cfg.players)
    if not 0 <= args.deviator < cfg.players:
        raise UsageError(f"--deviator {args.deviator} out of range for {cfg.players} players")
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    require_valid(run_game(cfg, profile))
    report = best_response_scan(cfg, profile, args.deviator, args.grid)
    print(f"base_payoff: {format_float(report.base_payoff)}")
    print(f"best_deviation_payoff: {format_float(report.best_deviation_payoff)}")
    print(f"gain: {report.gain:.3e}")
    print(f"best_deviation_params: {format_strategy(report.best_deviation_params)}")
    print(f"grid_resolution: {report.grid_resolution}")
    print(f"nash_equilibrium: {'yes' if report.is_ne else 'no'}")
    return EXIT_OK if report.is_ne else EXIT_NOT_NE


def cmd_table(args) -> int:
    top = args.max_n
    if top < 4 or top % 2 or top > MAX_TABLE_N:
        raise UsageError(f"--max-n must be even and between 4 and {MAX_TABLE_N}")
    rows = [
        [str(n), quantum_ne_payoff(n), classical_random_payoff(n), pareto_payoff(n)]
        for n in range(4, top + 1, 2)
    ]
    header = ["N", "quantum_ne_payoff", "classical_random_payoff", "pareto_payoff"]
    write_rows(sys.stdout, RunManifest("table", extra={"max_n": top}), header, rows)
    return EXIT_OK


def cmd_minority_table(args) -> int:
    if not 2 <= args.n <= 12:
        raise UsageError("--n must be between 2 and 12")
    for line in RunManifest("minority-table", extra={"N": args.n}).lines():
        print(line)
    sys.stdout.write(minority_table(args.n).to_csv())
    return EXIT_OK


COMMANDS = {
    "payoff": cmd_payoff,
    "sweep": cmd_sweep,
    "ne-check": cmd_ne_check,
    "table": cmd_table,
    "minority-table": cmd_minority_table,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"qminority: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidStateError as exc:
        print(f"qminority: {exc}", file=sys.stderr)
        return EXIT_INVALID_STATE


if __name__ == "__main__":
    sys.exit(main())
