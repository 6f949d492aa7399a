"""CSV output with an embedded ``#`` run manifest."""
from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import __version__
from .angles import format_angle, format_strategy
from .equilibrium import SweepResult
from .protocol import GameConfig


def format_float(x: float) -> str:
    """Positional decimal with 12 significant digits."""
    s = np.format_float_positional(float(x), precision=12, unique=False, fractional=False, trim="-")
    return "0" if s == "-0" else s


def _utc_now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat().replace("+00:00", "Z")


def _format_p(p) -> str:
    if isinstance(p, tuple):
        return "[" + " ".join(format_float(x) for x in p) + "]"
    return format_float(p)


@dataclass
class RunManifest:
    command: str
    config: GameConfig | None = None
    output_path: str = "-"
    profile: Sequence = ()
    extra: dict = field(default_factory=dict)
    tool_version: str = __version__
    timestamp: str = field(default_factory=_utc_now)

    def lines(self) -> list[str]:
        out = [
            f"# command: {self.command}",
            f"# tool_version: {self.tool_version}",
            f"# timestamp: {self.timestamp}",
            f"# output: {self.output_path}",
        ]
        cfg = self.config
        if cfg is not None:
            out += [
                f"# N: {cfg.players}",
                f"# gamma: {format_angle(cfg.gamma)}",
                f"# channel: {cfg.channel.value}",
                f"# p: {_format_p(cfg.p)}",
                f"# p_prime: {_format_p(cfg.p_prime)}",
                f"# disentangle: {str(cfg.apply_disentangler).lower()}",
            ]
        if self.profile:
            out.append("# profile: " + "; ".join(format_strategy(s) for s in self.profile))
        for key, value in self.extra.items():
            out.append(f"# {key}: {value}")
        return out


def write_rows(stream: TextIO, manifest: RunManifest, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    for line in manifest.lines():
        stream.write(line + "\n")
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(v if isinstance(v, str) else format_float(v) for v in row) + "\n")


def write_sweep(stream: TextIO, result: SweepResult, manifest: RunManifest) -> None:
    n = result.payoffs.shape[1]
    manifest.extra.setdefault("param", result.parameter_name)
    if result.parameter_name == "p":
        manifest.extra.setdefault("p_prime_policy", "tracks p")
    header = ["param"] + [f"payoff_{k + 1}" for k in range(n)]
    rows = ([x, *result.payoffs[i]] for i, x in enumerate(result.grid))
    write_rows(stream, manifest, header, rows)


def read_csv(text: str) -> tuple[dict, list[str], np.ndarray]:
    """Split CSV text into (manifest dict, header, float data)."""
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            meta[key.strip()] = value.strip()
        elif line:
            body.append(line)
    header = body[0].split(",")
    data = np.array([[float(v) for v in row.split(",")] for row in body[1:]])
    return meta, header, data
