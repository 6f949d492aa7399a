"""Minority game payoffs, classical baselines and the quantum NE strategy family."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .protocol import GameConfig, StrategyParams, expected_payoffs, run_game


def bits_of(index: int, n: int) -> tuple[int, ...]:
    """Outcome bits of a basis index, qubit 0 first (most significant)."""
    return tuple((index >> (n - 1 - k)) & 1 for k in range(n))


def bitstring(index: int, n: int) -> str:
    return format(index, f"0{n}b")


@dataclass(frozen=True, eq=False)
class PayoffTable:
    """``values[i, k]`` is player k's payoff on computational outcome ``i``."""

    players: int
    values: np.ndarray

    def __getitem__(self, outcome: str) -> tuple[int, ...]:
        if len(outcome) != self.players:
            raise KeyError(outcome)
        return tuple(int(v) for v in self.values[int(outcome, 2)])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["outcome"] + [f"payoff_{k + 1}" for k in range(self.players)])
        for i in range(2**self.players):
            w.writerow([bitstring(i, self.players)] + [int(v) for v in self.values[i]])
        return buf.getvalue()


@lru_cache(maxsize=None)
def _minority_values(n: int) -> np.ndarray:
    idx = np.arange(2**n)
    bits = (idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    ones = bits.sum(axis=1, keepdims=True)
    same_side = np.where(bits == 1, ones, n - ones)
    values = (same_side < n - same_side).astype(np.int8)
    values.setflags(write=False)
    return values


def minority_table(n_players: int) -> PayoffTable:
    if n_players < 2:
        raise ValueError(f"the Minority game needs at least 2 players, got {n_players}")
    return PayoffTable(n_players, _minority_values(n_players))


def balanced_mask(n_players: int) -> np.ndarray:
    """Boolean mask over outcomes with equally many zeros and ones."""
    idx = np.arange(2**n_players)
    ones = np.array([bin(i).count("1") for i in idx])
    return 2 * ones == n_players


def classical_random_payoff_exact(n_players: int) -> Fraction:
    # j counts the other players sharing my choice; I win iff j + 1 < n - j - 1
    top = math.ceil(n_players / 2) - 2
    wins = sum(math.comb(n_players - 1, j) for j in range(top + 1))
    return Fraction(wins, 2 ** (n_players - 1))


def classical_random_payoff(n_players: int) -> float:
    """Payoff of one player when everybody tosses a fair coin."""
    if n_players < 2:
        raise ValueError(f"need at least 2 players, got {n_players}")
    return float(classical_random_payoff_exact(n_players))


def _require_even(n_players: int) -> None:
    if n_players < 4 or n_players % 2:
        raise ValueError(f"needs an even number of players >= 4, got {n_players}")


def quantum_ne_payoff(n_players: int) -> float:
    """NE payoff of the fully entangled game: the (N-1)-player classical value."""
    _require_even(n_players)
    return classical_random_payoff(n_players - 1)


def pareto_payoff(n_players: int) -> float:
    _require_even(n_players)
    return (n_players / 2 - 1) / n_players


def _wrap(angle: float) -> float:
    if -math.pi <= angle <= math.pi:
        return angle
    return (angle + math.pi) % (2 * math.pi) - math.pi


@dataclass(frozen=True)
class NEFamilyPoint:
    """Member ``n`` (and phase ``eta``) of the symmetric NE family for ``players``."""

    players: int
    n: int = 0
    eta: float = 0.0

    @property
    def delta(self) -> float:
        return (4 * self.n + 1) * math.pi / (4 * self.players)


def ne_strategy(n_players: int, point: NEFamilyPoint | int = 0, eta: float = 0.0) -> StrategyParams:
    """``M(pi/2, eta - delta, eta + delta)`` with ``delta = (4n+1) pi / (4N)``.

    ``point`` may be an :class:`NEFamilyPoint` or just the integer ``n``.
    Phases are wrapped into ``[-pi, pi]``.
    """
    _require_even(n_players)
    if not isinstance(point, NEFamilyPoint):
        point = NEFamilyPoint(n_players, int(point), eta)
    elif point.players != n_players:
        raise ValueError(f"family point is for {point.players} players, not {n_players}")
    d = point.delta
    return StrategyParams(math.pi / 2, _wrap(point.eta - d), _wrap(point.eta + d))


def delta_strategy(delta: float) -> StrategyParams:
    return StrategyParams(math.pi / 2, _wrap(-delta), _wrap(delta))


def balanced_state_probability(n_players: int, delta: float) -> float:
    """Total probability of balanced outcomes when everyone plays ``M(pi/2, -delta, delta)``."""
    if n_players % 2:
        raise ValueError("balanced outcomes need an even number of players")
    cfg = GameConfig(n_players)
    rho = run_game(cfg, [delta_strategy(delta)] * n_players)
    probs = np.real(np.diag(rho.matrix))
    return float(probs[balanced_mask(n_players)].sum())


def winner_count_distribution(probs: np.ndarray, n_players: int) -> np.ndarray:
    """``out[w]`` is the probability that exactly ``w`` players win."""
    winners = _minority_values(n_players).sum(axis=1)
    return np.bincount(winners, weights=probs, minlength=n_players + 1)


def payoffs(cfg: GameConfig, strategies) -> np.ndarray:
    return expected_payoffs(run_game(cfg, strategies), minority_table(cfg.players))
