"""Best-response scans, payoff sweeps and closed-form NE payoffs."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channels import ChannelKind
from .minority import (
    classical_random_payoff,
    minority_table,
    ne_strategy,
    quantum_ne_payoff,
)
from .protocol import (
    GameConfig,
    StrategyParams,
    entangled_state,
    expected_payoffs,
    finish_game,
    run_game,
    strategy_operator,
)
from .qcore import DensityMatrix, apply_local, require_valid

NE_GAIN_TOL = 1e-9


@dataclass(frozen=True)
class DeviationReport:
    base_payoff: float
    best_deviation_payoff: float
    best_deviation_params: StrategyParams
    gain: float
    grid_resolution: int

    @property
    def is_ne(self) -> bool:
        return self.gain <= NE_GAIN_TOL


@dataclass(frozen=True, eq=False)
class SweepResult:
    parameter_name: str
    grid: np.ndarray
    payoffs: np.ndarray
    config: GameConfig
    profile: tuple

    def column(self, player: int) -> np.ndarray:
        return self.payoffs[:, player]


def _check_profile(cfg: GameConfig, profile: Sequence[StrategyParams], deviator: int) -> None:
    if len(profile) != cfg.players:
        raise ValueError(f"profile has {len(profile)} strategies, game has {cfg.players} players")
    if not 0 <= deviator < cfg.players:
        raise IndexError(f"deviator {deviator} out of range for {cfg.players} players")


class _DeviationGame:
    """Caches everything that does not depend on the deviator's move."""

    def __init__(self, cfg: GameConfig, profile: Sequence[StrategyParams], deviator: int):
        _check_profile(cfg, profile, deviator)
        self.cfg = cfg
        self.deviator = deviator
        self.weights = np.asarray(minority_table(cfg.players).values[:, deviator], dtype=float)
        m = entangled_state(cfg).matrix
        for k, s in enumerate(profile):
            if k != deviator:
                m = apply_local(m, strategy_operator(s), k, cfg.players)
        self.partial = m

    def payoff(self, move: StrategyParams) -> float:
        m = apply_local(self.partial, strategy_operator(move), self.deviator, self.cfg.players)
        rho = finish_game(self.cfg, DensityMatrix(m))
        return float(np.real(np.diag(rho.matrix)) @ self.weights)


def deviation_payoff(
    cfg: GameConfig, profile: Sequence[StrategyParams], deviator: int, move: StrategyParams
) -> float:
    """Payoff to ``deviator`` playing ``move`` while everyone else keeps ``profile``."""
    return _DeviationGame(cfg, profile, deviator).payoff(move)


def strategy_grid(grid_n: int):
    """Uniform (theta, alpha, beta) grid, endpoints included, lexicographic order."""
    if grid_n < 2:
        raise ValueError("grid needs at least 2 points per axis")
    thetas = np.linspace(0.0, math.pi, grid_n)
    phases = np.linspace(-math.pi, math.pi, grid_n)
    for t, a, b in itertools.product(thetas, phases, phases):
        yield StrategyParams(t, a, b)


def best_response_scan(
    cfg: GameConfig, profile: Sequence[StrategyParams], deviator: int = 0, grid_n: int = 17
) -> DeviationReport:
    game = _DeviationGame(cfg, profile, deviator)
    base = game.payoff(profile[deviator])
    best, best_move = base, profile[deviator]
    for move in strategy_grid(grid_n):
        value = game.payoff(move)
        if value > best:
            best, best_move = value, move
    return DeviationReport(base, best, best_move, best - base, grid_n)


def _payoffs(cfg: GameConfig, profile: Sequence[StrategyParams], validate: bool = False) -> np.ndarray:
    rho = run_game(cfg, profile)
    if validate:
        require_valid(rho)
    return expected_payoffs(rho, minority_table(cfg.players))


def sweep(
    cfg: GameConfig,
    parameter: str,
    grid: Sequence[float],
    profile: Sequence[StrategyParams],
    validate: bool = False,
) -> SweepResult:
    """Exact payoffs of ``profile`` as ``parameter`` ('p' or 'gamma') runs over ``grid``.

    For a ``p`` sweep ``p_prime`` follows ``p`` at every point. With
    ``validate`` every final state is checked and
    :class:`~qminority.qcore.InvalidStateError` raised on the first bad one.
    """
    if parameter not in ("p", "gamma"):
        raise ValueError(f"can only sweep 'p' or 'gamma', not {parameter!r}")
    grid = np.asarray(grid, dtype=float)
    out = np.empty((grid.size, cfg.players))
    for i, x in enumerate(grid):
        point = cfg.with_(p=float(x), p_prime=float(x)) if parameter == "p" else cfg.with_(gamma=float(x))
        out[i] = _payoffs(point, profile, validate)
    return SweepResult(parameter, grid, out, cfg, tuple(profile))


def sweep_decoherence(
    cfg: GameConfig, kind: ChannelKind | str, p_grid: Sequence[float], profile: Sequence[StrategyParams]
) -> SweepResult:
    return sweep(cfg.with_(channel=ChannelKind.parse(kind)), "p", p_grid, profile)


def sweep_entanglement(
    cfg: GameConfig, gamma_grid: Sequence[float], profile: Sequence[StrategyParams]
) -> SweepResult:
    return sweep(cfg.with_(p=0.0, p_prime=0.0), "gamma", gamma_grid, profile)


def phase_damping_closed_form(n1: int, p1: float, n2: int, p2: float, n_players: int) -> float:
    """NE payoff when n1 qubits dephase with p1 and n2 qubits with p2."""
    if n1 < 0 or n2 < 0 or n1 + n2 != n_players:
        raise ValueError(f"n1 + n2 must equal {n_players}, got {n1} + {n2}")
    if n_players % 2:
        raise ValueError("closed form only holds for an even number of players")
    cl = classical_random_payoff(n_players)
    q = quantum_ne_payoff(n_players)
    return cl + (q - cl) * (1 - p1) ** (n1 / 2) * (1 - p2) ** (n2 / 2)


def mod4_profile_payoffs(n_indices: Sequence[int]) -> np.ndarray:
    """Payoffs of the 4-player game when player k plays family member ``n_indices[k]``."""
    if len(n_indices) != 4:
        raise ValueError("the mod-4 rule is stated for exactly four players")
    profile = [ne_strategy(4, n) for n in n_indices]
    return _payoffs(GameConfig(4), profile)


def mod4_profile_payoff(n_indices: Sequence[int]) -> float:
    """Common payoff of the mixed-index 4-player profile (all players score equally)."""
    values = mod4_profile_payoffs(n_indices)
    return float(values.mean())


def ne_profile(n_players: int) -> list[StrategyParams]:
    return [ne_strategy(n_players)] * n_players
