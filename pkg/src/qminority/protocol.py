"""Eisert-protocol game pipeline with decoherence before and after the moves.

Stages: prepare |0...0>, entangle with J(gamma), decohere with p, apply the
players' local moves, decohere with p', optionally undo the entangler, then
read payoffs off the computational-basis diagonal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence, Union

import numpy as np

from .channels import ChannelKind, apply_channel_per_qubit, make_channel
from .qcore import (
    SX,
    DensityMatrix,
    StateVector,
    apply_local,
    apply_product,
    computational_probabilities,
    kron_all,
)

_RANGE_SLACK = 1e-12

Probability = Union[float, Sequence[float]]


def _check_range(name: str, value: float, lo: float, hi: float) -> None:
    if not (lo - _RANGE_SLACK <= value <= hi + _RANGE_SLACK):
        raise ValueError(f"{name}={value!r} outside [{lo:.6g}, {hi:.6g}]")


@dataclass(frozen=True)
class StrategyParams:
    """Angles of one player's SU(2) move ``M(theta, alpha, beta)``."""

    theta: float
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        for name in ("theta", "alpha", "beta"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _check_range("theta", self.theta, 0.0, math.pi)
        _check_range("alpha", self.alpha, -math.pi, math.pi)
        _check_range("beta", self.beta, -math.pi, math.pi)

    def astuple(self) -> tuple[float, float, float]:
        return (self.theta, self.alpha, self.beta)


def strategy_operator(s: StrategyParams) -> np.ndarray:
    c = math.cos(s.theta / 2)
    sn = math.sin(s.theta / 2)
    return np.array(
        [
            [np.exp(1j * s.alpha) * c, 1j * np.exp(1j * s.beta) * sn],
            [1j * np.exp(-1j * s.beta) * sn, np.exp(-1j * s.alpha) * c],
        ],
        dtype=np.complex128,
    )


def entangler(gamma: float, n: int) -> np.ndarray:
    """``exp(i gamma/2 X^(n))``, using ``(X^(n))^2 = I``."""
    _check_range("gamma", gamma, 0.0, math.pi / 2)
    xs = kron_all([SX] * n)
    return math.cos(gamma / 2) * np.eye(2**n, dtype=np.complex128) + 1j * math.sin(gamma / 2) * xs


def _as_probs(p: Probability, n: int, name: str) -> tuple[float, ...]:
    if np.ndim(p) == 0:
        probs = (float(p),) * n
    else:
        probs = tuple(float(x) for x in p)
        if len(probs) != n:
            raise ValueError(f"{name} needs {n} per-qubit values, got {len(probs)}")
    for x in probs:
        _check_range(name, x, 0.0, 1.0)
    return probs


@dataclass(frozen=True)
class GameConfig:
    """One game instance.

    ``p`` and ``p_prime`` are either one probability for every qubit or a
    per-qubit sequence. ``p_prime`` defaults to ``p``.
    """

    players: int
    gamma: float = math.pi / 2
    channel: ChannelKind = ChannelKind.IDENTITY
    p: Probability = 0.0
    p_prime: Probability | None = None
    apply_disentangler: bool = False
    p_probs: tuple = field(init=False, repr=False, compare=False)
    p_prime_probs: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.players) != self.players or self.players < 2:
            raise ValueError(f"need at least 2 players, got {self.players}")
        object.__setattr__(self, "players", int(self.players))
        object.__setattr__(self, "channel", ChannelKind.parse(self.channel))
        _check_range("gamma", self.gamma, 0.0, math.pi / 2)
        for name in ("p", "p_prime"):
            value = getattr(self, name)
            if value is not None and np.ndim(value) > 0:
                object.__setattr__(self, name, tuple(float(x) for x in value))
        if self.p_prime is None:
            object.__setattr__(self, "p_prime", self.p)
        object.__setattr__(self, "p_probs", _as_probs(self.p, self.players, "p"))
        object.__setattr__(self, "p_prime_probs", _as_probs(self.p_prime, self.players, "p_prime"))

    def with_(self, **changes) -> "GameConfig":
        """Copy with changes; changing ``p`` alone keeps ``p_prime`` tracking it."""
        if "p" in changes and "p_prime" not in changes and self.p_prime == self.p:
            changes["p_prime"] = None
        return replace(self, **changes)


def initial_state(n: int) -> DensityMatrix:
    return DensityMatrix.basis(0, n)


def decohere(rho: DensityMatrix, kind: ChannelKind, probs: Sequence[float]) -> DensityMatrix:
    if kind is ChannelKind.IDENTITY or not any(probs):
        return rho
    return apply_channel_per_qubit(rho, [make_channel(kind, q) for q in probs])


def entangled_state(cfg: GameConfig) -> DensityMatrix:
    """State after the entangler and the first decoherence stage."""
    j = entangler(cfg.gamma, cfg.players)
    rho = initial_state(cfg.players)
    rho = DensityMatrix(j @ rho.matrix @ j.conj().T)
    return decohere(rho, cfg.channel, cfg.p_probs)


def finish_game(cfg: GameConfig, rho: DensityMatrix) -> DensityMatrix:
    """Second decoherence stage and optional disentangler."""
    rho = decohere(rho, cfg.channel, cfg.p_prime_probs)
    if cfg.apply_disentangler:
        j = entangler(cfg.gamma, cfg.players)
        rho = DensityMatrix(j.conj().T @ rho.matrix @ j)
    return rho


def run_game_operators(cfg: GameConfig, operators: Sequence[np.ndarray]) -> DensityMatrix:
    """Run the pipeline with explicit 2x2 move matrices."""
    if len(operators) != cfg.players:
        raise ValueError(f"expected {cfg.players} moves, got {len(operators)}")
    rho = entangled_state(cfg)
    rho = DensityMatrix(apply_product(rho.matrix, [np.asarray(u) for u in operators]))
    return finish_game(cfg, rho)


def run_game(cfg: GameConfig, strategies: Sequence[StrategyParams]) -> DensityMatrix:
    if len(strategies) != cfg.players:
        raise ValueError(f"expected {cfg.players} strategies, got {len(strategies)}")
    return run_game_operators(cfg, [strategy_operator(s) for s in strategies])


def run_game_pure(gamma: float, strategies: Sequence[StrategyParams]) -> StateVector:
    """Noiseless statevector version of the pipeline, without the disentangler."""
    n = len(strategies)
    psi = StateVector.zero(n).evolve(entangler(gamma, n))
    return psi.evolve(kron_all([strategy_operator(s) for s in strategies]))


def expected_payoffs(rho: DensityMatrix, table) -> np.ndarray:
    """Per-player payoff expectation for ``table`` (a :class:`PayoffTable`)."""
    values = np.asarray(table.values, dtype=float)
    if values.shape[0] != rho.dim:
        raise ValueError(f"payoff table has {values.shape[0]} outcomes, state has {rho.dim}")
    return computational_probabilities(rho) @ values


def apply_move(rho: DensityMatrix, op: np.ndarray, k: int) -> DensityMatrix:
    return DensityMatrix(apply_local(rho.matrix, op, k, rho.n_qubits))
