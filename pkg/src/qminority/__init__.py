"""Quantum Minority game simulator: Eisert protocol with per-qubit decoherence."""

__version__ = "0.1.0"

from .channels import ChannelKind, KrausChannel, apply_channel_all_qubits, make_channel, verify_cptp
from .equilibrium import (
    DeviationReport,
    SweepResult,
    best_response_scan,
    deviation_payoff,
    mod4_profile_payoff,
    ne_profile,
    phase_damping_closed_form,
    sweep_decoherence,
    sweep_entanglement,
)
from .minority import (
    NEFamilyPoint,
    PayoffTable,
    balanced_state_probability,
    classical_random_payoff,
    minority_table,
    ne_strategy,
    pareto_payoff,
    payoffs,
    quantum_ne_payoff,
)
from .protocol import GameConfig, StrategyParams, entangler, expected_payoffs, run_game, strategy_operator
from .qcore import DensityMatrix, computational_probabilities, conjugate_by, validate_density
