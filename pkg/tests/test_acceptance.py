"""Acceptance gate: one test per criterion, each printing a single pass/fail line.

Run standalone with ``python3 tests/test_acceptance.py`` or through pytest,
where the collected lines are echoed in the terminal summary.
"""
import itertools
import math
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import (  # noqa: E402
    classical_mixed_payoffs,
    deviation_formula,
    fair_coin_payoff,
    tensor_sum_channel,
)
from qminority.channels import ChannelKind, apply_channel_all_qubits, make_channel, verify_cptp  # noqa: E402
from qminority.equilibrium import (  # noqa: E402
    best_response_scan,
    deviation_payoff,
    mod4_profile_payoffs,
    ne_profile,
    strategy_grid,
    sweep_decoherence,
)
from qminority.minority import (  # noqa: E402
    balanced_state_probability,
    classical_random_payoff,
    payoffs,
    quantum_ne_payoff,
    winner_count_distribution,
)
from qminority.protocol import GameConfig, StrategyParams, run_game  # noqa: E402
from qminority.qcore import DensityMatrix  # noqa: E402

PI = math.pi
RESULTS: list[str] = []


def report(k, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_01_four_player_ne_payoff():
    err = np.abs(payoffs(GameConfig(4), ne_profile(4)) - 0.25).max()
    report(1, err < 1e-10, f"N=4 NE payoff 1/4, max error {err:.1e}")


def test_criterion_02_six_player_ne_payoff():
    rho = run_game(GameConfig(6), ne_profile(6))
    err = np.abs(payoffs(GameConfig(6), ne_profile(6)) - 0.3125).max()
    two = winner_count_distribution(np.real(np.diag(rho.matrix)), 6)[2]
    ok = err < 1e-10 and abs(two - 15 / 16) < 1e-10
    report(2, ok, f"N=6 NE payoff 5/16 (error {err:.1e}), P(two winners)={two:.12f}")


def test_criterion_03_eight_player_matches_seven_player_classical():
    ref = float(fair_coin_payoff(7))
    err = np.abs(payoffs(GameConfig(8), ne_profile(8)) - ref).max()
    ok = err < 1e-10 and ref == 11 / 32 and abs(quantum_ne_payoff(8) - ref) < 1e-15
    report(3, ok, f"N=8 NE payoff vs enumerated 7-player value {ref}, error {err:.1e}")


def test_criterion_04_deviation_formula():
    cfg, prof = GameConfig(4), ne_profile(4)
    err = 0.0
    for t, a, b in itertools.product(np.linspace(0, PI, 9), np.linspace(-PI, PI, 9), np.linspace(-PI, PI, 9)):
        err = max(err, abs(deviation_payoff(cfg, prof, 0, StrategyParams(t, a, b)) - deviation_formula(t, a, b)))
    report(4, err < 1e-10, f"deviation payoff vs closed form on 9^3 grid, max error {err:.1e}")


def test_criterion_05_phase_damping_closed_form():
    grid = np.linspace(0, 1, 21)
    err = 0.0
    for n in (4, 6):
        cl, q = classical_random_payoff(n), quantum_ne_payoff(n)
        got = sweep_decoherence(GameConfig(n), "phase-damping", grid, ne_profile(n)).payoffs
        expected = cl + (q - cl) * (1 - grid) ** (n / 2)
        err = max(err, np.abs(got - expected[:, None]).max())
    ends = sweep_decoherence(GameConfig(4), "phase-damping", [0.0, 1.0], ne_profile(4)).column(0)
    ok = err < 1e-9 and abs(ends[0] - 0.25) < 1e-9 and abs(ends[1] - 0.125) < 1e-9
    report(5, ok, f"dephasing sweeps N=4,6 at 21 points, max error {err:.1e}, N=4 ends {ends[0]:.4f}->{ends[1]:.4f}")


def test_criterion_06_balanced_state_extinction():
    worst = 0.0
    for n, idx in itertools.product((4, 6, 8), (0, 1)):
        worst = max(worst, balanced_state_probability(n, (4 * idx + 1) * PI / (4 * n)))
    spread = 0.0
    for n in (4, 6, 8):
        ratios = []
        for delta in np.linspace(0, PI / 2, 32):
            denom = 1 - math.sin(2 * n * delta)
            if denom > 1e-6:
                ratios.append(balanced_state_probability(n, delta) / denom)
        spread = max(spread, max(ratios) - min(ratios))
    ok = worst < 1e-12 and spread < 1e-9
    report(6, ok, f"balanced probability on family {worst:.1e}, ratio to 1-sin(2N delta) spread {spread:.1e}")


def test_criterion_07_mod4_rule():
    expected = {0: 0.25, 1: 0.125, 2: 0.0, 3: 0.125}
    err, values = 0.0, []
    for idx in itertools.product(range(4), repeat=4):
        got = mod4_profile_payoffs(idx)
        err = max(err, np.abs(got - expected[sum(idx) % 4]).max())
        values.append(got[0])
    mean = float(np.mean(values))
    ok = err < 1e-10 and abs(mean - 0.125) < 1e-10
    report(7, ok, f"256 index assignments, max error {err:.1e}, mean payoff {mean:.12f}")


def test_criterion_08_ne_survives_dephasing():
    gains = [best_response_scan(GameConfig(4, channel="phase-damping", p=p), ne_profile(4), grid_n=17).gain for p in (0.0, 0.3, 0.7)]
    report(8, max(gains) <= 1e-9, "grid-17 best-response gains at p=0,0.3,0.7: " + ", ".join(f"{g:.1e}" for g in gains))


def test_criterion_09_flip_structure():
    grid = np.linspace(0, 1, 21)
    pf = sweep_decoherence(GameConfig(4), "phase-flip", grid, ne_profile(4)).payoffs
    asym = np.abs(pf - pf[::-1]).max()
    bf = np.abs(payoffs(GameConfig(4, channel="bit-flip", p=1.0), ne_profile(4))).max()
    alt = payoffs(GameConfig(4, channel="bit-flip", p=1.0), [StrategyParams(PI / 2, PI / 16, -PI / 16)] * 4)
    alt_err = np.abs(alt - 0.25).max()
    ok = asym < 1e-10 and bf < 1e-9 and alt_err < 1e-9
    report(9, ok, f"phase-flip asymmetry {asym:.1e}, bit-flip p=1 payoff {bf:.1e}, flipped profile error {alt_err:.1e}")


def test_criterion_10_odd_players_gain_nothing():
    excess = {}
    for n in (3, 5):
        cfg = GameConfig(n)
        best = max(payoffs(cfg, [s] * n)[0] for s in strategy_grid(17))
        excess[n] = best - classical_random_payoff(n)
    ok = max(excess.values()) <= 1e-9
    report(10, ok, "17^3 symmetric scan, best minus classical: " + ", ".join(f"N={n} {e:.1e}" for n, e in excess.items()))


def _structural_errors():
    rng = np.random.default_rng(11)
    cptp = all(verify_cptp(make_channel(kind, p)).ok for kind in ChannelKind for p in (0.0, 0.3, 0.7, 1.0))

    tensor = 0.0
    for n in (2, 3):
        a = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
        m = a @ a.conj().T
        m /= np.trace(m)
        for kind in ChannelKind:
            ch = make_channel(kind, 0.37)
            got = apply_channel_all_qubits(DensityMatrix(m), ch).matrix
            tensor = max(tensor, np.abs(got - tensor_sum_channel(m, ch.operators, n)).max())

    disent, spread = 0.0, 0.0
    for kind in ChannelKind:
        prof = [StrategyParams(rng.uniform(0, PI), rng.uniform(-PI, PI), rng.uniform(-PI, PI)) for _ in range(4)]
        cfg = GameConfig(4, gamma=1.1, channel=kind, p=0.4)
        disent = max(disent, np.abs(payoffs(cfg, prof) - payoffs(cfg.with_(apply_disentangler=True), prof)).max())
        for n in (4, 5):
            spread = max(spread, np.ptp(payoffs(GameConfig(n, gamma=0.9, channel=kind, p=0.4), [prof[0]] * n)))

    classical = 0.0
    for n in (2, 3, 4, 5):
        angles = rng.uniform(0, PI, size=n)
        got = payoffs(GameConfig(n, gamma=0), [StrategyParams(t) for t in angles])
        classical = max(classical, np.abs(got - classical_mixed_payoffs(np.sin(angles / 2) ** 2)).max())
    return cptp, tensor, disent, spread, classical


def test_criterion_11_structural_suite():
    cptp, tensor, disent, spread, classical = _structural_errors()
    ok = cptp and tensor < 1e-12 and disent < 1e-12 and spread < 1e-12 and classical < 1e-10
    detail = (
        f"CPTP {'ok' if cptp else 'broken'}, tensor-sum {tensor:.1e}, disentangler {disent:.1e}, "
        f"symmetric spread {spread:.1e}, gamma=0 vs classical {classical:.1e}"
    )
    report(11, ok, detail)


def advantage_lost(n, p):
    """Share of the quantum-over-classical margin destroyed by depolarizing noise."""
    q, cl = quantum_ne_payoff(n), classical_random_payoff(n)
    return (q - payoffs(GameConfig(n, channel="depolarizing", p=p), ne_profile(n))[0]) / (q - cl)


def test_criterion_12_depolarizing_fragility():
    drops = [advantage_lost(n, 0.1) for n in (4, 6, 8)]
    monotone = True
    for n in (4, 6, 8):
        col = sweep_decoherence(GameConfig(n), "depolarizing", np.linspace(0, 1, 21), ne_profile(n)).column(0)
        monotone &= bool(np.all(np.diff(col) <= 1e-12)) and abs(col[0] - quantum_ne_payoff(n)) < 1e-10
    ok = drops[0] < drops[1] < drops[2] and monotone
    report(12, ok, "advantage lost at p=0.1 for N=4,6,8: " + ", ".join(f"{d:.4f}" for d in drops) + ", sweeps non-increasing")


@pytest.mark.xfail(strict=True, reason="payoff drop divided by the noiseless payoff dips at N=8 (0.2848, 0.2870, 0.2777)")
def test_drop_over_quantum_payoff_is_not_monotone():
    rel = []
    for n in (4, 6, 8):
        q = quantum_ne_payoff(n)
        rel.append((q - payoffs(GameConfig(n, channel="depolarizing", p=0.1), ne_profile(n))[0]) / q)
    assert rel[0] < rel[1] < rel[2]


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
