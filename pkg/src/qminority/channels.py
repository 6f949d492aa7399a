"""Single-qubit decoherence channels in Kraus form."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .qcore import I2, SX, SY, SZ, DensityMatrix, apply_local

COMPLETENESS_TOL = 1e-12


class ChannelKind(enum.Enum):
    PHASE_DAMPING = "phase-damping"
    DEPOLARIZING = "depolarizing"
    BIT_FLIP = "bit-flip"
    PHASE_FLIP = "phase-flip"
    BIT_PHASE_FLIP = "bit-phase-flip"
    AMPLITUDE_DAMPING = "amplitude-damping"
    IDENTITY = "none"

    @classmethod
    def parse(cls, name: "str | ChannelKind") -> "ChannelKind":
        """Case-insensitive lookup by CLI name, enum name or CamelCase name.

        ``"PhaseDamping"``, ``"phase_damping"`` and ``"phase-damping"`` all
        resolve to :attr:`PHASE_DAMPING`; ``"identity"`` is an alias of ``"none"``.
        """
        if isinstance(name, cls):
            return name
        key = "".join(ch for ch in str(name).lower() if ch.isalnum())
        for kind in cls:
            if key in (kind.value.replace("-", ""), kind.name.lower().replace("_", "")):
                return kind
        raise ValueError(
            f"unknown channel {name!r}; expected one of {', '.join(k.value for k in cls)}"
        )


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A single-qubit map ``rho -> sum_j E_j rho E_j^dag``.

    ``kind`` is None for hand-built operator sets. Completeness is not
    enforced here (see :func:`verify_cptp`); :func:`make_channel` always
    returns complete sets.
    """

    operators: tuple
    kind: ChannelKind | None = None
    p: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"probability {self.p} outside [0, 1]")
        ops = []
        for op in self.operators:
            a = np.array(op, dtype=np.complex128)
            if a.shape != (2, 2):
                raise ValueError(f"Kraus operators must be 2x2, got {a.shape}")
            a.setflags(write=False)
            ops.append(a)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        object.__setattr__(self, "operators", tuple(ops))

    def completeness_error(self) -> float:
        s = sum(e.conj().T @ e for e in self.operators)
        return float(np.abs(s - I2).max())

    def apply_single(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho)
        return sum(e @ rho @ e.conj().T for e in self.operators)


def make_channel(kind: ChannelKind | str, p: float) -> KrausChannel:
    """Kraus operators for ``kind`` at probability ``p``.

    Phase damping uses ``{diag(1, sqrt(1-p)), diag(0, sqrt(p))}`` so each
    application scales single-qubit coherences by ``sqrt(1-p)``. Depolarizing
    is ``rho -> p I/2 + (1-p) rho``. Flip channels apply their Pauli with
    probability ``p``.
    """
    kind = ChannelKind.parse(kind)
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    q = np.sqrt(1.0 - p)
    r = np.sqrt(p)
    if kind is ChannelKind.IDENTITY:
        ops = [I2]
    elif kind is ChannelKind.PHASE_DAMPING:
        ops = [np.diag([1.0, q]), np.diag([0.0, r])]
    elif kind is ChannelKind.DEPOLARIZING:
        w = np.sqrt(p / 4.0)
        ops = [np.sqrt(1.0 - 3.0 * p / 4.0) * I2, w * SX, w * SY, w * SZ]
    elif kind is ChannelKind.BIT_FLIP:
        ops = [q * I2, r * SX]
    elif kind is ChannelKind.PHASE_FLIP:
        ops = [q * I2, r * SZ]
    elif kind is ChannelKind.BIT_PHASE_FLIP:
        ops = [q * I2, r * SY]
    else:
        ops = [np.array([[1.0, 0.0], [0.0, q]]), np.array([[0.0, r], [0.0, 0.0]])]
    return KrausChannel(tuple(ops), kind, p)


def apply_channel_on_qubit(m: np.ndarray, ch: KrausChannel, k: int, n: int) -> np.ndarray:
    return sum(apply_local(m, e, k, n) for e in ch.operators)


def apply_channel_all_qubits(rho: DensityMatrix, ch: KrausChannel) -> DensityMatrix:
    """Apply ``ch`` independently to every qubit, qubit 0 first."""
    if ch.kind is ChannelKind.IDENTITY:
        return rho
    n = rho.n_qubits
    m = rho.matrix
    for k in range(n):
        m = apply_channel_on_qubit(m, ch, k, n)
    return DensityMatrix(m)


def apply_channel_per_qubit(rho: DensityMatrix, channels: Sequence[KrausChannel]) -> DensityMatrix:
    """Apply ``channels[k]`` to qubit ``k``; lets each qubit carry its own ``p``."""
    n = rho.n_qubits
    if len(channels) != n:
        raise ValueError(f"need {n} channels, got {len(channels)}")
    m = rho.matrix
    for k, ch in enumerate(channels):
        if ch.kind is not ChannelKind.IDENTITY:
            m = apply_channel_on_qubit(m, ch, k, n)
    return DensityMatrix(m)


@dataclass(frozen=True)
class CPTPReport:
    completeness_error: float
    trace_error: float
    samples: int

    @property
    def ok(self) -> bool:
        return self.completeness_error <= COMPLETENESS_TOL and self.trace_error < COMPLETENESS_TOL


def random_qubit_density(rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    m = g @ g.conj().T
    return m / np.trace(m)


def verify_cptp(ch: KrausChannel, samples: int = 10, seed: int = 0) -> CPTPReport:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        out = ch.apply_single(random_qubit_density(rng))
        worst = max(worst, abs(np.trace(out) - 1.0))
    return CPTPReport(ch.completeness_error(), float(worst), samples)
