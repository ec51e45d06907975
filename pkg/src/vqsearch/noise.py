"""Stochastic Pauli-injection trajectories plus readout bit flips.

Each shot is one pure-state trajectory: after every 1-qubit gate an X/Y/Z is
injected on its target with probability p1; after every CNOT one of the 15
non-identity two-qubit Pauli pairs hits (control, target) with probability p2;
an MCZ over m controls is charged ``mcz_cnot_cost(m)`` two-qubit error steps
on random qubit pairs from its support. Measurement then flips each readout
bit independently with probability p_ro.

Trajectories for one counts call are advanced as a (shots, 2^n) batch: gates
are applied to the whole batch at once, and the injections a row accrues after
a gate are composed into a single net Pauli (X-parts and Z-parts accumulate by
XOR; ordering only contributes a per-trajectory global phase, which
measurement cannot see). For the same reason the batch is tracked in real
float64 unless the circuit itself contains an explicit PauliY gate. With all
rates zero no random draws happen before measurement, so results reduce
bit-exactly to ideal sampling under the same seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .statevector import (
    Circuit,
    Gate,
    apply_to_array,
    counts_from_indices,
    run_circuit,
    sample,
)

_BATCH_ELEMENT_CAP = 1 << 21  # max entries per trajectory batch (16 MiB float64)


def default_mcz_cnot_cost(m: int) -> int:
    """Equivalent-CNOT count for an MCZ with m controls: quadratic ancilla-free model."""
    return 1 if m <= 1 else 4 * m * m


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing-style rates; all zero reproduces ideal simulation bit-exactly."""

    p1: float = 1e-3
    p2: float = 1e-2
    p_ro: float = 2e-2
    mcz_cnot_cost: Callable[[int], int] = default_mcz_cnot_cost
    rng_seed: int | None = None

    def __post_init__(self):
        for name in ("p1", "p2", "p_ro"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p}")

    @property
    def is_noiseless(self) -> bool:
        return self.p1 == 0.0 and self.p2 == 0.0 and self.p_ro == 0.0


@dataclass
class TrajectoryStats:
    """Bookkeeping for tests: how many shots saw no injection and no readout flip."""

    shots: int = 0
    error_free: int = 0

    @property
    def error_free_fraction(self) -> float:
        return self.error_free / self.shots if self.shots else 0.0


_SIGN_CACHE: dict[int, np.ndarray] = {}


def _sign_table(n: int) -> np.ndarray:
    """(-1)^popcount(v) for v in [0, 2^n)."""
    table = _SIGN_CACHE.get(n)
    if table is None:
        idx = np.arange(1 << n, dtype=np.int64)
        parity = np.zeros(1 << n, dtype=np.int64)
        for k in range(n):
            parity ^= (idx >> k) & 1
        table = 1.0 - 2.0 * parity
        table.setflags(write=False)
        _SIGN_CACHE[n] = table
    return table


def _axes_to_masks(axes: np.ndarray, qubits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-event X/Z bit masks for Pauli axis codes (0=I, 1=X, 2=Y, 3=Z)."""
    x = (((axes == 1) | (axes == 2)).astype(np.int64)) << qubits
    z = (((axes == 2) | (axes == 3)).astype(np.int64)) << qubits
    return x, z


def _apply_net_paulis(amps: np.ndarray, rows: np.ndarray,
                      f: np.ndarray, g: np.ndarray) -> None:
    """Apply X^f Z^g (up to global phase) to the given rows in one gather."""
    live = (f | g) != 0
    if not live.any():
        return
    rows, f, g = rows[live], f[live], g[live]
    dim = amps.shape[-1]
    signs = _sign_table(dim.bit_length() - 1)
    idx = np.arange(dim, dtype=np.int64)[None, :] ^ f[:, None]
    amps[rows] = signs[idx & g[:, None]] * amps[rows[:, None], idx]


def _inject_after_gate(amps: np.ndarray, gate: Gate, model: NoiseModel,
                       rng: np.random.Generator, clean: np.ndarray) -> None:
    batch = amps.shape[0]
    support = gate.qubits
    if gate.kind == "cnot" or (gate.kind == "mcz" and len(support) >= 2):
        if model.p2 == 0.0:
            return
        steps = 1 if gate.kind == "cnot" else model.mcz_cnot_cost(len(support) - 1)
        if steps == 1:
            events = (rng.random(batch) < model.p2).astype(np.int64)
        else:
            events = rng.binomial(steps, model.p2, size=batch)
        rows = np.nonzero(events)[0]
        if rows.size == 0:
            return
        clean[rows] = False
        per_row = events[rows]
        total = int(per_row.sum())
        codes = rng.integers(1, 16, size=total)
        if gate.kind == "cnot":
            qa = np.full(total, support[0])
            qb = np.full(total, support[1])
        else:
            pool = np.asarray(support)
            ia = rng.integers(0, pool.size, size=total)
            ib = (ia + rng.integers(1, pool.size, size=total)) % pool.size
            qa, qb = pool[ia], pool[ib]
        fa, ga = _axes_to_masks(codes // 4, qa)
        fb, gb = _axes_to_masks(codes % 4, qb)
        starts = np.zeros(rows.size, dtype=np.int64)
        np.cumsum(per_row[:-1], out=starts[1:])
        f = np.bitwise_xor.reduceat(fa ^ fb, starts)
        g = np.bitwise_xor.reduceat(ga ^ gb, starts)
        _apply_net_paulis(amps, rows, f, g)
    else:  # every 1-qubit gate, including a degenerate single-qubit MCZ (= Z)
        if model.p1 == 0.0:
            return
        rows = np.nonzero(rng.random(batch) < model.p1)[0]
        if rows.size == 0:
            return
        clean[rows] = False
        axes = rng.integers(1, 4, size=rows.size)
        f, g = _axes_to_masks(axes, np.full(rows.size, support[-1]))
        _apply_net_paulis(amps, rows, f, g)


def _measure_batch(amps: np.ndarray, model: NoiseModel, rng: np.random.Generator,
                   clean: np.ndarray, n: int) -> np.ndarray:
    if np.iscomplexobj(amps):
        weights = amps.real ** 2 + amps.imag ** 2
    else:
        weights = amps * amps
    cdf = np.cumsum(weights, axis=1)
    u = rng.random(amps.shape[0])
    indices = np.minimum((cdf <= u[:, None]).sum(axis=1), amps.shape[1] - 1)
    if model.p_ro > 0.0:
        flips = rng.random((amps.shape[0], n)) < model.p_ro
        clean &= ~flips.any(axis=1)
        weights = (1 << np.arange(n)).astype(np.int64)
        indices = indices ^ (flips @ weights)
    return indices


def _run_batch(circuit: Circuit, model: NoiseModel, batch: int,
               rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    dtype = np.complex128 if any(g.kind == "py" for g in circuit.gates) else np.float64
    amps = np.zeros((batch, 1 << circuit.n), dtype=dtype)
    amps[:, 0] = 1.0
    clean = np.ones(batch, dtype=bool)
    for gate in circuit.gates:
        apply_to_array(amps, gate)
        _inject_after_gate(amps, gate, model, rng, clean)
    return _measure_batch(amps, model, rng, clean, circuit.n), clean


def run_noisy_counts(circuit: Circuit, model: NoiseModel, shots: int,
                     rng_seed=None, stats: TrajectoryStats | None = None) -> dict[str, int]:
    """Aggregate ``shots`` independent noisy trajectories into a counts map.

    Deterministic for a given seed (``rng_seed`` falls back to model.rng_seed).
    Pass a TrajectoryStats to also collect the error-free shot tally.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    seed = rng_seed if rng_seed is not None else model.rng_seed
    if model.is_noiseless:
        counts = sample(run_circuit(circuit), shots, seed)
        if stats is not None:
            stats.shots += shots
            stats.error_free += shots
        return counts
    rng = np.random.default_rng(seed)
    chunk = max(1, _BATCH_ELEMENT_CAP >> circuit.n)
    all_indices = []
    remaining = shots
    while remaining > 0:
        batch = min(chunk, remaining)
        indices, clean = _run_batch(circuit, model, batch, rng)
        all_indices.append(indices)
        if stats is not None:
            stats.shots += batch
            stats.error_free += int(clean.sum())
        remaining -= batch
    return counts_from_indices(np.concatenate(all_indices), circuit.n)


def run_noisy_trajectory(circuit: Circuit, model: NoiseModel, rng_seed=None) -> str:
    """One noisy shot; with all rates zero this equals ideal 1-shot sampling per seed."""
    counts = run_noisy_counts(circuit, model, 1, rng_seed)
    return next(iter(counts))
