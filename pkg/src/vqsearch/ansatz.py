"""Shallow Ry/CNOT parameterized circuit with real amplitudes and 3n angles.

Layout: three Ry layers interleaved with two linear CNOT chains
(control i -> target i+1). Angles are layer-major, qubit-ascending, and are
never reduced mod 2*pi. Depth grows linearly with n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .statevector import Circuit, Gate, StateVector, run_circuit


@dataclass(frozen=True)
class AnsatzParams:
    """3n rotation angles: theta[layer*n + q] drives layer's Ry on qubit q."""

    n: int
    theta: tuple[float, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if len(self.theta) != 3 * self.n:
            raise ValueError(f"expected {3 * self.n} angles, got {len(self.theta)}")

    @classmethod
    def from_array(cls, n: int, theta: Sequence[float]) -> "AnsatzParams":
        return cls(n, tuple(float(t) for t in theta))


def build_real_amplitude(params: AnsatzParams) -> Circuit:
    """[Ry layer][CNOT chain][Ry layer][CNOT chain][Ry layer]; chains empty for n=1."""
    n = params.n
    circuit = Circuit(n)
    for layer in range(3):
        for q in range(n):
            circuit.add(Gate.ry(q, params.theta[layer * n + q]))
        if layer < 2:
            for q in range(n - 1):
                circuit.add(Gate.cnot(q, q + 1))
    return circuit


def ansatz_state(params: AnsatzParams) -> StateVector:
    """State prepared from |0...0>; amplitudes are real (Ry and CNOT are real)."""
    return run_circuit(build_real_amplitude(params))


def ansatz_depth(n: int) -> int:
    """Logical depth: 3 Ry layers plus two chains of depth n-1 each."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return 3 if n == 1 else 2 * n + 1


def target_params(target: str) -> AnsatzParams:
    """Closed-form angles preparing |target> exactly: zero layers, then Ry(pi*bit).

    The CNOT chains fix |0...0>, so only the final Ry layer acts.
    """
    n = len(target)
    theta = [0.0] * (2 * n) + [math.pi * int(b) for b in target]
    return AnsatzParams(n, tuple(theta))
