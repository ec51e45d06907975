"""Grover-search baseline: phase oracle, diffuser, iteration schedule, depth model.

The oracle is an X-conjugated MCZ (no ancilla): X every qubit whose target bit
is 0, apply MCZ over all qubits, undo the Xs. The diffuser is the standard
H/X-conjugated MCZ reflection about the uniform state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .statevector import Circuit, Gate

ITERATION_CAP = 100_000  # resource guard; unreachable at desk scale


def iteration_count(n: int) -> int:
    """Canonical optimal schedule k = max(1, floor(pi/4 * sqrt(2^n)))."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    k = int(math.floor(math.pi / 4.0 * math.sqrt(2.0 ** n)))
    return min(max(1, k), ITERATION_CAP)


@dataclass(frozen=True)
class GroverPlan:
    """Full search circuit plus its schedule for one target string."""

    n: int
    target: str
    k: int
    circuit: Circuit


def oracle_gates(target: str) -> list[Gate]:
    """Phase flip of |target> only: X-conjugated MCZ over all qubits."""
    n = len(target)
    flips = [Gate.x(q) for q, bit in enumerate(target) if bit == "0"]
    return flips + [Gate.mcz(range(n))] + list(reversed(flips))


def diffuser_gates(n: int) -> list[Gate]:
    """Reflection about the uniform superposition."""
    hs = [Gate.h(q) for q in range(n)]
    xs = [Gate.x(q) for q in range(n)]
    return hs + xs + [Gate.mcz(range(n))] + xs + hs


def build_grover(target: str) -> GroverPlan:
    if not target or any(ch not in "01" for ch in target):
        raise ValueError(f"target must be a nonempty 0/1 string, got {target!r}")
    n = len(target)
    k = iteration_count(n)
    circuit = Circuit(n)
    circuit.extend(Gate.h(q) for q in range(n))
    for _ in range(k):
        circuit.extend(oracle_gates(target))
        circuit.extend(diffuser_gates(n))
    return GroverPlan(n, target, k, circuit)


def grover_success_ideal(n: int) -> float:
    """Closed-form success probability sin^2((2k+1) asin(2^{-n/2})); target-independent."""
    k = iteration_count(n)
    return math.sin((2 * k + 1) * math.asin(2.0 ** (-n / 2.0))) ** 2


def unit_mcz_cost(m: int) -> int:
    """MCZ counted as one logical layer regardless of control count."""
    return 1


def decomposed_mcz_cost(m: int) -> int:
    """Linear-per-control depth model standing in for transpiled Toffoli cascades."""
    return 1 if m < 2 else 8 * m - 12


def grover_depth(n: int, mcz_depth_cost: Callable[[int], int] = unit_mcz_cost) -> int:
    """Logical depth 1 + k * (D_oracle + D_diffuser) under a pluggable MCZ cost.

    Reported for the generic target (at least one 0 bit, so the oracle's X
    layers are present): D_oracle = 2 + cost(n-1), D_diffuser = 4 + cost(n-1).
    With the default unit cost this is 1 + 8k.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    k = iteration_count(n)
    per_iteration = (2 + mcz_depth_cost(n - 1)) + (4 + mcz_depth_cost(n - 1))
    return 1 + k * per_iteration
