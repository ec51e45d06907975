"""Target-encoding all-Z spin Hamiltonian: construction, spectrum, expectations.

The Hamiltonian is kept as its length-n coefficient vector (entries in
{-1, +1}); the full 2^n x 2^n matrix is never formed. Basis value b maps to
Z eigenvalue 2b - 1, i.e. |0> -> -1 and |1> -> +1. That sign choice is the
single point of truth (``eigval``); nothing else hard-codes it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ResourceLimitError
from .statevector import StateVector, bits_to_index, index_to_bits, probabilities

BRUTE_FORCE_MAX_QUBITS = 20


def eigval(bit: int) -> int:
    """Z eigenvalue of a basis bit under the package-wide sign convention."""
    return 2 * bit - 1


@dataclass(frozen=True)
class OracleHamiltonian:
    """Coefficients h_i in {-1,+1}; unique ground state is the target string."""

    n: int
    h: tuple[int, ...]

    def target(self) -> str:
        """Round-trip back to the bit string that built this Hamiltonian."""
        return "".join("1" if c == -1 else "0" for c in self.h)


def build_oracle(target: str) -> OracleHamiltonian:
    """h_i = -1 where the target bit is 1, +1 where it is 0."""
    if not target or any(ch not in "01" for ch in target):
        raise ValueError(f"target must be a nonempty 0/1 string, got {target!r}")
    return OracleHamiltonian(len(target), tuple(-1 if ch == "1" else 1 for ch in target))


def basis_energy(hamiltonian: OracleHamiltonian, bits: str) -> int:
    """Energy of a computational basis state: sum_i h_i * (2 b_i - 1)."""
    if len(bits) != hamiltonian.n:
        raise ValueError(f"expected {hamiltonian.n} bits, got {len(bits)}")
    return sum(hi * eigval(int(b)) for hi, b in zip(hamiltonian.h, bits))


@lru_cache(maxsize=32)
def _energy_table(h: tuple[int, ...]) -> np.ndarray:
    """Basis energies for all 2^n indices (read-only, cached per coefficient vector)."""
    n = len(h)
    idx = np.arange(1 << n, dtype=np.int64)
    table = np.zeros(1 << n, dtype=np.float64)
    for i, hi in enumerate(h):
        table += hi * (2.0 * ((idx >> i) & 1) - 1.0)
    table.setflags(write=False)
    return table


def energy_table(hamiltonian: OracleHamiltonian) -> np.ndarray:
    return _energy_table(hamiltonian.h)


def expectation_exact(hamiltonian: OracleHamiltonian, state: StateVector) -> float:
    """<state|H|state> from amplitudes; always within [-n, n]."""
    if state.n != hamiltonian.n:
        raise ValueError(f"Hamiltonian n={hamiltonian.n} vs state n={state.n}")
    return float(probabilities(state) @ energy_table(hamiltonian))


def expectation_from_counts(hamiltonian: OracleHamiltonian, counts: dict[str, int]) -> float:
    """Unbiased estimate of the expectation from measurement counts."""
    if not counts:
        raise ValueError("counts map is empty")
    table = energy_table(hamiltonian)
    total = 0.0
    shots = 0
    for bits, c in counts.items():
        if len(bits) != hamiltonian.n:
            raise ValueError(f"count key {bits!r} has wrong length for n={hamiltonian.n}")
        total += c * table[bits_to_index(bits)]
        shots += c
    if shots < 1:
        raise ValueError("total counts must be >= 1")
    return total / shots


def ground_state_bruteforce(hamiltonian: OracleHamiltonian) -> tuple[str, int]:
    """Exhaustive (argmin, min) of basis_energy; the minimum is unique by construction."""
    if hamiltonian.n > BRUTE_FORCE_MAX_QUBITS:
        raise ResourceLimitError(
            f"brute force capped at n={BRUTE_FORCE_MAX_QUBITS}, got {hamiltonian.n}"
        )
    table = energy_table(hamiltonian)
    best = int(np.argmin(table))
    return index_to_bits(best, hamiltonian.n), int(table[best])
