"""Dense complex statevector simulator with a small fixed gate set.

Conventions used everywhere in this package: qubit 0 is the least significant
bit of a basis-state index, and bit strings are rendered qubit 0 first
(leftmost character). Amplitudes are complex128; unitarity-sensitive checks
assume the 1e-10 scale that double precision supports.

The gate kernels operate in place on the last axis of an array, so the same
code path serves a single state of shape (2^n,) and a batch of trajectories
of shape (B, 2^n) (used by the noise module).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidGateError

ONE_QUBIT_KINDS = frozenset({"ry", "x", "h", "z", "px", "py", "pz"})

# H and Ry are real; they upcast losslessly when applied to complex states
_H_MATRIX = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
_Y_MATRIX = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)


def _ry_matrix(angle: float) -> np.ndarray:
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]])


# --- bit string helpers ----------------------------------------------------

def index_to_bits(index: int, n: int) -> str:
    """Render basis-state index as a bit string, qubit 0 leftmost."""
    return "".join("1" if (index >> q) & 1 else "0" for q in range(n))


def bits_to_index(bits: str) -> int:
    """Inverse of index_to_bits."""
    index = 0
    for q, ch in enumerate(bits):
        if ch == "1":
            index |= 1 << q
        elif ch != "0":
            raise ValueError(f"bit string must contain only 0/1, got {bits!r}")
    return index


# --- gates and circuits ----------------------------------------------------

@dataclass(frozen=True)
class Gate:
    """One circuit operation; build instances via the factory classmethods.

    ``targets`` and ``controls`` are qubit indices. For MCZ the split is
    cosmetic (the gate is symmetric over controls+targets); ``angle`` is only
    set for Ry and is stored unreduced.
    """

    kind: str
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    angle: float | None = None

    @classmethod
    def ry(cls, target: int, angle: float) -> "Gate":
        return cls("ry", (target,), angle=float(angle))

    @classmethod
    def x(cls, target: int) -> "Gate":
        return cls("x", (target,))

    @classmethod
    def h(cls, target: int) -> "Gate":
        return cls("h", (target,))

    @classmethod
    def z(cls, target: int) -> "Gate":
        return cls("z", (target,))

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls("cnot", (target,), (control,))

    @classmethod
    def mcz(cls, qubits: Iterable[int]) -> "Gate":
        qs = tuple(qubits)
        if not qs:
            raise InvalidGateError("mcz needs at least one qubit")
        return cls("mcz", (qs[-1],), tuple(qs[:-1]))

    @classmethod
    def pauli(cls, axis: str, target: int) -> "Gate":
        kind = {"X": "px", "Y": "py", "Z": "pz"}.get(axis.upper())
        if kind is None:
            raise InvalidGateError(f"unknown Pauli axis {axis!r}")
        return cls(kind, (target,))

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets

    def inverse(self) -> "Gate":
        """All gates in the set are self-inverse except Ry(theta) -> Ry(-theta)."""
        if self.kind == "ry":
            return Gate.ry(self.targets[0], -self.angle)
        return self


def _validate_gate(gate: Gate, n: int) -> None:
    qs = gate.qubits
    if len(set(qs)) != len(qs):
        raise InvalidGateError(f"duplicate qubit in {gate}")
    for q in qs:
        if not 0 <= q < n:
            raise InvalidGateError(f"qubit {q} out of range for n={n}")
    if gate.kind in ONE_QUBIT_KINDS and (len(gate.targets) != 1 or gate.controls):
        raise InvalidGateError(f"{gate.kind} acts on exactly one qubit")
    if gate.kind == "cnot" and (len(gate.controls) != 1 or len(gate.targets) != 1):
        raise InvalidGateError("cnot takes one control and one target")
    if gate.kind == "ry" and not np.isfinite(gate.angle):
        raise InvalidGateError("ry angle must be finite")
    if gate.kind not in ONE_QUBIT_KINDS and gate.kind not in ("cnot", "mcz"):
        raise InvalidGateError(f"unknown gate kind {gate.kind!r}")


@dataclass
class Circuit:
    """Ordered gate list on n qubits. Depth is always recomputed from the list."""

    n: int
    gates: list[Gate] = field(default_factory=list)

    def add(self, gate: Gate) -> "Circuit":
        _validate_gate(gate, self.n)
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self.add(g)
        return self

    def gate_counts(self) -> dict[str, int]:
        return dict(Counter(g.kind for g in self.gates))

    def depth(self, mcz_cost=None) -> int:
        """Logical depth by greedy layering.

        ``mcz_cost(m)`` charges an MCZ with m controls that many layers
        (default 1, i.e. MCZ counted as a single layer).
        """
        level = [0] * self.n
        for g in self.gates:
            cost = 1
            if g.kind == "mcz" and mcz_cost is not None:
                cost = mcz_cost(len(g.controls))
            d = max(level[q] for q in g.qubits) + cost
            for q in g.qubits:
                level[q] = d
        return max(level, default=0)


# --- in-place kernels on the last axis -------------------------------------
#
# Reshaping a C-contiguous array of shape (..., 2^n) to (..., outer, 2, 2^q)
# exposes bit q as the size-2 axis, so single-qubit gates are pure slice
# arithmetic with no index gathers.

def _bit_view(amps: np.ndarray, q: int) -> np.ndarray:
    return amps.reshape(amps.shape[:-1] + (-1, 2, 1 << q))


def _apply_1q_matrix(amps: np.ndarray, mat: np.ndarray, q: int) -> None:
    mat = mat.astype(amps.dtype, copy=False)
    if q <= 3:
        # low qubits: one contiguous gemm against mat (x) I beats strided slicing
        big = np.kron(mat, np.eye(1 << q, dtype=amps.dtype))
        v = amps.reshape(-1, 2 << q)
        v[:] = v @ big.T
    else:
        v = amps.reshape(-1, 2, 1 << q)
        np.matmul(mat, v, out=v)  # gufuncs buffer on overlap, aliasing is safe


def _apply_x(amps: np.ndarray, q: int) -> None:
    v = _bit_view(amps, q)
    a0 = v[..., 0, :].copy()
    v[..., 0, :] = v[..., 1, :]
    v[..., 1, :] = a0


def _apply_y(amps: np.ndarray, q: int) -> None:
    v = _bit_view(amps, q)
    a0 = v[..., 0, :].copy()
    v[..., 0, :] = -1.0j * v[..., 1, :]
    v[..., 1, :] = 1.0j * a0


def _apply_z(amps: np.ndarray, q: int) -> None:
    v = _bit_view(amps, q)
    v[..., 1, :] *= -1.0


def _apply_cnot(amps: np.ndarray, control: int, target: int) -> None:
    hi, lo = (control, target) if control > target else (target, control)
    v = amps.reshape(amps.shape[:-1] + (-1, 2, 1 << (hi - lo - 1), 2, 1 << lo))
    if control > target:
        sub = v[..., 1, :, :, :]  # control bit (hi) = 1; swap target halves
        a0 = sub[..., 0, :].copy()
        sub[..., 0, :] = sub[..., 1, :]
        sub[..., 1, :] = a0
    else:
        sub = v[..., 1, :]  # control bit (lo) = 1
        a0 = sub[..., 0, :, :].copy()
        sub[..., 0, :, :] = sub[..., 1, :, :]
        sub[..., 1, :, :] = a0


_ONES_INDEX_CACHE: dict[tuple[int, tuple[int, ...]], np.ndarray] = {}


def _ones_indices(n: int, qubits: tuple[int, ...]) -> np.ndarray:
    """Indices of basis states with every listed qubit equal to 1."""
    key = (n, qubits)
    cached = _ONES_INDEX_CACHE.get(key)
    if cached is not None:
        return cached
    base = 0
    for q in qubits:
        base |= 1 << q
    rest = [q for q in range(n) if q not in set(qubits)]
    spread = np.zeros(1 << len(rest), dtype=np.intp)
    r = np.arange(1 << len(rest), dtype=np.intp)
    for j, q in enumerate(rest):
        spread |= ((r >> j) & 1) << q
    idx = base | spread
    idx.setflags(write=False)
    _ONES_INDEX_CACHE[key] = idx
    return idx


def _apply_mcz(amps: np.ndarray, qubits: tuple[int, ...]) -> None:
    n = amps.shape[-1].bit_length() - 1
    amps[..., _ones_indices(n, tuple(sorted(qubits)))] *= -1.0


def apply_to_array(amps: np.ndarray, gate: Gate) -> None:
    """Apply a validated gate in place to (..., 2^n) amplitudes."""
    kind = gate.kind
    if kind == "ry":
        _apply_1q_matrix(amps, _ry_matrix(gate.angle), gate.targets[0])
    elif kind in ("x", "px"):
        _apply_x(amps, gate.targets[0])
    elif kind == "h":
        _apply_1q_matrix(amps, _H_MATRIX, gate.targets[0])
    elif kind in ("z", "pz"):
        _apply_z(amps, gate.targets[0])
    elif kind == "py":
        _apply_y(amps, gate.targets[0])
    elif kind == "cnot":
        _apply_cnot(amps, gate.controls[0], gate.targets[0])
    elif kind == "mcz":
        _apply_mcz(amps, gate.qubits)
    else:  # pragma: no cover - rejected by validation
        raise InvalidGateError(f"unknown gate kind {kind!r}")


# --- state ------------------------------------------------------------------

@dataclass
class StateVector:
    """n-qubit state: 2^n complex amplitudes, index bit i = qubit i's value."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n,):
            raise ValueError(
                f"expected {1 << self.n} amplitudes, got shape {self.amplitudes.shape}"
            )

    @classmethod
    def zero(cls, n: int) -> "StateVector":
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n, amps)

    @classmethod
    def from_bits(cls, bits: str) -> "StateVector":
        amps = np.zeros(1 << len(bits), dtype=np.complex128)
        amps[bits_to_index(bits)] = 1.0
        return cls(len(bits), amps)

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate in place and return the state (chainable)."""
    _validate_gate(gate, state.n)
    apply_to_array(state.amplitudes, gate)
    return state


def run_circuit(circuit: Circuit, state: StateVector | None = None) -> StateVector:
    """Run a circuit on |0...0> (or on the given state, mutated in place)."""
    if state is None:
        state = StateVector.zero(circuit.n)
    elif state.n != circuit.n:
        raise InvalidGateError(f"circuit n={circuit.n} vs state n={state.n}")
    for gate in circuit.gates:
        apply_gate(state, gate)
    return state


def probabilities(state: StateVector) -> np.ndarray:
    """Measurement probabilities |amplitude|^2 per basis index."""
    a = state.amplitudes
    return (a.real * a.real + a.imag * a.imag)


def _draw_indices(probs: np.ndarray, shots: int, rng: np.random.Generator) -> np.ndarray:
    cdf = np.cumsum(probs)
    u = rng.random(shots)
    return np.minimum(np.searchsorted(cdf, u, side="right"), len(probs) - 1)


def counts_from_indices(indices: np.ndarray, n: int) -> dict[str, int]:
    values, cnts = np.unique(indices, return_counts=True)
    return {index_to_bits(int(v), n): int(c) for v, c in zip(values, cnts)}


def sample(state: StateVector, shots: int, rng_seed) -> dict[str, int]:
    """Multinomial measurement sample; deterministic for a given seed.

    ``rng_seed`` may be an int, a SeedSequence, or an existing Generator.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    rng = np.random.default_rng(rng_seed)
    return counts_from_indices(_draw_indices(probabilities(state), shots, rng), state.n)
