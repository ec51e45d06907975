"""Independent dense-matrix reference implementations used as test oracles.

Everything here is built straight from gate definitions (kron products,
permutation matrices, diagonals) and never calls the package's kernels.
"""

import numpy as np

I2 = np.eye(2, dtype=complex)
X_MAT = np.array([[0, 1], [1, 0]], dtype=complex)
Y_MAT = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z_MAT = np.array([[1, 0], [0, -1]], dtype=complex)
H_MAT = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def ry_mat(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def embed_1q(mat: np.ndarray, q: int, n: int) -> np.ndarray:
    """Full 2^n unitary for a 1-qubit gate; qubit 0 is the least significant bit."""
    ops = [I2] * n
    ops[q] = mat
    full = ops[n - 1]
    for k in range(n - 2, -1, -1):
        full = np.kron(full, ops[k])
    return full


def cnot_matrix(control: int, target: int, n: int) -> np.ndarray:
    dim = 1 << n
    full = np.zeros((dim, dim), dtype=complex)
    for x in range(dim):
        y = x ^ (1 << target) if (x >> control) & 1 else x
        full[y, x] = 1
    return full


def mcz_matrix(qubits, n: int) -> np.ndarray:
    dim = 1 << n
    diag = np.ones(dim, dtype=complex)
    for x in range(dim):
        if all((x >> q) & 1 for q in qubits):
            diag[x] = -1
    return np.diag(diag)


def dense_gate_matrix(gate, n: int) -> np.ndarray:
    """Full unitary of a package Gate, from definitions only."""
    kind = gate.kind
    if kind == "ry":
        return embed_1q(ry_mat(gate.angle), gate.targets[0], n)
    if kind in ("x", "px"):
        return embed_1q(X_MAT, gate.targets[0], n)
    if kind == "h":
        return embed_1q(H_MAT, gate.targets[0], n)
    if kind in ("z", "pz"):
        return embed_1q(Z_MAT, gate.targets[0], n)
    if kind == "py":
        return embed_1q(Y_MAT, gate.targets[0], n)
    if kind == "cnot":
        return cnot_matrix(gate.controls[0], gate.targets[0], n)
    if kind == "mcz":
        return mcz_matrix(gate.qubits, n)
    raise ValueError(kind)


def random_state_array(n: int, rng: np.random.Generator) -> np.ndarray:
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return amps / np.linalg.norm(amps)


def random_gate(n: int, rng: np.random.Generator):
    """A random gate of a random kind, valid for n qubits."""
    from vqsearch.statevector import Gate

    kinds = ["ry", "x", "h", "z", "py"] + (["cnot", "mcz"] if n >= 2 else [])
    kind = kinds[rng.integers(0, len(kinds))]
    q = int(rng.integers(0, n))
    if kind == "ry":
        return Gate.ry(q, rng.uniform(-2 * np.pi, 2 * np.pi))
    if kind == "cnot":
        t = int(rng.integers(0, n - 1))
        t = t + 1 if t >= q else t
        return Gate.cnot(q, t)
    if kind == "mcz":
        size = int(rng.integers(2, n + 1))
        qubits = rng.permutation(n)[:size]
        return Gate.mcz(int(v) for v in qubits)
    if kind == "py":
        return Gate.pauli("Y", q)
    return getattr(Gate, kind)(q)
