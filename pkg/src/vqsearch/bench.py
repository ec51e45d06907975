"""Experiment runner wiring oracle, ansatz, optimizers, Grover and noise.

Every run is reproducible from (config, seed): targets, initial angles,
optimizer perturbations, objective-estimation shots and final measurements
each draw from their own deterministic seed stream, so target selection never
couples to optimizer randomness.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field, replace
from typing import Sequence

import numpy as np

from .ansatz import AnsatzParams, ansatz_depth, build_real_amplitude
from .errors import ConfigError, ResourceLimitError
from .grover import build_grover, decomposed_mcz_cost, grover_depth
from .noise import NoiseModel, run_noisy_counts
from .optimize import Objective, OptTrace, iteration_budget, one_eval_minimize, spsa_minimize
from .oracle import build_oracle, expectation_exact, expectation_from_counts
from .statevector import Circuit, run_circuit, sample
from .tables import CURVE_HEADER, DEPTH_HEADER, SWEEP_HEADER, Table

MAX_QUBITS = 14

MODES = ("vqe", "grover")
BACKENDS = ("ideal", "noisy")
OPTIMIZERS = ("spsa", "one_eval")
PROFILES = ("simulation", "hardware")

# seed-stream tags (first element of every SeedSequence spawn key)
_TAG_TARGETS, _TAG_THETA0, _TAG_OPT, _TAG_EVAL, _TAG_FINAL, _TAG_CURVE = range(6)


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str = "vqe"
    backend: str = "ideal"
    n: int | None = None
    target: str | None = None
    trials: int = 10
    seed: int = 0
    shots_eval: int = 1024
    shots_final: int = 4096
    optimizer: str = "spsa"
    profile: str = "simulation"
    exact_objective: bool = False
    max_iterations: int | None = None
    p1: float = 1e-3
    p2: float = 1e-2
    p_ro: float = 2e-2

    def validated(self) -> "ExperimentConfig":
        """Check consistency and resolve n from the target; raises ConfigError."""
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.backend not in BACKENDS:
            raise ConfigError(f"backend must be one of {BACKENDS}, got {self.backend!r}")
        if self.optimizer not in OPTIMIZERS:
            raise ConfigError(f"optimizer must be one of {OPTIMIZERS}, got {self.optimizer!r}")
        if self.profile not in PROFILES:
            raise ConfigError(f"profile must be one of {PROFILES}, got {self.profile!r}")
        n = self.n
        if self.target is not None:
            if not self.target or any(ch not in "01" for ch in self.target):
                raise ConfigError(f"target must be a nonempty 0/1 string, got {self.target!r}")
            if n is not None and n != len(self.target):
                raise ConfigError(f"n={n} contradicts target of length {len(self.target)}")
            n = len(self.target)
        if n is None:
            raise ConfigError("either n or target is required")
        if n < 1:
            raise ConfigError(f"need n >= 1, got {n}")
        if n > MAX_QUBITS:
            raise ResourceLimitError(f"statevector runs are capped at n={MAX_QUBITS}, got {n}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.shots_eval < 1 or self.shots_final < 1:
            raise ConfigError("shot counts must be >= 1")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ConfigError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.exact_objective and self.backend != "ideal":
            raise ConfigError("exact_objective requires the ideal backend")
        for name in ("p1", "p2", "p_ro"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {p}")
        return replace(self, n=n)


@dataclass
class RunRecord:
    """Full trace of one experiment; bit-identical for identical config+seed
    (wall_clock_seconds excluded)."""

    config: dict
    mode: str
    backend: str
    n: int
    target: str
    trace_nfev: list[int]
    trace_expectation: list[float]
    best_theta: list[float]
    total_nfev: int
    setup_nfev: int
    total_iterations: int
    final_counts: dict[str, int]
    success_probability: float
    depth: dict[str, int]
    wall_clock_seconds: float

    def to_dict(self) -> dict:
        return asdict(self)

    def comparable_dict(self) -> dict:
        d = self.to_dict()
        d.pop("wall_clock_seconds")
        return d

    def trace_table(self) -> Table:
        return Table(("nfev", "expectation"),
                     [(i, float(v)) for i, v in zip(self.trace_nfev, self.trace_expectation)])


# --- seed streams -------------------------------------------------------------

_MODE_IDS = {m: i for i, m in enumerate(MODES)}
_BACKEND_IDS = {b: i for i, b in enumerate(BACKENDS)}


def _stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


def _trial_key(config: ExperimentConfig, trial: int) -> tuple[int, ...]:
    return (config.n, _MODE_IDS[config.mode], _BACKEND_IDS[config.backend], trial)


def draw_targets(seed: int, n: int, count: int) -> list[str]:
    """Uniform random targets from a stream independent of everything else."""
    rng = _stream(seed, _TAG_TARGETS, n)
    return ["".join("1" if b else "0" for b in rng.integers(0, 2, size=n)) for _ in range(count)]


# --- single runs ----------------------------------------------------------------

def _noise_model(config: ExperimentConfig) -> NoiseModel:
    return NoiseModel(p1=config.p1, p2=config.p2, p_ro=config.p_ro)


def _measure_circuit(circuit: Circuit, config: ExperimentConfig, rng) -> dict[str, int]:
    if config.backend == "noisy":
        return run_noisy_counts(circuit, _noise_model(config), config.shots_final, rng)
    return sample(run_circuit(circuit), config.shots_final, rng)


def _objective_fn(hamiltonian, config: ExperimentConfig, eval_rng):
    n = hamiltonian.n
    if config.exact_objective:
        def fn(theta):
            return expectation_exact(hamiltonian, run_circuit(_theta_circuit(n, theta)))
    elif config.backend == "ideal":
        def fn(theta):
            counts = sample(run_circuit(_theta_circuit(n, theta)), config.shots_eval, eval_rng)
            return expectation_from_counts(hamiltonian, counts)
    else:
        model = _noise_model(config)

        def fn(theta):
            counts = run_noisy_counts(_theta_circuit(n, theta), model, config.shots_eval, eval_rng)
            return expectation_from_counts(hamiltonian, counts)
    return fn


def _theta_circuit(n: int, theta) -> Circuit:
    return build_real_amplitude(AnsatzParams.from_array(n, theta))


def _optimize_vqe(config: ExperimentConfig, target: str, trial: int) -> OptTrace:
    hamiltonian = build_oracle(target)
    n = hamiltonian.n
    key = _trial_key(config, trial)
    budget = config.max_iterations or iteration_budget(n, config.profile)
    theta0 = _stream(config.seed, _TAG_THETA0, *key).uniform(0.0, 2.0 * math.pi, 3 * n)
    objective = Objective(3 * n, _objective_fn(hamiltonian, config, _stream(config.seed, _TAG_EVAL, *key)))
    if config.optimizer == "spsa":
        return spsa_minimize(objective, theta0, budget, _stream(config.seed, _TAG_OPT, *key))
    return one_eval_minimize(objective, theta0, budget)


def _vqe_record(config: ExperimentConfig, target: str, trial: int) -> RunRecord:
    start = time.perf_counter()
    trace = _optimize_vqe(config, target, trial)
    circuit = _theta_circuit(config.n, trace.best_theta)
    counts = _measure_circuit(circuit, config, _stream(config.seed, _TAG_FINAL, *_trial_key(config, trial)))
    return RunRecord(
        config=asdict(config),
        mode=config.mode,
        backend=config.backend,
        n=config.n,
        target=target,
        trace_nfev=list(range(1, trace.total_nfev + 1)),
        trace_expectation=[float(v) for v in trace.values],
        best_theta=[float(t) for t in trace.best_theta],
        total_nfev=trace.total_nfev,
        setup_nfev=trace.setup_nfev,
        total_iterations=trace.total_iterations,
        final_counts=counts,
        success_probability=counts.get(target, 0) / config.shots_final,
        depth={"ansatz_depth": ansatz_depth(config.n)},
        wall_clock_seconds=time.perf_counter() - start,
    )


def _grover_record(config: ExperimentConfig, target: str, trial: int) -> RunRecord:
    start = time.perf_counter()
    plan = build_grover(target)
    counts = _measure_circuit(plan.circuit, config, _stream(config.seed, _TAG_FINAL, *_trial_key(config, trial)))
    return RunRecord(
        config=asdict(config),
        mode=config.mode,
        backend=config.backend,
        n=config.n,
        target=target,
        trace_nfev=[],
        trace_expectation=[],
        best_theta=[],
        total_nfev=0,
        setup_nfev=0,
        total_iterations=plan.k,
        final_counts=counts,
        success_probability=counts.get(target, 0) / config.shots_final,
        depth={
            "grover_logical_depth": grover_depth(config.n),
            "grover_decomposed_depth": grover_depth(config.n, decomposed_mcz_cost),
        },
        wall_clock_seconds=time.perf_counter() - start,
    )


def _resolve_target(config: ExperimentConfig, trial: int = 0) -> str:
    if config.target is not None:
        return config.target
    return draw_targets(config.seed, config.n, trial + 1)[trial]


def run_vqe_search(config: ExperimentConfig) -> RunRecord:
    """Optimize <H_o> over the ansatz, then measure the best-seen angles."""
    config = config.validated()
    if config.mode != "vqe":
        raise ConfigError(f"run_vqe_search needs mode='vqe', got {config.mode!r}")
    return _vqe_record(config, _resolve_target(config), 0)


def run_grover_search(config: ExperimentConfig) -> RunRecord:
    """Execute the Grover plan on the chosen backend and record success."""
    config = config.validated()
    if config.mode != "grover":
        raise ConfigError(f"run_grover_search needs mode='grover', got {config.mode!r}")
    return _grover_record(config, _resolve_target(config), 0)


# --- experiment grids ------------------------------------------------------------

def sweep(config: ExperimentConfig, n_values: Sequence[int],
          modes: Sequence[str] = MODES, backends: Sequence[str] = BACKENDS) -> Table:
    """Per-trial success probabilities over an (n, mode, backend) grid.

    The same ``trials`` random targets are shared by every arm at a given n,
    so arms are compared on identical search instances.
    """
    rows = []
    for n in n_values:
        targets = draw_targets(config.seed, n, config.trials)
        for mode in modes:
            for backend in backends:
                base = replace(config, mode=mode, backend=backend, n=n, target=None).validated()
                for trial, target in enumerate(targets):
                    cfg = replace(base, target=target).validated()
                    if mode == "vqe":
                        rec = _vqe_record(cfg, target, trial)
                        depth = rec.depth["ansatz_depth"]
                    else:
                        rec = _grover_record(cfg, target, trial)
                        depth = rec.depth["grover_logical_depth"]
                    rows.append((n, mode, backend, trial, target,
                                 float(rec.success_probability), rec.total_nfev, depth))
    return Table(SWEEP_HEADER, rows)


def summarize_sweep(table: Table) -> dict[tuple[int, str, str], dict]:
    """Median and per-trial success per (n, mode, backend)."""
    groups: dict[tuple[int, str, str], list[float]] = {}
    for n, mode, backend, _trial, _target, success, _nfev, _depth in table.rows:
        groups.setdefault((n, mode, backend), []).append(success)
    return {
        key: {"median": float(np.median(vals)), "per_trial": vals}
        for key, vals in groups.items()
    }


def success_vs_nfev(config: ExperimentConfig, checkpoints: Sequence[float]) -> Table:
    """Success probability of the best-so-far angles at nfev checkpoints.

    Checkpoints are in units of floor(sqrt(N)); the curve is read off the
    optimization trace prefixes, never by re-running the optimizer.
    """
    config = replace(config, mode="vqe").validated()
    sqrt_unit = math.isqrt(1 << config.n)
    targets = ([config.target] * config.trials if config.target is not None
               else draw_targets(config.seed, config.n, config.trials))
    rows = []
    for trial, target in enumerate(targets):
        cfg = replace(config, target=target).validated()
        trace = _optimize_vqe(cfg, target, trial)
        key = _trial_key(cfg, trial)
        for j, units in enumerate(checkpoints):
            cut = int(round(units * sqrt_unit))
            circuit = _theta_circuit(cfg.n, trace.best_at(cut))
            counts = _measure_circuit(circuit, cfg, _stream(cfg.seed, _TAG_CURVE, *key, j))
            rows.append((cfg.n, target, config.seed, float(units),
                         min(max(cut, 0), trace.total_nfev),
                         counts.get(target, 0) / cfg.shots_final))
    return Table(CURVE_HEADER, rows)


def depth_report(n_values: Sequence[int], decomposed_cost=decomposed_mcz_cost) -> Table:
    """Depth table: linear ansatz vs exponential Grover, logical and decomposed."""
    rows = []
    for n in n_values:
        if n < 1:
            raise ConfigError(f"need n >= 1, got {n}")
        rows.append((n, ansatz_depth(n), grover_depth(n), grover_depth(n, decomposed_cost)))
    return Table(DEPTH_HEADER, rows)
