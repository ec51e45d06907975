"""Gradient-free minimizers with exact function-evaluation accounting.

Two profiles: a simultaneous-perturbation method (two evaluations per
iteration plus a fixed 50-evaluation calibration stage) and a one-evaluation-
per-iteration trust-region method (COBYLA) whose setup simplex of dim+1
evaluations is reported separately. Every evaluation goes through an
``Objective`` wrapper so nfev tallies cannot drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize as scipy_minimize

from .errors import NonFiniteObjectiveError


class Objective:
    """Counts and records every evaluation of the wrapped function.

    Raises NonFiniteObjectiveError on NaN/inf results (after recording them,
    so the diagnostic trace includes the offending point).
    """

    def __init__(self, dimension: int, fn: Callable[[np.ndarray], float]):
        self.dimension = dimension
        self._fn = fn
        self.nfev = 0
        self.values: list[float] = []
        self.thetas: list[np.ndarray] = []

    def __call__(self, theta) -> float:
        theta = np.asarray(theta, dtype=np.float64)
        if theta.shape != (self.dimension,):
            raise ValueError(f"expected theta of shape ({self.dimension},), got {theta.shape}")
        value = float(self._fn(theta))
        self.nfev += 1
        self.values.append(value)
        self.thetas.append(theta.copy())
        if not math.isfinite(value):
            raise NonFiniteObjectiveError(f"objective returned {value} at nfev={self.nfev}")
        return value


@dataclass
class OptTrace:
    """Per-evaluation record of one optimizer run.

    Accounting invariants: SPSA has total_nfev = setup_nfev + 2*total_iterations
    (setup = calibration); the one-eval method has total_nfev = setup_nfev +
    total_iterations. best_value is the minimum over recorded evaluations.
    """

    theta0: np.ndarray
    values: list[float]
    thetas: list[np.ndarray]
    best_theta: np.ndarray
    best_value: float
    total_iterations: int
    total_nfev: int
    setup_nfev: int

    def best_at(self, nfev_limit: int) -> np.ndarray:
        """Best-seen theta using only the first ``nfev_limit`` evaluations."""
        k = min(int(nfev_limit), len(self.values))
        if k < 1:
            return self.theta0
        return self.thetas[int(np.argmin(self.values[:k]))]

    def prefix_best_values(self) -> np.ndarray:
        """Running minimum of the objective as a function of nfev (non-increasing)."""
        return np.minimum.accumulate(np.asarray(self.values))


def _finish_trace(theta0: np.ndarray, obj: Objective, start: int,
                  total_iterations: int, setup_nfev: int) -> OptTrace:
    values = obj.values[start:]
    thetas = obj.thetas[start:]
    best = int(np.argmin(values))
    return OptTrace(
        theta0=np.asarray(theta0, dtype=np.float64).copy(),
        values=values,
        thetas=thetas,
        best_theta=thetas[best].copy(),
        best_value=values[best],
        total_iterations=total_iterations,
        total_nfev=obj.nfev - start,
        setup_nfev=setup_nfev,
    )


def _reraise_with_trace(exc: NonFiniteObjectiveError, theta0, obj: Objective,
                        start: int, iterations: int, setup_nfev: int):
    trace = None
    if obj.nfev > start:
        trace = _finish_trace(theta0, obj, start, iterations, setup_nfev)
    raise NonFiniteObjectiveError(str(exc), trace=trace) from exc


# --- simultaneous perturbation ----------------------------------------------

@dataclass(frozen=True)
class SPSAConfig:
    """Gain sequences a_k = a/(k+1+A)^alpha, c_k = c/(k+1)^gamma.

    ``a`` defaults to a calibration stage: 25 perturbation pairs at theta0
    estimate the typical |f+ - f-|/(2c), then a is set so the first update
    moves each coordinate by ``target_step`` radians. The 0.3 rad default
    (with c = 0.2) is tuned so the shortest budgets (20 iterations at n=3)
    still descend reliably without destabilizing larger problems.
    """

    alpha: float = 0.602
    gamma: float = 0.101
    c: float = 0.2
    stability: float | None = None  # A; defaults to 0.1 * max_iterations
    a: float | None = None
    calibration_pairs: int = 25
    target_step: float = 0.3


def spsa_gradient(fn: Callable[[np.ndarray], float], theta: np.ndarray,
                  c: float, delta: np.ndarray) -> np.ndarray:
    """Two-point simultaneous-perturbation gradient estimate along delta."""
    diff = fn(theta + c * delta) - fn(theta - c * delta)
    return diff / (2.0 * c) * delta


def _rademacher(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.integers(0, 2, size=dim).astype(np.float64) * 2.0 - 1.0


def spsa_minimize(obj: Objective, theta0: Sequence[float], max_iterations: int,
                  rng_seed, config: SPSAConfig | None = None) -> OptTrace:
    """Seeded SPSA descent; returns the best-seen point, not the last iterate.

    Exactly 2 evaluations per iteration plus 2*calibration_pairs setup
    evaluations; tolerant of noisy objectives (no line search).
    """
    if max_iterations < 1:
        raise ValueError(f"max_iterations must be >= 1, got {max_iterations}")
    cfg = config or SPSAConfig()
    theta0 = np.asarray(theta0, dtype=np.float64)
    if theta0.shape != (obj.dimension,):
        raise ValueError(f"theta0 shape {theta0.shape} != ({obj.dimension},)")
    rng = np.random.default_rng(rng_seed)
    big_a = cfg.stability if cfg.stability is not None else 0.1 * max_iterations
    start = obj.nfev
    setup_nfev = 0
    iterations_done = 0
    try:
        a = cfg.a
        if a is None:
            magnitudes = []
            for _ in range(cfg.calibration_pairs):
                delta = _rademacher(rng, obj.dimension)
                diff = obj(theta0 + cfg.c * delta) - obj(theta0 - cfg.c * delta)
                magnitudes.append(abs(diff) / (2.0 * cfg.c))
            setup_nfev = 2 * cfg.calibration_pairs
            mean_mag = float(np.mean(magnitudes))
            # zero signal (constant objective): any a gives zero updates
            a = 0.0 if mean_mag < 1e-12 else cfg.target_step * (1.0 + big_a) ** cfg.alpha / mean_mag

        theta = theta0.copy()
        for k in range(max_iterations):
            a_k = a / (k + 1 + big_a) ** cfg.alpha
            c_k = cfg.c / (k + 1) ** cfg.gamma
            delta = _rademacher(rng, obj.dimension)
            ghat = spsa_gradient(obj, theta, c_k, delta)
            theta = theta - a_k * ghat
            iterations_done = k + 1
    except NonFiniteObjectiveError as exc:
        _reraise_with_trace(exc, theta0, obj, start, iterations_done, setup_nfev)
    return _finish_trace(theta0, obj, start, max_iterations, setup_nfev)


# --- one evaluation per iteration -------------------------------------------

@dataclass(frozen=True)
class OneEvalConfig:
    """Trust-region sizes for the COBYLA backend."""

    rhobeg: float = 1.0
    tol: float = 1e-12


def one_eval_minimize(obj: Objective, theta0: Sequence[float], max_iterations: int,
                      config: OneEvalConfig | None = None) -> OptTrace:
    """COBYLA with a hard evaluation budget of (dim+1) setup + max_iterations.

    COBYLA consumes exactly one new evaluation per trust-region iteration; the
    first dim+1 evaluations build its initial simplex and are reported as
    setup_nfev. May stop early on convergence; total_iterations is then the
    actual count, preserving total_nfev = setup_nfev + total_iterations.
    """
    if max_iterations < 1:
        raise ValueError(f"max_iterations must be >= 1, got {max_iterations}")
    cfg = config or OneEvalConfig()
    theta0 = np.asarray(theta0, dtype=np.float64)
    if theta0.shape != (obj.dimension,):
        raise ValueError(f"theta0 shape {theta0.shape} != ({obj.dimension},)")
    start = obj.nfev
    budget = max_iterations + obj.dimension + 1
    try:
        scipy_minimize(
            obj, theta0, method="COBYLA",
            options={"maxiter": budget, "rhobeg": cfg.rhobeg},
            tol=cfg.tol,
        )
    except NonFiniteObjectiveError as exc:
        run = obj.nfev - start
        setup = min(obj.dimension + 1, run)
        _reraise_with_trace(exc, theta0, obj, start, run - setup, setup)
    run_nfev = obj.nfev - start
    setup_nfev = min(obj.dimension + 1, run_nfev)
    return _finish_trace(theta0, obj, start, run_nfev - setup_nfev, setup_nfev)


def iteration_budget(n: int, profile: str) -> int:
    """Optimizer iteration budget: 10*floor(sqrt(2^n)), floored at 200 for hardware."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    base = 10 * math.isqrt(1 << n)
    if profile == "simulation":
        return base
    if profile == "hardware":
        return max(base, 200)
    raise ValueError(f"unknown profile {profile!r}")
