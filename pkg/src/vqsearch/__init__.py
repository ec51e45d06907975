"""Variational quantum search lab.

Searches for a target bit string by minimizing the expectation of an
all-Z oracle Hamiltonian over a shallow Ry/CNOT ansatz, and compares against
a faithful Grover baseline on ideal and Pauli-noise statevector simulators.
"""

from .ansatz import AnsatzParams, ansatz_depth, ansatz_state, build_real_amplitude, target_params
from .bench import (
    ExperimentConfig,
    RunRecord,
    depth_report,
    draw_targets,
    run_grover_search,
    run_vqe_search,
    success_vs_nfev,
    summarize_sweep,
    sweep,
)
from .errors import ConfigError, InvalidGateError, NonFiniteObjectiveError, ResourceLimitError
from .grover import (
    GroverPlan,
    build_grover,
    decomposed_mcz_cost,
    grover_depth,
    grover_success_ideal,
    iteration_count,
    unit_mcz_cost,
)
from .noise import NoiseModel, TrajectoryStats, default_mcz_cnot_cost, run_noisy_counts, run_noisy_trajectory
from .optimize import (
    Objective,
    OneEvalConfig,
    OptTrace,
    SPSAConfig,
    iteration_budget,
    one_eval_minimize,
    spsa_gradient,
    spsa_minimize,
)
from .oracle import (
    OracleHamiltonian,
    basis_energy,
    build_oracle,
    eigval,
    expectation_exact,
    expectation_from_counts,
    ground_state_bruteforce,
)
from .statevector import (
    Circuit,
    Gate,
    StateVector,
    apply_gate,
    bits_to_index,
    index_to_bits,
    probabilities,
    run_circuit,
    sample,
)
from .tables import Table

__version__ = "0.1.0"
