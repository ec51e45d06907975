"""Grover baseline tests: schedule, oracle phase flip, success, depth."""

import math

import numpy as np
import pytest

from vqsearch.grover import (
    build_grover,
    decomposed_mcz_cost,
    diffuser_gates,
    grover_depth,
    grover_success_ideal,
    iteration_count,
    oracle_gates,
    unit_mcz_cost,
)
from vqsearch.statevector import Circuit, Gate, bits_to_index, probabilities, run_circuit, sample


def random_targets(rng, n, count):
    return ["".join("1" if b else "0" for b in rng.integers(0, 2, n)) for _ in range(count)]


class TestSchedule:
    def test_clamps_to_one(self):
        assert iteration_count(1) == 1
        assert iteration_count(2) == 1

    def test_known_values(self):
        assert iteration_count(3) == 2  # floor(pi/4 * sqrt(8))
        assert iteration_count(8) == 12
        assert iteration_count(10) == 25

    def test_plan_iterations_and_gate_count(self):
        plan = build_grover("0110")
        per_iter = len(oracle_gates("0110")) + len(diffuser_gates(4))
        assert len(plan.circuit.gates) == 4 + plan.k * per_iter


class TestOraclePhase:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_flips_exactly_the_target_amplitude(self, n):
        rng = np.random.default_rng(30 + n)
        for target in set(random_targets(rng, n, 4)):
            circuit = Circuit(n)
            circuit.extend(Gate.h(q) for q in range(n))
            circuit.extend(oracle_gates(target))
            state = run_circuit(circuit)
            amp = 2.0 ** (-n / 2)
            for x in range(1 << n):
                want = -amp if x == bits_to_index(target) else amp
                np.testing.assert_allclose(state.amplitudes[x].real, want, atol=1e-12)


class TestSuccessProbability:
    def test_n2_is_certain(self):
        assert abs(grover_success_ideal(2) - 1.0) < 1e-12
        plan = build_grover("11")
        state = run_circuit(plan.circuit)
        np.testing.assert_allclose(abs(state.amplitudes[3]), 1.0, atol=1e-12)

    def test_n3_closed_form(self):
        # sin^2(5 asin(1/sqrt(8))) works out to exactly 7.5625/8
        assert abs(grover_success_ideal(3) - 0.9453125) < 1e-12

    @pytest.mark.parametrize("n", list(range(1, 11)))
    def test_simulator_matches_closed_form(self, n):
        rng = np.random.default_rng(50 + n)
        for target in random_targets(rng, n, 2):
            plan = build_grover(target)
            prob = probabilities(run_circuit(plan.circuit))[bits_to_index(target)]
            assert abs(prob - grover_success_ideal(n)) < 1e-10

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_exhaustive_over_targets(self, n):
        for x in range(1 << n):
            target = "".join("1" if (x >> q) & 1 else "0" for q in range(n))
            plan = build_grover(target)
            prob = probabilities(run_circuit(plan.circuit))[x]
            assert abs(prob - grover_success_ideal(n)) < 1e-10

    def test_sampled_success_within_3_sigma(self):
        n, shots = 5, 4096
        target = "01011"
        plan = build_grover(target)
        counts = sample(run_circuit(plan.circuit), shots, 12)
        p = grover_success_ideal(n)
        sigma = math.sqrt(shots * p * (1 - p))
        assert abs(counts.get(target, 0) - shots * p) < 3 * sigma

    def test_permutation_equivariance(self):
        # reversing the target string reverses qubit roles, so the output
        # distribution is the bit-reversed permutation of the original
        probs_a = probabilities(run_circuit(build_grover("00111").circuit))
        probs_b = probabilities(run_circuit(build_grover("11100").circuit))
        bitrev = [int(format(x, "05b")[::-1], 2) for x in range(32)]
        np.testing.assert_allclose(probs_b, probs_a[bitrev], atol=1e-12)


class TestDepth:
    def test_examples(self):
        assert grover_depth(2) == 9
        assert grover_depth(8) == 97

    def test_matches_generic_layering_when_target_has_a_zero(self):
        for target in ("01", "100", "0110", "10110"):
            plan = build_grover(target)
            assert plan.circuit.depth() == grover_depth(plan.n)

    def test_all_ones_target_is_shallower(self):
        plan = build_grover("111")
        assert plan.circuit.depth() == 1 + plan.k * 6

    def test_doubles_every_two_qubits(self):
        assert abs(grover_depth(12) / grover_depth(10) - 2.0) < 0.05

    def test_decomposed_cost_model(self):
        assert decomposed_mcz_cost(1) == 1
        assert decomposed_mcz_cost(2) == 4
        assert decomposed_mcz_cost(11) == 76
        assert grover_depth(3, decomposed_mcz_cost) == 1 + 2 * (2 + 4 + 4 + 4)

    def test_unit_cost_is_default(self):
        assert grover_depth(5) == grover_depth(5, unit_mcz_cost)


class TestValidation:
    def test_rejects_bad_targets(self):
        for bad in ("", "102", "xx"):
            with pytest.raises(ValueError):
                build_grover(bad)
