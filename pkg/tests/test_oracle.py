"""Oracle Hamiltonian construction, spectrum and expectation tests."""

import math

import numpy as np
import pytest

from vqsearch.errors import ResourceLimitError
from vqsearch.oracle import (
    basis_energy,
    build_oracle,
    eigval,
    expectation_exact,
    expectation_from_counts,
    ground_state_bruteforce,
)
from vqsearch.statevector import StateVector, index_to_bits, sample

from helpers import random_state_array


def hamming(a: str, b: str) -> int:
    return sum(x != y for x, y in zip(a, b))


def random_targets(rng, n, count):
    return ["".join("1" if b else "0" for b in rng.integers(0, 2, n)) for _ in range(count)]


class TestConstruction:
    def test_sign_convention(self):
        assert eigval(0) == -1 and eigval(1) == 1

    def test_coefficients_from_target(self):
        assert build_oracle("101").h == (-1, 1, -1)
        assert build_oracle("000").h == (1, 1, 1)
        assert build_oracle("1").h == (-1,)

    def test_target_round_trip(self):
        rng = np.random.default_rng(0)
        for target in random_targets(rng, 6, 20):
            assert build_oracle(target).target() == target

    @pytest.mark.parametrize("bad", ["", "012", "ab", "10 1"])
    def test_rejects_bad_targets(self, bad):
        with pytest.raises(ValueError):
            build_oracle(bad)


class TestBasisEnergy:
    def test_target_has_energy_minus_n(self):
        for target in ("0", "11", "0101", "1110001"):
            H = build_oracle(target)
            assert basis_energy(H, target) == -H.n

    def test_energy_is_hamming_law(self):
        # E(x) = -n + 2 * d(x, target), checked by enumeration
        rng = np.random.default_rng(1)
        for target in random_targets(rng, 5, 10):
            H = build_oracle(target)
            for x in range(32):
                bits = index_to_bits(x, 5)
                assert basis_energy(H, bits) == -5 + 2 * hamming(bits, target)

    def test_spec_examples(self):
        assert basis_energy(build_oracle("11"), "00") == 2
        assert basis_energy(build_oracle("101"), "100") == -1

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            basis_energy(build_oracle("10"), "101")


class TestGroundState:
    def test_examples(self):
        assert ground_state_bruteforce(build_oracle("0110")) == ("0110", -4)
        assert ground_state_bruteforce(build_oracle("0")) == ("0", -1)

    def test_property_random_targets(self):
        rng = np.random.default_rng(2)
        for n in range(1, 11):
            for target in random_targets(rng, n, 10):
                assert ground_state_bruteforce(build_oracle(target)) == (target, -n)

    def test_minimum_is_unique(self):
        rng = np.random.default_rng(3)
        for n in (2, 4, 6):
            for target in random_targets(rng, n, 5):
                H = build_oracle(target)
                energies = [basis_energy(H, index_to_bits(x, n)) for x in range(1 << n)]
                assert sorted(energies)[0] == -n
                assert sorted(energies)[1] == -n + 2

    def test_resource_guard(self):
        with pytest.raises(ResourceLimitError):
            ground_state_bruteforce(build_oracle("0" * 21))

    @pytest.mark.parametrize("n", [1, 3, 5, 8])
    def test_spectrum_multiplicities_are_binomial(self, n):
        rng = np.random.default_rng(4)
        target = random_targets(rng, n, 1)[0]
        H = build_oracle(target)
        energies = [basis_energy(H, index_to_bits(x, n)) for x in range(1 << n)]
        for d in range(n + 1):
            assert energies.count(-n + 2 * d) == math.comb(n, d)


class TestExpectationExact:
    def test_ground_state_value(self):
        for target in ("1", "010", "11011"):
            H = build_oracle(target)
            assert expectation_exact(H, StateVector.from_bits(target)) == -H.n

    def test_uniform_superposition_is_zero(self):
        H = build_oracle("101")
        amps = np.full(8, 1 / math.sqrt(8), dtype=complex)
        assert abs(expectation_exact(H, StateVector(3, amps))) < 1e-12

    def test_equal_mix_with_neighbor(self):
        # half target, half a Hamming-distance-1 state -> average of -n and -n+2
        target = "1010"
        H = build_oracle(target)
        amps = np.zeros(16, dtype=complex)
        from vqsearch.statevector import bits_to_index

        amps[bits_to_index(target)] = 1 / math.sqrt(2)
        amps[bits_to_index("0010")] = 1 / math.sqrt(2)
        assert abs(expectation_exact(H, StateVector(4, amps)) - (-3.0)) < 1e-12

    def test_bounded_by_n(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n = int(rng.integers(1, 7))
            H = build_oracle(random_targets(rng, n, 1)[0])
            value = expectation_exact(H, StateVector(n, random_state_array(n, rng)))
            assert -n - 1e-12 <= value <= n + 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            expectation_exact(build_oracle("10"), StateVector.zero(3))


class TestExpectationFromCounts:
    def test_point_mass_on_target(self):
        H = build_oracle("110")
        for shots in (1, 10, 4096):
            assert expectation_from_counts(H, {"110": shots}) == -3

    def test_uniform_counts_cancel(self):
        H = build_oracle("01")
        counts = {index_to_bits(x, 2): 7 for x in range(4)}
        assert expectation_from_counts(H, counts) == 0

    def test_spec_arithmetic_example(self):
        H = build_oracle("11")
        assert expectation_from_counts(H, {"11": 3, "00": 1}) == -1.0

    def test_empty_counts_rejected(self):
        with pytest.raises(ValueError):
            expectation_from_counts(build_oracle("1"), {})

    def test_wrong_key_length_rejected(self):
        with pytest.raises(ValueError):
            expectation_from_counts(build_oracle("10"), {"101": 3})

    def test_converges_to_exact(self):
        # Hoeffding-style loose bound: |estimate - exact| <= 5n/sqrt(shots)
        rng = np.random.default_rng(6)
        shots = 10_000
        for n in (2, 4):
            H = build_oracle(random_targets(rng, n, 1)[0])
            state = StateVector(n, random_state_array(n, rng))
            exact = expectation_exact(H, state)
            for seed in range(5):
                estimate = expectation_from_counts(H, sample(state, shots, seed))
                assert abs(estimate - exact) <= 5 * n / math.sqrt(shots)
