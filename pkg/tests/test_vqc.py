import math

import numpy as np
import pytest
from helpers import (
    central_diff,
    commutator_identity_residual,
    embed,
    random_hermitian,
    random_vqc,
    u2,
)

from vqnet.errors import CircuitError, UnboundVariableError, UnsupportedHamiltonianError
from vqnet.pauli import PauliOperator
from vqnet.vqc import (
    VQC,
    VariationalGate,
    bind,
    evolution,
    expectation_of,
    parameter_shift_grad,
    pmeasure_grad,
    pmeasure_of,
)

Z0 = PauliOperator({"Z0": 1.0})


class TestBind:
    def test_single_binding(self):
        vqc = VQC(1).ry(0, var="theta")
        circuit = bind(vqc, {"theta": 0.0})
        assert [g.kind for g in circuit.gates] == ["RY"]
        assert circuit.gates[0].angle == 0.0

    def test_coefficient_scales_angle(self):
        vqc = VQC(1).rz(0, var="gamma", coeff=2 * 1.5)
        circuit = bind(vqc, {"gamma": 0.5})
        assert circuit.gates[0].angle == pytest.approx(1.5)

    def test_shared_variable_sets_both_gates(self):
        vqc = VQC(1).ry(0, var="theta").ry(0, var="theta")
        circuit = bind(vqc, {"theta": 0.7})
        assert [g.angle for g in circuit.gates] == [pytest.approx(0.7)] * 2
        assert vqc.occurrences["theta"] == [0, 1]

    def test_fixed_gates_copied_verbatim(self):
        vqc = VQC(2).h(0).rx(1, angle=0.3)
        vqc.cnot(0, 1)
        circuit = bind(vqc, {})
        assert [(g.kind, g.target, g.control) for g in circuit.gates] == [
            ("H", 0, None),
            ("RX", 1, None),
            ("CNOT", 1, 0),
        ]
        assert circuit.gates[1].angle == 0.3

    def test_missing_value_names_element(self):
        vqc = VQC(1).ry(0, var=("theta", 3))
        with pytest.raises(UnboundVariableError, match="theta"):
            bind(vqc, {})

    def test_bound_gate_must_rotate(self):
        with pytest.raises(CircuitError):
            VariationalGate("H", 0, var="theta")

    def test_zero_coefficient_rejected(self):
        with pytest.raises(CircuitError):
            VariationalGate("RY", 0, var="theta", coeff=0.0)


class TestExpectationOf:
    def test_ry_at_zero(self):
        assert expectation_of(VQC(1).ry(0, var="t"), {"t": 0.0}, Z0) == pytest.approx(1.0)

    def test_ry_at_pi(self):
        assert expectation_of(VQC(1).ry(0, var="t"), {"t": math.pi}, Z0) == pytest.approx(-1.0)

    def test_ry_analytic_cosine(self):
        got = expectation_of(VQC(1).ry(0, var="t"), {"t": 0.3}, Z0)
        assert got == pytest.approx(0.955336489125606, abs=1e-12)
        assert got == pytest.approx(math.cos(0.3), abs=1e-12)


class TestParameterShiftGrad:
    def test_zero_at_cosine_maximum(self):
        grads = parameter_shift_grad(VQC(1).ry(0, var="t"), {"t": 0.0}, Z0)
        assert grads["t"] == pytest.approx(0.0, abs=1e-12)

    def test_matches_negative_sine(self):
        grads = parameter_shift_grad(VQC(1).ry(0, var="t"), {"t": 0.3}, Z0)
        assert grads["t"] == pytest.approx(-0.29552020666133955, abs=1e-10)
        fd = central_diff(lambda t: expectation_of(VQC(1).ry(0, var="t"), {"t": t}, Z0), 0.3)
        assert grads["t"] == pytest.approx(fd, abs=1e-8)

    def test_shared_variable_occurrence_sum(self):
        vqc = VQC(1).ry(0, var="t").ry(0, var="t")
        grads = parameter_shift_grad(vqc, {"t": 0.2}, Z0)
        fd = central_diff(lambda t: expectation_of(vqc, {"t": t}, Z0), 0.2)
        assert grads["t"] == pytest.approx(-2.0 * math.sin(2 * 0.2), abs=1e-10)
        assert grads["t"] == pytest.approx(fd, abs=1e-8)

    def test_random_circuits_match_finite_differences(self):
        rng = np.random.default_rng(2024)
        for _ in range(8):
            vqc, values, ham = random_vqc(rng)
            grads = parameter_shift_grad(vqc, values, ham)
            for key, got in grads.items():
                def f(v, key=key):
                    trial = dict(values)
                    trial[key] = v
                    return expectation_of(vqc, trial, ham)

                assert got == pytest.approx(central_diff(f, values[key], 1e-4), abs=1e-6)

    def test_shift_identity_single_occurrence(self):
        vqc = VQC(2).h(0).ry(1, var="t")
        ham = PauliOperator({"Z1": 1.0, "X0 Z1": 0.5})
        theta = 0.37
        grads = parameter_shift_grad(vqc, {"t": theta}, ham)
        e_plus = expectation_of(vqc, {"t": theta + math.pi / 2}, ham)
        e_minus = expectation_of(vqc, {"t": theta - math.pi / 2}, ham)
        assert grads["t"] == (e_plus - e_minus) / 2.0

    def test_bitwise_deterministic(self):
        rng = np.random.default_rng(8)
        vqc, values, ham = random_vqc(rng)
        a = parameter_shift_grad(vqc, values, ham)
        b = parameter_shift_grad(vqc, values, ham)
        assert list(a) == list(b)
        assert all(a[k] == b[k] for k in a)

    def test_keys_subset(self):
        vqc = VQC(1).ry(0, var="a").rz(0, var="b")
        grads = parameter_shift_grad(vqc, {"a": 0.4, "b": 0.9}, Z0, keys=["a"])
        assert list(grads) == ["a"]


class TestCommutatorIdentity:
    @pytest.mark.parametrize("axis", ["X", "Y", "Z"])
    def test_rotation_sandwich_reproduces_commutator(self, axis):
        rng = np.random.default_rng(ord(axis))
        for _ in range(25):
            rho = random_hermitian(rng)
            assert commutator_identity_residual(rho, axis) <= 1e-12


def bell_prep():
    return VQC(2).h(0).cnot(0, 1)


class TestPmeasure:
    def test_empty_circuit_component_zero(self):
        assert pmeasure_of(VQC(2), {}, [0, 1], [0]) == pytest.approx([1.0])

    def test_label_out_of_range(self):
        with pytest.raises(ValueError):
            pmeasure_of(bell_prep(), {}, [0, 1], [1, 2, 4])

    def test_bell_components(self):
        assert pmeasure_of(bell_prep(), {}, [0, 1], [0, 3]) == pytest.approx([0.5, 0.5])

    def test_entries_in_unit_interval_and_full_subspace_sums_to_one(self):
        rng = np.random.default_rng(13)
        for _ in range(5):
            vqc, values, _ = random_vqc(rng, max_qubits=3, max_bound=6)
            measured = list(range(vqc.n_qubits))
            probs = pmeasure_of(vqc, values, measured, list(range(1 << vqc.n_qubits)))
            assert np.all(probs >= -1e-12) and np.all(probs <= 1 + 1e-12)
            assert probs.sum() == pytest.approx(1.0, abs=1e-10)

    def test_grad_zero_at_stationary_point(self):
        grads = pmeasure_grad(VQC(1).ry(0, var="t"), {"t": 0.0}, [0], [0])
        assert grads["t"][0] == pytest.approx(0.0, abs=1e-12)

    def test_grad_matches_half_sine(self):
        # p0 = cos^2(t/2)  ->  dp0/dt = -sin(t)/2
        grads = pmeasure_grad(VQC(1).ry(0, var="t"), {"t": 0.6}, [0], [0])
        assert grads["t"][0] == pytest.approx(-0.2823212366975177, abs=1e-10)
        fd = central_diff(
            lambda t: float(pmeasure_of(VQC(1).ry(0, var="t"), {"t": t}, [0], [0])[0]), 0.6
        )
        assert grads["t"][0] == pytest.approx(fd, abs=1e-8)

    def test_component_gradients_sum_to_zero(self):
        for theta in (0.0, 0.4, 1.3):
            grads = pmeasure_grad(VQC(1).ry(0, var="t"), {"t": theta}, [0], [0, 1])
            assert grads["t"].sum() == pytest.approx(0.0, abs=1e-12)


def circuit_unitary(vqc, values):
    n = vqc.n_qubits
    mat = np.eye(1 << n, dtype=complex)
    for gate in bind(vqc, values).gates:
        mat = embed(n, u2(gate.kind, gate.angle), gate.target, gate.control) @ mat
    return mat


class TestEvolution:
    def test_zz_term_matches_exponential(self):
        from scipy.linalg import expm

        w, theta = 0.8, 0.51
        vqc = VQC(2)
        evolution(vqc, PauliOperator({"Z0 Z1": w}), "g", [0, 1])
        kinds = [g.kind for g in vqc.gates]
        assert kinds == ["CNOT", "RZ", "CNOT"]
        assert vqc.gates[1].coeff == pytest.approx(2 * w)
        got = circuit_unitary(vqc, {"g": theta})
        zz = np.kron(u2("Z"), u2("Z"))  # little-endian: q1 (x) q0
        want = expm(-1j * theta * w * zz)
        assert np.allclose(got, want, atol=1e-12)

    def test_single_x_term_matches_exponential(self):
        from scipy.linalg import expm

        theta = 0.9
        vqc = VQC(1)
        evolution(vqc, PauliOperator({"X0": 1.0}), "b", [0])
        assert [g.kind for g in vqc.gates] == ["H", "RZ", "H"]
        got = circuit_unitary(vqc, {"b": theta})
        want = expm(-1j * theta * u2("X"))
        assert np.allclose(got, want, atol=1e-12)

    def test_three_qubit_z_word(self):
        from scipy.linalg import expm

        w, theta = -0.6, 0.77
        vqc = VQC(3)
        evolution(vqc, PauliOperator({"Z0 Z1 Z2": w}), "g", [0, 1, 2])
        got = circuit_unitary(vqc, {"g": theta})
        want = expm(-1j * theta * w * np.kron(np.kron(u2("Z"), u2("Z")), u2("Z")))
        assert np.allclose(got, want, atol=1e-12)

    def test_empty_hamiltonian_appends_nothing(self):
        vqc = VQC(2)
        evolution(vqc, PauliOperator(), "g", [0, 1])
        assert vqc.gates == []

    def test_identity_term_appends_nothing(self):
        vqc = VQC(2)
        evolution(vqc, PauliOperator({"I": 3.0}), "g", [0, 1])
        assert vqc.gates == []

    def test_qubit_index_mapping(self):
        vqc = VQC(4)
        evolution(vqc, PauliOperator({"Z0 Z1": 1.0}), "g", [2, 3])
        assert {g.target for g in vqc.gates} <= {2, 3}

    def test_mixed_terms_rejected(self):
        with pytest.raises(UnsupportedHamiltonianError):
            evolution(VQC(2), PauliOperator({"Z0 Z1": 1.0, "X0": 0.5}), "g", [0, 1])

    def test_multi_qubit_x_rejected(self):
        with pytest.raises(UnsupportedHamiltonianError):
            evolution(VQC(2), PauliOperator({"X0 X1": 1.0}), "g", [0, 1])

    def test_evolution_gradient_matches_finite_difference(self):
        hp = PauliOperator({"Z0 Z1": 0.7, "Z1 Z2": -0.4})
        hd = PauliOperator({"X0": 1.0, "X1": 1.0, "X2": 1.0})
        vqc = VQC(3).h(0).h(1).h(2)
        evolution(vqc, hp, "gamma", [0, 1, 2])
        evolution(vqc, hd, "beta", [0, 1, 2])
        values = {"gamma": 0.31, "beta": -0.62}
        grads = parameter_shift_grad(vqc, values, hp)
        for key in values:
            def f(v, key=key):
                trial = dict(values)
                trial[key] = v
                return expectation_of(vqc, trial, hp)

            assert grads[key] == pytest.approx(central_diff(f, values[key], 1e-4), abs=1e-7)
