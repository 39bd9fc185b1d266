"""Exact dense statevector simulation of bound circuits.

Basis indexing is little-endian: qubit k contributes bit k, so basis state
index s = sum_k q_k * 2**k.  Rotations follow RA(phi) = exp(-i*phi*sigma_A/2).

Gate application updates the amplitude array in place, one gate at a time;
the hot loop is JIT-compiled (first use pays a one-off compile, cached on
disk afterwards).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import CircuitError, ResourceError
from .pauli import PauliOperator

__all__ = [
    "Gate",
    "BoundCircuit",
    "StateVector",
    "Machine",
    "run",
    "probabilities",
    "expectation",
    "dense_matrix",
    "dense_ground_energy",
    "DEFAULT_QUBIT_CAP",
]

DEFAULT_QUBIT_CAP = 20

SINGLE_KINDS = ("H", "X", "Y", "Z", "S", "SDAG", "RX", "RY", "RZ")
CONTROLLED_KINDS = ("CNOT", "CZ", "CR")
ROTATION_KINDS = ("RX", "RY", "RZ", "CR")
GATE_KINDS = SINGLE_KINDS + CONTROLLED_KINDS

_CODES = {kind: code for code, kind in enumerate(GATE_KINDS)}


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    control: int | None = None
    angle: float = 0.0

    def __post_init__(self):
        if self.kind not in _CODES:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        needs_control = self.kind in CONTROLLED_KINDS
        if needs_control and self.control is None:
            raise CircuitError(f"{self.kind} requires a control qubit")
        if not needs_control and self.control is not None:
            raise CircuitError(f"{self.kind} takes no control qubit")
        if self.control == self.target:
            raise CircuitError("control and target must differ")


class BoundCircuit:
    """Ordered gate list on a fixed-width register."""

    def __init__(self, n_qubits: int, gates: list[Gate] | None = None):
        if n_qubits < 1:
            raise CircuitError("circuit needs at least one qubit")
        self.n_qubits = n_qubits
        self.gates: list[Gate] = []
        for g in gates or []:
            self.append(g)

    def append(self, gate: Gate) -> None:
        for q in (gate.target, gate.control):
            if q is not None and not 0 <= q < self.n_qubits:
                raise CircuitError(f"qubit {q} out of range for {self.n_qubits}-qubit circuit")
        self.gates.append(gate)

    def _arrays(self):
        n = len(self.gates)
        kinds = np.empty(n, dtype=np.int64)
        targets = np.empty(n, dtype=np.int64)
        controls = np.empty(n, dtype=np.int64)
        angles = np.empty(n, dtype=np.float64)
        for i, g in enumerate(self.gates):
            kinds[i] = _CODES[g.kind]
            targets[i] = g.target
            controls[i] = -1 if g.control is None else g.control
            angles[i] = g.angle
        return kinds, targets, controls, angles


class StateVector:
    """2**n complex amplitudes of an n-qubit register."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, n_qubits: int, amplitudes: np.ndarray):
        self.n_qubits = n_qubits
        self.amplitudes = amplitudes

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


class Machine:
    """Simulator handle: the qubit cap plus an index allocation record."""

    def __init__(self, qubit_cap: int = DEFAULT_QUBIT_CAP):
        self.qubit_cap = qubit_cap
        self._next = 0

    def allocate(self, n: int) -> list[int]:
        if self._next + n > self.qubit_cap:
            raise ResourceError(f"allocation of {n} qubits exceeds cap {self.qubit_cap}")
        ids = list(range(self._next, self._next + n))
        self._next += n
        return ids

    @property
    def n_allocated(self) -> int:
        return self._next


@njit(cache=True)
def _apply_gates(amps, kinds, targets, controls, angles):  # pragma: no cover - jit
    dim = amps.size
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for g in range(kinds.size):
        k = kinds[g]
        if k == 0:  # H
            u00 = inv_sqrt2 + 0j
            u01 = inv_sqrt2 + 0j
            u10 = inv_sqrt2 + 0j
            u11 = -inv_sqrt2 + 0j
        elif k == 1 or k == 9:  # X / CNOT
            u00 = 0j
            u01 = 1 + 0j
            u10 = 1 + 0j
            u11 = 0j
        elif k == 2:  # Y
            u00 = 0j
            u01 = -1j
            u10 = 1j
            u11 = 0j
        elif k == 3 or k == 10:  # Z / CZ
            u00 = 1 + 0j
            u01 = 0j
            u10 = 0j
            u11 = -1 + 0j
        elif k == 4:  # S
            u00 = 1 + 0j
            u01 = 0j
            u10 = 0j
            u11 = 1j
        elif k == 5:  # SDAG
            u00 = 1 + 0j
            u01 = 0j
            u10 = 0j
            u11 = -1j
        elif k == 6:  # RX
            c = np.cos(angles[g] / 2.0)
            s = np.sin(angles[g] / 2.0)
            u00 = c + 0j
            u01 = -1j * s
            u10 = -1j * s
            u11 = c + 0j
        elif k == 7:  # RY
            c = np.cos(angles[g] / 2.0)
            s = np.sin(angles[g] / 2.0)
            u00 = c + 0j
            u01 = -s + 0j
            u10 = s + 0j
            u11 = c + 0j
        elif k == 8:  # RZ
            u00 = np.cos(angles[g] / 2.0) - 1j * np.sin(angles[g] / 2.0)
            u01 = 0j
            u10 = 0j
            u11 = np.cos(angles[g] / 2.0) + 1j * np.sin(angles[g] / 2.0)
        else:  # CR: controlled phase
            u00 = 1 + 0j
            u01 = 0j
            u10 = 0j
            u11 = np.cos(angles[g]) + 1j * np.sin(angles[g])
        tb = 1 << targets[g]
        ctrl = controls[g]
        if ctrl < 0:
            for s_ in range(dim):
                if s_ & tb == 0:
                    a0 = amps[s_]
                    a1 = amps[s_ | tb]
                    amps[s_] = u00 * a0 + u01 * a1
                    amps[s_ | tb] = u10 * a0 + u11 * a1
        else:
            cb = 1 << ctrl
            for s_ in range(dim):
                if s_ & tb == 0 and s_ & cb != 0:
                    a0 = amps[s_]
                    a1 = amps[s_ | tb]
                    amps[s_] = u00 * a0 + u01 * a1
                    amps[s_ | tb] = u10 * a0 + u11 * a1
    return amps


def _run_arrays(n_qubits, kinds, targets, controls, angles, cap=DEFAULT_QUBIT_CAP) -> StateVector:
    """Kernel entry on precompiled gate arrays (shared with the VQC layer)."""
    if n_qubits > cap:
        raise ResourceError(f"{n_qubits} qubits exceeds the cap of {cap}")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    if kinds.size:
        _apply_gates(amps, kinds, targets, controls, angles)
    return StateVector(n_qubits, amps)


def run(circuit: BoundCircuit, cap: int = DEFAULT_QUBIT_CAP) -> StateVector:
    """Apply all gates in order to |0...0> and return the final state."""
    return _run_arrays(circuit.n_qubits, *circuit._arrays(), cap=cap)


def probabilities(state: StateVector, measured: list[int]) -> np.ndarray:
    """Marginal probabilities over a qubit subset.

    Entry j collects |amplitude|^2 over all basis states whose measured-bit
    pattern equals j, with the first listed qubit as the least significant
    bit of j.
    """
    if len(set(measured)) != len(measured):
        raise ValueError(f"duplicate qubit in measured list {measured}")
    for q in measured:
        if not 0 <= q < state.n_qubits:
            raise ValueError(f"measured qubit {q} out of range")
    probs = np.abs(state.amplitudes) ** 2
    idx = np.arange(probs.size)
    keys = np.zeros(probs.size, dtype=np.int64)
    for k, q in enumerate(measured):
        keys |= ((idx >> q) & 1) << k
    return np.bincount(keys, weights=probs, minlength=1 << len(measured))


@functools.lru_cache(maxsize=128)
def _compiled_terms(op: PauliOperator, n_qubits: int):
    """Split an operator into (identity offset, combined diagonal, general terms)."""
    dim = 1 << n_qubits
    idx = np.arange(dim)
    offset = 0.0
    diag = None
    general = []
    for term in op.terms:
        if term.is_identity:
            offset += term.coefficient
            continue
        axes = term.axes()
        if all(ax == "Z" for ax in axes):
            parity = np.zeros(dim, dtype=np.int64)
            for q in term.qubits():
                parity ^= (idx >> q) & 1
            signs = (1.0 - 2.0 * parity) * term.coefficient
            diag = signs if diag is None else diag + signs
            continue
        xy_mask = 0
        phase_parity = np.zeros(dim, dtype=np.int64)
        n_y = 0
        for q, ax in term.factors:
            if ax in ("X", "Y"):
                xy_mask |= 1 << q
            if ax in ("Y", "Z"):
                phase_parity ^= (idx >> q) & 1
            if ax == "Y":
                n_y += 1
        phase = (1j**n_y) * (1.0 - 2.0 * phase_parity)
        general.append((idx ^ xy_mask, phase, term.coefficient))
    return offset, diag, general


def expectation(state: StateVector, op: PauliOperator) -> float:
    """<psi|H|psi> as the coefficient-weighted sum over Pauli words."""
    if op.max_qubit() >= state.n_qubits:
        raise ValueError(
            f"operator acts on qubit {op.max_qubit()} but state has {state.n_qubits} qubits"
        )
    offset, diag, general = _compiled_terms(op, state.n_qubits)
    amps = state.amplitudes
    total = offset
    if diag is not None:
        total += float(np.dot(diag, np.abs(amps) ** 2))
    for perm, phase, coeff in general:
        total += coeff * float(np.sum(np.conj(amps[perm]) * phase * amps).real)
    return total


_PAULI_MATS = {
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def dense_matrix(op: PauliOperator, n_qubits: int) -> np.ndarray:
    """Full 2**n x 2**n Hermitian matrix of the operator (little-endian kron)."""
    dim = 1 << n_qubits
    mat = np.zeros((dim, dim), dtype=np.complex128)
    eye = np.eye(2, dtype=np.complex128)
    for term in op.terms:
        by_qubit = dict(term.factors)
        # qubit 0 is the least significant bit, hence the rightmost kron factor
        word = np.eye(1, dtype=np.complex128)
        for q in range(n_qubits):
            word = np.kron(_PAULI_MATS.get(by_qubit.get(q, "I"), eye), word)
        mat += term.coefficient * word
    return mat


def dense_ground_energy(op: PauliOperator, n_qubits: int) -> float:
    """Smallest eigenvalue of the dense operator matrix (oracle, n <= 10)."""
    if n_qubits > 10:
        raise ResourceError(f"dense diagonalization capped at 10 qubits, got {n_qubits}")
    if op.max_qubit() >= n_qubits:
        raise ValueError("operator acts outside the requested register")
    if all(t.is_identity for t in op.terms):
        return sum(t.coefficient for t in op.terms)
    from scipy.sparse.linalg import eigsh

    mat = dense_matrix(op, n_qubits)
    if mat.shape[0] <= 2:
        # too small for the Lanczos path (ARPACK needs k < N - 1)
        return float(np.linalg.eigvalsh(mat)[0])
    vals = eigsh(mat, k=1, which="SA", tol=1e-9, maxiter=10_000)[0]
    return float(vals[0])
