"""Independent oracles shared by the test suite.

Everything here is built from textbook definitions (dense matrices, basis
state enumeration, central differences) so it shares no code path with the
package's in-place amplitude kernel.
"""
from __future__ import annotations

import numpy as np

SQ2 = 1.0 / np.sqrt(2.0)

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def u2(kind: str, angle: float = 0.0) -> np.ndarray:
    """Dense 2x2 for a gate kind (rotation convention exp(-i*angle*sigma/2))."""
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    mats = {
        "H": np.array([[SQ2, SQ2], [SQ2, -SQ2]], dtype=complex),
        "X": PAULI["X"],
        "Y": PAULI["Y"],
        "Z": PAULI["Z"],
        "S": np.diag([1, 1j]).astype(complex),
        "SDAG": np.diag([1, -1j]).astype(complex),
        "RX": np.array([[c, -1j * s], [-1j * s, c]]),
        "RY": np.array([[c, -s], [s, c]], dtype=complex),
        "RZ": np.diag([np.exp(-1j * angle / 2.0), np.exp(1j * angle / 2.0)]),
        "CNOT": PAULI["X"],
        "CZ": PAULI["Z"],
        "CR": np.diag([1.0, np.exp(1j * angle)]),
    }
    return mats[kind]


def embed(n: int, u: np.ndarray, target: int, control: int | None = None) -> np.ndarray:
    """Full 2^n matrix acting with u on ``target`` (little-endian bit k = qubit k)."""
    dim = 1 << n
    mat = np.zeros((dim, dim), dtype=complex)
    for s in range(dim):
        if control is not None and not (s >> control) & 1:
            mat[s, s] = 1.0
            continue
        b = (s >> target) & 1
        for b2 in (0, 1):
            t = (s & ~(1 << target)) | (b2 << target)
            mat[t, s] += u[b2, b]
    return mat


def dense_state(n: int, gates: list[tuple]) -> np.ndarray:
    """Matrix-product simulation of |0...0> through (kind, target, control, angle)."""
    state = np.zeros(1 << n, dtype=complex)
    state[0] = 1.0
    for kind, target, control, angle in gates:
        state = embed(n, u2(kind, angle), target, control) @ state
    return state


def dense_pauli_word(n: int, factors: dict[int, str]) -> np.ndarray:
    mat = np.eye(1, dtype=complex)
    for q in range(n):
        mat = np.kron(PAULI[factors.get(q, "I")], mat)
    return mat


def dense_operator(n: int, terms: dict) -> np.ndarray:
    """terms: mapping of factor dict tuples ((q, ax), ...) -> coefficient."""
    dim = 1 << n
    mat = np.zeros((dim, dim), dtype=complex)
    for factors, coeff in terms.items():
        mat += coeff * dense_pauli_word(n, dict(factors))
    return mat


def central_diff(f, x: float, h: float = 1e-5) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)


def random_vqc(rng: np.random.Generator, max_qubits: int = 6, max_bound: int = 20):
    """Random circuit with shared variables plus a random Pauli observable.

    Returns (vqc, values, ham).  Binding coefficients are drawn from
    [-2, 2] away from zero; roughly a third of the bound gates reuse an
    existing variable key.
    """
    from vqnet.pauli import PauliOperator
    from vqnet.vqc import VQC, VariationalGate

    n_qubits = int(rng.integers(1, max_qubits + 1))
    n_bound = int(rng.integers(1, max_bound + 1))
    n_keys = max(1, int(np.ceil(n_bound * 2 / 3)))
    values = {f"t{k}": float(rng.uniform(-np.pi, np.pi)) for k in range(n_keys)}

    vqc = VQC(n_qubits)
    placed = 0
    while placed < n_bound:
        if n_qubits > 1 and rng.random() < 0.25:
            control, target = rng.choice(n_qubits, size=2, replace=False)
            vqc.cnot(int(control), int(target))
            continue
        if rng.random() < 0.2:
            vqc.h(int(rng.integers(n_qubits)))
            continue
        coeff = 0.0
        while abs(coeff) < 0.05:
            coeff = float(rng.uniform(-2.0, 2.0))
        kind = str(rng.choice(["RX", "RY", "RZ"]))
        key = f"t{int(rng.integers(n_keys))}"
        vqc.append(VariationalGate(kind, int(rng.integers(n_qubits)), var=key, coeff=coeff))
        placed += 1

    terms = {}
    for _ in range(int(rng.integers(1, 5))):
        k = int(rng.integers(1, n_qubits + 1))
        qubits = rng.choice(n_qubits, size=k, replace=False)
        key = tuple(sorted((int(q), str(rng.choice(list("XYZ")))) for q in qubits))
        terms[key] = terms.get(key, 0.0) + float(rng.normal())
    ham = PauliOperator(list(terms.items()))
    if ham.is_empty:
        ham = PauliOperator({"Z0": 1.0})
    return vqc, values, ham


def commutator_identity_residual(rho: np.ndarray, axis: str) -> float:
    """Max deviation in [sigma, rho] = i(R(pi/2) rho R(pi/2)^+ - R(-pi/2) rho R(-pi/2)^+)."""
    sigma = PAULI[axis.upper()]
    kind = {"X": "RX", "Y": "RY", "Z": "RZ"}[axis.upper()]
    r_plus = u2(kind, np.pi / 2)
    r_minus = u2(kind, -np.pi / 2)
    lhs = sigma @ rho - rho @ sigma
    rhs = 1j * (r_plus @ rho @ r_plus.conj().T - r_minus @ rho @ r_minus.conj().T)
    return float(np.max(np.abs(lhs - rhs)))


def random_hermitian(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2.0
