"""Variational quantum circuits and their exact parameter-shift gradients.

A bound rotation gate carries a linear binding angle = coeff * value(var),
where ``var`` is an opaque hashable key naming one variable element.  One
key may drive several gates; the circuit keeps a map from each key to the
ascending positions of its gate occurrences.

The gradient of an expectation with respect to a key is the occurrence sum
of coeff * (E+ - E-) / 2, where E+/- re-evaluates the circuit with only
that one gate's angle shifted by +/- pi/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

import numpy as np

from .errors import CircuitError, UnboundVariableError, UnsupportedHamiltonianError
from .pauli import PauliOperator
from .simulator import (
    DEFAULT_QUBIT_CAP,
    ROTATION_KINDS,
    BoundCircuit,
    Gate,
    StateVector,
    _CODES,
    _run_arrays,
    expectation,
    probabilities,
)

__all__ = [
    "VariationalGate",
    "VQC",
    "bind",
    "expectation_of",
    "parameter_shift_grad",
    "pmeasure_of",
    "pmeasure_grad",
    "evolution",
]

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class VariationalGate:
    kind: str
    target: int
    control: int | None = None
    angle: float = 0.0
    var: Hashable | None = None
    coeff: float = 1.0

    def __post_init__(self):
        if self.var is not None:
            if self.kind not in ROTATION_KINDS:
                raise CircuitError(f"only rotation gates may be bound, not {self.kind}")
            if not math.isfinite(self.coeff) or self.coeff == 0.0:
                raise CircuitError(f"binding coefficient must be finite and non-zero, got {self.coeff}")

    @property
    def is_bound(self) -> bool:
        return self.var is not None


class VQC:
    """Ordered list of fixed and variable-bound gates on a fixed register."""

    def __init__(self, n_qubits: int):
        if n_qubits < 1:
            raise CircuitError("circuit needs at least one qubit")
        self.n_qubits = n_qubits
        self.gates: list[VariationalGate] = []
        self.occurrences: dict[Hashable, list[int]] = {}
        self._compiled = None

    def append(self, gate: VariationalGate) -> None:
        for q in (gate.target, gate.control):
            if q is not None and not 0 <= q < self.n_qubits:
                raise CircuitError(f"qubit {q} out of range for {self.n_qubits}-qubit circuit")
        if gate.is_bound:
            self.occurrences.setdefault(gate.var, []).append(len(self.gates))
        self.gates.append(gate)
        self._compiled = None

    # -- construction sugar -------------------------------------------------
    def h(self, *qubits: int) -> "VQC":
        for q in qubits:
            self.append(VariationalGate("H", q))
        return self

    def x(self, qubit: int) -> "VQC":
        self.append(VariationalGate("X", qubit))
        return self

    def cnot(self, control: int, target: int) -> "VQC":
        self.append(VariationalGate("CNOT", target, control))
        return self

    def cz(self, control: int, target: int) -> "VQC":
        self.append(VariationalGate("CZ", target, control))
        return self

    def rx(self, qubit: int, angle: float = 0.0, var: Hashable = None, coeff: float = 1.0) -> "VQC":
        self.append(VariationalGate("RX", qubit, angle=angle, var=var, coeff=coeff))
        return self

    def ry(self, qubit: int, angle: float = 0.0, var: Hashable = None, coeff: float = 1.0) -> "VQC":
        self.append(VariationalGate("RY", qubit, angle=angle, var=var, coeff=coeff))
        return self

    def rz(self, qubit: int, angle: float = 0.0, var: Hashable = None, coeff: float = 1.0) -> "VQC":
        self.append(VariationalGate("RZ", qubit, angle=angle, var=var, coeff=coeff))
        return self

    # -- evaluation plumbing ------------------------------------------------
    def _compile(self):
        if self._compiled is None:
            n = len(self.gates)
            kinds = np.empty(n, dtype=np.int64)
            targets = np.empty(n, dtype=np.int64)
            controls = np.empty(n, dtype=np.int64)
            base = np.empty(n, dtype=np.float64)
            for i, g in enumerate(self.gates):
                kinds[i] = _CODES[g.kind]
                targets[i] = g.target
                controls[i] = -1 if g.control is None else g.control
                base[i] = g.angle
            self._compiled = (kinds, targets, controls, base)
        return self._compiled

    def _angles(self, values: Mapping[Hashable, float]) -> np.ndarray:
        angles = self._compile()[3].copy()
        for key, positions in self.occurrences.items():
            try:
                value = values[key]
            except KeyError:
                raise UnboundVariableError(f"no value for variable element {key!r}") from None
            for pos in positions:
                angles[pos] = self.gates[pos].coeff * value
        return angles

    def _state_for(self, angles: np.ndarray, cap: int = DEFAULT_QUBIT_CAP) -> StateVector:
        kinds, targets, controls, _ = self._compile()
        return _run_arrays(self.n_qubits, kinds, targets, controls, angles, cap=cap)


def bind(vqc: VQC, values: Mapping[Hashable, float]) -> BoundCircuit:
    """Resolve every binding to a concrete angle, preserving gate order."""
    angles = vqc._angles(values)
    circuit = BoundCircuit(vqc.n_qubits)
    for g, angle in zip(vqc.gates, angles):
        circuit.append(Gate(g.kind, g.target, g.control, float(angle)))
    return circuit


def expectation_of(
    vqc: VQC,
    values: Mapping[Hashable, float],
    ham: PauliOperator,
    cap: int = DEFAULT_QUBIT_CAP,
) -> float:
    return expectation(vqc._state_for(vqc._angles(values), cap=cap), ham)


def _shift_keys(vqc: VQC, keys: Iterable[Hashable] | None) -> list[Hashable]:
    if keys is None:
        return list(vqc.occurrences)
    return list(keys)


def parameter_shift_grad(
    vqc: VQC,
    values: Mapping[Hashable, float],
    ham: PauliOperator,
    keys: Iterable[Hashable] | None = None,
    cap: int = DEFAULT_QUBIT_CAP,
) -> dict[Hashable, float]:
    """Exact gradient of ``expectation_of`` for each requested variable element.

    Occurrences are processed in ascending gate position so accumulation is
    bitwise reproducible.
    """
    base = vqc._angles(values)
    grads: dict[Hashable, float] = {}
    for key in _shift_keys(vqc, keys):
        total = 0.0
        for pos in vqc.occurrences[key]:
            shifted = base.copy()
            shifted[pos] = base[pos] + _HALF_PI
            e_plus = expectation(vqc._state_for(shifted, cap=cap), ham)
            shifted[pos] = base[pos] - _HALF_PI
            e_minus = expectation(vqc._state_for(shifted, cap=cap), ham)
            total += vqc.gates[pos].coeff * (e_plus - e_minus) / 2.0
        grads[key] = total
    return grads


def _check_components(measured: list[int], components: list[int]) -> None:
    limit = 1 << len(measured)
    for label in components:
        if not 0 <= label < limit:
            raise ValueError(f"component label {label} out of range for {len(measured)} measured qubits")


def pmeasure_of(
    vqc: VQC,
    values: Mapping[Hashable, float],
    measured: list[int],
    components: list[int],
    cap: int = DEFAULT_QUBIT_CAP,
) -> np.ndarray:
    """Selected projection probabilities in ``components`` order."""
    _check_components(measured, components)
    probs = probabilities(vqc._state_for(vqc._angles(values), cap=cap), measured)
    return probs[np.asarray(components, dtype=np.int64)]


def pmeasure_grad(
    vqc: VQC,
    values: Mapping[Hashable, float],
    measured: list[int],
    components: list[int],
    keys: Iterable[Hashable] | None = None,
    cap: int = DEFAULT_QUBIT_CAP,
) -> dict[Hashable, np.ndarray]:
    """Parameter-shift gradient of each selected probability, per element."""
    _check_components(measured, components)
    sel = np.asarray(components, dtype=np.int64)
    base = vqc._angles(values)
    grads: dict[Hashable, np.ndarray] = {}
    for key in _shift_keys(vqc, keys):
        total = np.zeros(len(components))
        for pos in vqc.occurrences[key]:
            shifted = base.copy()
            shifted[pos] = base[pos] + _HALF_PI
            p_plus = probabilities(vqc._state_for(shifted, cap=cap), measured)[sel]
            shifted[pos] = base[pos] - _HALF_PI
            p_minus = probabilities(vqc._state_for(shifted, cap=cap), measured)[sel]
            total += vqc.gates[pos].coeff * (p_plus - p_minus) / 2.0
        grads[key] = total
    return grads


def evolution(vqc: VQC, ham: PauliOperator, var: Hashable, qubits: list[int]) -> None:
    """Append gates realizing exp(-i * theta * c * P) for every term c*P.

    Requires mutually commuting terms: every non-identity term is a Z word,
    or every non-identity term is a single-qubit X word.  Identity terms
    contribute only a global phase and append nothing.
    """
    words = [t for t in ham.terms if not t.is_identity]
    all_z = all(ax == "Z" for t in words for ax in t.axes())
    all_single_x = all(t.axes() == ("X",) for t in words)
    if not (all_z or all_single_x):
        raise UnsupportedHamiltonianError(
            "evolution supports Z words or single-qubit X words, not mixed/general terms"
        )
    for term in words:
        targets = [qubits[q] for q in term.qubits()]
        is_x = term.axes() == ("X",)
        if is_x:
            vqc.h(targets[0])
        for a, b in zip(targets, targets[1:]):
            vqc.cnot(a, b)
        vqc.rz(targets[-1], var=var, coeff=2.0 * term.coefficient)
        for a, b in reversed(list(zip(targets, targets[1:]))):
            vqc.cnot(a, b)
        if is_x:
            vqc.h(targets[0])
