"""Shared circuit construction for the training flows."""
from __future__ import annotations

from ..graph import Variable
from ..vqc import VQC


def hardware_efficient_layers(
    vqc: VQC,
    qubits: list[int],
    theta: Variable,
    depth: int,
    final_rotations: bool = False,
    start: int = 0,
) -> int:
    """Append ``depth`` layers of bound RY+RZ rotations followed by a CNOT
    chain, optionally closing with one more rotation layer.

    Variable elements are consumed from ``theta`` starting at flat index
    ``start``; returns the next unused index.
    """
    idx = start

    def rotation_layer():
        nonlocal idx
        for q in qubits:
            vqc.ry(q, var=(theta, idx))
            idx += 1
            vqc.rz(q, var=(theta, idx))
            idx += 1

    for _ in range(depth):
        rotation_layer()
        for a, b in zip(qubits, qubits[1:]):
            vqc.cnot(a, b)
    if final_rotations:
        rotation_layer()
    return idx


def n_ansatz_parameters(n_qubits: int, depth: int, final_rotations: bool = False) -> int:
    layers = depth + (1 if final_rotations else 0)
    return layers * 2 * n_qubits
