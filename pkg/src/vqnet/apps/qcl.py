"""Learning one-dimensional functions with a trained circuit expectation.

Each sample x in [-1, 1] enters the circuit through RY(arcsin x) and
RZ(arccos x^2) on every qubit; the prediction is Coef * <Z_0> with a
trainable scalar Coef, fit by summed squared error.
"""
from __future__ import annotations

import math
import time

import numpy as np

from ..errors import UsageError
from ..graph import expression, least_square, mul, placeholder, qop, reduce_sum, var
from ..optim import OptimizerConfig, make_optimizer
from ..pauli import PauliOperator
from ..simulator import Machine
from ..vqc import VQC
from .circuits import hardware_efficient_layers, n_ansatz_parameters
from .report import RunReport

__all__ = ["TARGETS", "run_qcl"]

TARGETS = {
    "square": lambda x: x**2,
    "exp": np.exp,
    "sin": lambda x: np.sin(np.pi * x),
    "abs": np.abs,
}

PROBE_GRID = np.linspace(-1.0, 1.0, 201)


def _encode(x: np.ndarray) -> np.ndarray:
    """Per-sample encoding angles [arcsin x, arccos x^2]."""
    return np.column_stack([np.arcsin(x), np.arccos(x**2)])


def run_qcl(
    target: str,
    n_points: int = 50,
    depth: int = 3,
    n_qubits: int = 3,
    cfg: OptimizerConfig | None = None,
    iterations: int = 200,
    seed: int = 0,
) -> RunReport:
    if target not in TARGETS:
        raise UsageError(f"unknown target {target!r}; choose from {sorted(TARGETS)}")
    if n_points < 10:
        raise UsageError("at least 10 training points are required")
    cfg = cfg or OptimizerConfig()
    started = time.perf_counter()
    rng = np.random.default_rng(seed)

    f = TARGETS[target]
    xs = rng.uniform(-1.0, 1.0, size=n_points)
    ys = f(xs)

    angles = placeholder((2, 1))
    labels = placeholder((1, 1))
    theta = var(rng.uniform(0.0, 2.0 * math.pi, size=(n_ansatz_parameters(n_qubits, depth), 1)))
    coef = var(1.0)

    machine = Machine()
    qubits = machine.allocate(n_qubits)
    vqc = VQC(n_qubits)
    for q in qubits:
        vqc.ry(q, var=(angles, 0))
        vqc.rz(q, var=(angles, 1))
    hardware_efficient_layers(vqc, qubits, theta, depth)

    z0 = PauliOperator({"Z0": 1.0})
    expect = qop(vqc, z0, machine, qubits)
    prediction = mul(coef, expect)
    expr = expression(reduce_sum(least_square(labels, prediction)))

    angles.feed(_encode(xs))
    labels.feed(ys.reshape(-1, 1))
    opt = make_optimizer(cfg, expr, variables=[theta, coef])
    history = opt.run(iterations)

    final_loss = expr.forward().item()
    mse = final_loss / n_points

    angles.feed(_encode(PROBE_GRID))
    curve = prediction.get_value().flat()
    predictions = [
        [float(x), float(f(x)), float(y)] for x, y in zip(PROBE_GRID, curve)
    ]
    angles.feed(_encode(xs))

    return RunReport(
        task="qcl",
        config={
            "target": target,
            "n_points": n_points,
            "depth": depth,
            "n_qubits": n_qubits,
            "optimizer": cfg.kind,
            "learning_rate": cfg.learning_rate,
            "momentum": cfg.momentum,
            "iterations": iterations,
        },
        seed=seed,
        loss_history=history,
        metrics={"mse": mse, "final_loss": final_loss, "coef": coef.data.item()},
        wall_time_s=time.perf_counter() - started,
        predictions=predictions,
    )
