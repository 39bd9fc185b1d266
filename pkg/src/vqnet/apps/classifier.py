"""Two-class quantum classifier: angle-encoded features, a layered
parameterized circuit, and a parity-check readout on an ancilla.

The ancilla's Z expectation E_z decides the class by sign; the training
loss is softmax cross-entropy over the complementary projector pair
(I + Z_a)/2 and (I - Z_a)/2, whose argmax agrees with sign(E_z).
"""
from __future__ import annotations

import math
import time

import numpy as np

from ..errors import UsageError
from ..graph import cross_entropy, expression, placeholder, qop, reduce_sum, softmax, var
from ..optim import OptimizerConfig, make_optimizer
from ..pauli import PauliOperator
from ..simulator import Machine
from ..vqc import VQC
from .circuits import hardware_efficient_layers, n_ansatz_parameters
from .io import Dataset
from .report import RunReport

__all__ = ["run_classifier", "synthetic_dataset"]


def synthetic_dataset(n_samples: int, rng: np.random.Generator) -> Dataset:
    """Separable two-feature set: class 0 sits low on both features, class 1
    sits high, with a wide margin so one rotation angle splits them."""
    labels = rng.integers(0, 2, size=n_samples)
    low = rng.uniform(0.1, 0.4, size=(n_samples, 2))
    high = rng.uniform(0.6, 0.9, size=(n_samples, 2))
    features = np.where(labels[:, None] == 0, low, high)
    one_hot = np.zeros((n_samples, 2))
    one_hot[np.arange(n_samples), labels] = 1.0
    return Dataset(features, one_hot)


def _scale_features(train, test, lo, hi):
    """Min-max scaling fit on the training split only; test values clip into range."""
    mins = train.min(axis=0)
    spans = train.max(axis=0) - mins
    spans[spans == 0.0] = 1.0

    def apply(x):
        return np.clip((x - mins) / spans * (hi - lo) + lo, lo, hi)

    return apply(train), apply(test)


def run_classifier(
    data: Dataset,
    depth: int = 2,
    cfg: OptimizerConfig | None = None,
    iterations: int = 200,
    seed: int = 0,
    test_fraction: float = 1.0 / 3.0,
    scale_range: tuple[float, float] = (0.0, math.pi),
) -> RunReport:
    if data.labels.shape[1] != 2:
        raise UsageError(f"only two-class problems are supported, got {data.labels.shape[1]} classes")
    cfg = cfg or OptimizerConfig(kind="adam")
    started = time.perf_counter()
    rng = np.random.default_rng(seed)

    order = rng.permutation(data.n_samples)
    n_test = max(1, int(round(data.n_samples * test_fraction)))
    test_idx, train_idx = order[:n_test], order[n_test:]
    train_x, test_x = _scale_features(
        data.features[train_idx], data.features[test_idx], *scale_range
    )
    train_y, test_y = data.labels[train_idx], data.labels[test_idx]

    m = data.n_features
    ancilla = m
    machine = Machine()
    qubits = machine.allocate(m + 1)

    features = placeholder((m, 1))
    labels = placeholder((2, 1))
    theta = var(rng.uniform(0.0, 2.0 * math.pi, size=(n_ansatz_parameters(m, depth), 1)))

    vqc = VQC(m + 1)
    for q in range(m):
        vqc.ry(q, var=(features, q))
    hardware_efficient_layers(vqc, qubits[:m], theta, depth)
    for q in range(m):
        vqc.cnot(q, ancilla)

    projectors = [
        PauliOperator([((), 0.5), (((ancilla, "Z"),), 0.5)]),
        PauliOperator([((), 0.5), (((ancilla, "Z"),), -0.5)]),
    ]
    expectations = qop(vqc, projectors, machine, qubits)
    loss = reduce_sum(cross_entropy(labels, softmax(expectations)))
    expr = expression(loss)

    def test_accuracy() -> float:
        features.feed(test_x)
        out = expectations.get_value().data
        e_z = out[:, 0] - out[:, 1]
        predicted = np.where(e_z >= 0.0, 0, 1)
        features.feed(train_x)
        return float(np.mean(predicted == np.argmax(test_y, axis=1)))

    features.feed(train_x)
    labels.feed(train_y)
    opt = make_optimizer(cfg, expr, variables=[theta])
    accuracy_history: list[float] = []
    history = opt.run(iterations, callback=lambda i, loss: accuracy_history.append(test_accuracy()))

    features.feed(test_x)
    out = expectations.get_value().data
    e_z = out[:, 0] - out[:, 1]
    sign_predictions = np.where(e_z >= 0.0, 0, 1)
    argmax_predictions = np.argmax(out, axis=1)
    accuracy = float(np.mean(sign_predictions == np.argmax(test_y, axis=1)))

    return RunReport(
        task="classifier",
        config={
            "depth": depth,
            "optimizer": cfg.kind,
            "learning_rate": cfg.learning_rate,
            "momentum": cfg.momentum,
            "iterations": iterations,
            "n_features": m,
            "n_train": int(train_idx.size),
            "n_test": int(test_idx.size),
            "scale_range": list(scale_range),
        },
        seed=seed,
        loss_history=history,
        metrics={
            "test_accuracy": accuracy,
            "final_loss": history[-1],
            "sign_agrees_with_argmax": bool(np.array_equal(sign_predictions, argmax_predictions)),
        },
        wall_time_s=time.perf_counter() - started,
        accuracy_history=accuracy_history,
    )
