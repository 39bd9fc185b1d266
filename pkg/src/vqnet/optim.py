"""Gradient-based optimizers driving the Expression train loop.

Every step runs forward then backward and applies the update rule; the
returned loss is the pre-update value, so ``history[0]`` is the cost at the
initial parameters.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import UsageError
from .graph import Expression, Variable

__all__ = [
    "OptimizerConfig",
    "Optimizer",
    "GradientDescentOptimizer",
    "MomentumOptimizer",
    "AdaGradOptimizer",
    "RMSPropOptimizer",
    "AdamOptimizer",
    "make_optimizer",
]


@dataclass
class OptimizerConfig:
    kind: str = "momentum"
    learning_rate: float = 0.02
    momentum: float = 0.9
    beta1: float = 0.9
    beta2: float = 0.999
    decay: float = 0.9
    epsilon: float = 1e-8

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise UsageError(f"learning rate must be positive, got {self.learning_rate}")
        for name in ("momentum", "beta1", "beta2", "decay"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise UsageError(f"{name} must lie in [0, 1), got {v}")
        if not self.epsilon > 0:
            raise UsageError(f"epsilon must be positive, got {self.epsilon}")


class Optimizer:
    """Base loop: subclasses implement the per-variable update rule."""

    def __init__(self, expr: Expression, learning_rate: float, variables: Sequence[Variable] | None = None):
        self.expr = expr
        self.lr = learning_rate
        self.variables = list(variables) if variables is not None else expr.variables
        self._history: list[float] = []
        self.t = 0

    def step(self) -> float:
        loss = self.expr.forward()
        if not loss.is_scalar:
            raise UsageError(f"loss must be scalar, got shape {loss.shape}")
        grads = self.expr.backward()
        self.t += 1
        for v in self.variables:
            self._update(v, grads[v])
        return loss.item()

    def _update(self, v: Variable, grad: np.ndarray) -> None:
        raise NotImplementedError

    def run(self, max_iterations: int, callback: Callable[[int, float], None] | None = None) -> list[float]:
        if max_iterations < 1:
            raise UsageError("max_iterations must be at least 1")
        for i in range(max_iterations):
            loss = self.step()
            self._history.append(loss)
            if callback is not None:
                callback(i, loss)
        return list(self._history)

    def get_value(self) -> float:
        if not self._history:
            raise UsageError("run has not produced a loss yet")
        return self._history[-1]


class GradientDescentOptimizer(Optimizer):
    def _update(self, v, grad):
        v.set_value(v.data - self.lr * grad)


class MomentumOptimizer(Optimizer):
    def __init__(self, expr, learning_rate=0.02, momentum=0.9, variables=None):
        super().__init__(expr, learning_rate, variables)
        self.momentum = momentum
        self._velocity: dict[int, np.ndarray] = {}

    def _update(self, v, grad):
        vel = self._velocity.get(v.uid, np.zeros(grad.shape))
        vel = self.momentum * vel - self.lr * grad
        self._velocity[v.uid] = vel
        v.set_value(v.data + vel)


class AdaGradOptimizer(Optimizer):
    def __init__(self, expr, learning_rate=0.02, epsilon=1e-8, variables=None):
        super().__init__(expr, learning_rate, variables)
        self.epsilon = epsilon
        self._accum: dict[int, np.ndarray] = {}

    def _update(self, v, grad):
        acc = self._accum.get(v.uid, np.zeros(grad.shape)) + grad * grad
        self._accum[v.uid] = acc
        v.set_value(v.data - self.lr * grad / (np.sqrt(acc) + self.epsilon))


class RMSPropOptimizer(Optimizer):
    def __init__(self, expr, learning_rate=0.02, decay=0.9, epsilon=1e-8, variables=None):
        super().__init__(expr, learning_rate, variables)
        self.decay = decay
        self.epsilon = epsilon
        self._accum: dict[int, np.ndarray] = {}

    def _update(self, v, grad):
        acc = self._accum.get(v.uid, np.zeros(grad.shape))
        acc = self.decay * acc + (1.0 - self.decay) * grad * grad
        self._accum[v.uid] = acc
        v.set_value(v.data - self.lr * grad / (np.sqrt(acc) + self.epsilon))


class AdamOptimizer(Optimizer):
    def __init__(self, expr, learning_rate=0.02, beta1=0.9, beta2=0.999, epsilon=1e-8, variables=None):
        super().__init__(expr, learning_rate, variables)
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self._m: dict[int, np.ndarray] = {}
        self._v: dict[int, np.ndarray] = {}

    def _update(self, v, grad):
        m = self._m.get(v.uid, np.zeros(grad.shape))
        s = self._v.get(v.uid, np.zeros(grad.shape))
        m = self.beta1 * m + (1.0 - self.beta1) * grad
        s = self.beta2 * s + (1.0 - self.beta2) * grad * grad
        self._m[v.uid] = m
        self._v[v.uid] = s
        m_hat = m / (1.0 - self.beta1**self.t)
        s_hat = s / (1.0 - self.beta2**self.t)
        v.set_value(v.data - self.lr * m_hat / (np.sqrt(s_hat) + self.epsilon))


def make_optimizer(cfg: OptimizerConfig, expr: Expression, variables=None) -> Optimizer:
    lr = cfg.learning_rate
    if cfg.kind == "gd":
        return GradientDescentOptimizer(expr, lr, variables)
    if cfg.kind == "momentum":
        return MomentumOptimizer(expr, lr, cfg.momentum, variables)
    if cfg.kind == "adagrad":
        return AdaGradOptimizer(expr, lr, cfg.epsilon, variables)
    if cfg.kind == "rmsprop":
        return RMSPropOptimizer(expr, lr, cfg.decay, cfg.epsilon, variables)
    if cfg.kind == "adam":
        return AdamOptimizer(expr, lr, cfg.beta1, cfg.beta2, cfg.epsilon, variables)
    raise UsageError(f"unknown optimizer kind {cfg.kind!r}")
