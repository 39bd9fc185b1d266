"""Symbolic computation graph: variables, placeholders, classical operators,
the two quantum operators, and forward/back propagation through an Expression.

Values flowing through the graph are Tensors.  A forward pass evaluates the
whole reachable subgraph in one topological sweep and caches every node
value; backward seeds the (scalar) root with gradient 1 and accumulates
reverse-topologically into every variable leaf.  Placeholders receive no
gradient.

Batch convention: a placeholder holds its fed batch with the sample index as
the leading extent.  A quantum operator whose circuit binds placeholder
elements re-evaluates the circuit per batch row and stacks the per-row
outputs.
"""
from __future__ import annotations

import itertools
from typing import Hashable, Sequence

import numpy as np

from .errors import ShapeError, UnboundVariableError, UsageError
from .pauli import PauliOperator
from .simulator import Machine, expectation, probabilities
from .tensor import Tensor
from . import tensor as _t
from .vqc import VQC, parameter_shift_grad, pmeasure_grad

__all__ = [
    "Node",
    "Variable",
    "Placeholder",
    "Expression",
    "var",
    "placeholder",
    "add",
    "sub",
    "mul",
    "div",
    "exp",
    "log",
    "dot",
    "softmax",
    "cross_entropy",
    "least_square",
    "reduce_sum",
    "qop",
    "qop_pmeasure",
    "expression",
]

_uid = itertools.count()

CLIP_EPS = 1e-12


class Node:
    """One vertex of the computation graph."""

    kind = "operator"
    op: str | None = None

    def __init__(self, children: Sequence["Node"] = ()):
        self.uid = next(_uid)
        self.children: list[Node] = list(children)
        self.value: Tensor | None = None
        self.grad: np.ndarray | None = None

    def _forward(self) -> Tensor:
        raise NotImplementedError

    def _backward(self) -> None:
        pass

    def get_value(self) -> Tensor:
        """Evaluate the subgraph rooted here and return the cached value."""
        for node in _topological(self):
            node.value = node._forward()
        return self.value

    def set_value(self, value) -> None:
        raise UsageError(f"set_value is only valid on variable leaves, not {type(self).__name__}")

    # graph-building sugar; operands must already be nodes
    def __add__(self, other):
        return add(self, other) if isinstance(other, Node) else NotImplemented

    def __sub__(self, other):
        return sub(self, other) if isinstance(other, Node) else NotImplemented

    def __mul__(self, other):
        return mul(self, other) if isinstance(other, Node) else NotImplemented

    def __truediv__(self, other):
        return div(self, other) if isinstance(other, Node) else NotImplemented

    def __repr__(self):
        tag = self.op or self.kind
        return f"<{type(self).__name__} {tag} uid={self.uid}>"


def _topological(root: Node) -> list[Node]:
    """Children-first ordering of the subgraph under ``root`` (iterative DFS)."""
    order: list[Node] = []
    seen: set[int] = set()
    stack: list[tuple[Node, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for child in reversed(node.children):
            stack.append((child, False))
    return order


class Variable(Node):
    """Trainable leaf holding a scalar, vector, or matrix."""

    kind = "variable"

    def __init__(self, initial):
        super().__init__()
        self._stored = Tensor(initial)

    def set_value(self, value) -> None:
        self._stored = Tensor(value)

    def _forward(self) -> Tensor:
        return self._stored

    @property
    def data(self) -> np.ndarray:
        return self._stored.data

    @property
    def size(self) -> int:
        return self._stored.data.size


class Placeholder(Node):
    """Leaf fed with a batch of samples; the batch extent may change per feed."""

    kind = "placeholder"

    def __init__(self, shape):
        super().__init__()
        self.feature_dim = int(shape[0]) if isinstance(shape, (tuple, list)) else int(shape)
        self._batch: Tensor | None = None

    def feed(self, batch) -> None:
        value = Tensor(batch)
        if value.shape[1] != self.feature_dim:
            raise ShapeError(
                f"fed batch has {value.shape[1]} features, placeholder expects {self.feature_dim}"
            )
        self._batch = value

    def _forward(self) -> Tensor:
        if self._batch is None:
            raise UnboundVariableError("placeholder was never fed")
        return self._batch


def var(initial) -> Variable:
    return Variable(initial)


def placeholder(shape) -> Placeholder:
    return Placeholder(shape)


def _unbroadcast(grad: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    """Collapse a gradient onto a (possibly scalar-broadcast) operand shape."""
    if grad.shape == shape:
        return grad
    if shape == (1, 1):
        return np.sum(grad).reshape(1, 1)
    raise ShapeError(f"cannot reduce gradient of shape {grad.shape} onto {shape}")


class _Elementwise(Node):
    def __init__(self, a: Node, b: Node, op: str):
        super().__init__([a, b])
        self.op = op

    def _forward(self) -> Tensor:
        return _t.elementwise(self.children[0].value, self.children[1].value, self.op)

    def _backward(self) -> None:
        a, b = self.children
        g = self.grad
        av, bv = a.value.data, b.value.data
        if self.op == "add":
            da, db = g, g
        elif self.op == "sub":
            da, db = g, -g
        elif self.op == "mul":
            da, db = g * bv, g * av
        else:  # div
            da = g / bv
            db = -g * av / (bv * bv)
        a.grad += _unbroadcast(np.broadcast_to(da, self.value.shape), a.value.shape)
        b.grad += _unbroadcast(np.broadcast_to(db, self.value.shape), b.value.shape)


class _Unary(Node):
    def __init__(self, a: Node, op: str):
        super().__init__([a])
        self.op = op

    def _forward(self) -> Tensor:
        return _t.unary(self.children[0].value, self.op)

    def _backward(self) -> None:
        (a,) = self.children
        if self.op == "exp":
            a.grad += self.grad * self.value.data
        else:  # log
            a.grad += self.grad / a.value.data


class _Dot(Node):
    op = "dot"

    def __init__(self, a: Node, b: Node):
        super().__init__([a, b])

    def _forward(self) -> Tensor:
        return _t.dot(self.children[0].value, self.children[1].value)

    def _backward(self) -> None:
        a, b = self.children
        av, bv = a.value.data, b.value.data
        g = self.grad
        if a.value.shape[1] == b.value.shape[0]:  # matrix product
            a.grad += g @ bv.T
            b.grad += av.T @ g
        elif a.value.is_vector and b.value.is_vector and av.size == bv.size:  # inner
            s = float(g.reshape(-1)[0])
            a.grad += s * bv.reshape(av.shape)
            b.grad += s * av.reshape(bv.shape)
        else:  # matrix times row vector
            gv = g.reshape(-1)
            a.grad += np.outer(gv, bv.reshape(-1))
            b.grad += (gv @ av).reshape(bv.shape)


class _Softmax(Node):
    op = "softmax"

    def __init__(self, z: Node):
        super().__init__([z])

    def _forward(self) -> Tensor:
        z = self.children[0].value.data
        e = np.exp(z - z.max(axis=1, keepdims=True))
        return Tensor(e / e.sum(axis=1, keepdims=True))

    def _backward(self) -> None:
        s = self.value.data
        g = self.grad
        self.children[0].grad += s * (g - np.sum(g * s, axis=1, keepdims=True))


class _CrossEntropy(Node):
    op = "cross_entropy"

    def __init__(self, label: Node, pred: Node):
        super().__init__([label, pred])

    def _forward(self) -> Tensor:
        label, pred = self.children[0].value, self.children[1].value
        if label.shape != pred.shape:
            raise ShapeError(f"label shape {label.shape} != prediction shape {pred.shape}")
        clipped = np.clip(pred.data, CLIP_EPS, 1.0)
        return Tensor(-np.sum(label.data * np.log(clipped), axis=1, keepdims=True))

    def _backward(self) -> None:
        # labels are treated as constants: only the prediction side is differentiated
        label, pred = self.children
        clipped = np.clip(pred.value.data, CLIP_EPS, 1.0)
        pred.grad += -self.grad * label.value.data / clipped


class _LeastSquare(Node):
    op = "least_square"

    def __init__(self, label: Node, pred: Node):
        super().__init__([label, pred])

    def _forward(self) -> Tensor:
        label, pred = self.children[0].value, self.children[1].value
        if label.shape != pred.shape:
            raise ShapeError(f"label shape {label.shape} != prediction shape {pred.shape}")
        return Tensor((label.data - pred.data) ** 2)

    def _backward(self) -> None:
        label, pred = self.children
        diff = pred.value.data - label.value.data
        pred.grad += self.grad * 2.0 * diff
        label.grad += self.grad * -2.0 * diff


class _ReduceSum(Node):
    op = "reduce_sum"

    def __init__(self, a: Node):
        super().__init__([a])

    def _forward(self) -> Tensor:
        return _t.reduce_sum(self.children[0].value)

    def _backward(self) -> None:
        (a,) = self.children
        a.grad += float(self.grad.reshape(-1)[0]) * np.ones(a.value.shape)


class _QuantumNode(Node):
    """Shared plumbing for qop and qop_pmeasure: per-row binding of a VQC
    whose variable elements are (leaf node, flat index) keys."""

    def __init__(self, vqc: VQC, machine: Machine, qubits: Sequence[int]):
        if vqc.n_qubits > machine.qubit_cap:
            raise UsageError(f"circuit needs {vqc.n_qubits} qubits, machine caps at {machine.qubit_cap}")
        leaves: list[Node] = []
        for key in vqc.occurrences:
            node, _ = self._split_key(key)
            if not isinstance(node, (Variable, Placeholder)):
                raise UsageError("circuit bindings must reference variable or placeholder leaves")
            if node not in leaves:
                leaves.append(node)
        super().__init__(leaves)
        self.vqc = vqc
        self.machine = machine
        self.qubits = list(qubits)
        self._trainable = [k for k in vqc.occurrences if isinstance(self._split_key(k)[0], Variable)]

    @staticmethod
    def _split_key(key: Hashable) -> tuple[Node, int]:
        if not (isinstance(key, tuple) and len(key) == 2 and isinstance(key[0], Node)):
            raise UsageError(f"binding key must be (leaf, element-index), got {key!r}")
        return key

    def _batch_size(self) -> int:
        sizes = {
            leaf.value.shape[0] for leaf in self.children if isinstance(leaf, Placeholder)
        }
        if len(sizes) > 1:
            raise ShapeError(f"placeholders feeding one circuit disagree on batch size: {sorted(sizes)}")
        return sizes.pop() if sizes else 1

    def _row_values(self, row: int) -> dict:
        values = {}
        for key in self.vqc.occurrences:
            leaf, idx = self._split_key(key)
            if isinstance(leaf, Placeholder):
                values[key] = float(leaf.value.data[row, idx])
            else:
                values[key] = float(leaf.value.flat()[idx])
        return values

    def _row_state(self, values):
        return self.vqc._state_for(self.vqc._angles(values), cap=self.machine.qubit_cap)


class _Qop(_QuantumNode):
    op = "qop"

    def __init__(self, vqc, hams, machine, qubits):
        hams = [hams] if isinstance(hams, PauliOperator) else list(hams)
        if not hams:
            raise UsageError("qop needs at least one Hamiltonian")
        for h in hams:
            if h.max_qubit() >= vqc.n_qubits:
                raise UsageError(
                    f"Hamiltonian acts on qubit {h.max_qubit()} but circuit has {vqc.n_qubits}"
                )
        super().__init__(vqc, machine, qubits)
        self.hams = hams

    def _forward(self) -> Tensor:
        rows = np.empty((self._batch_size(), len(self.hams)))
        for r in range(rows.shape[0]):
            state = self._row_state(self._row_values(r))
            for i, ham in enumerate(self.hams):
                rows[r, i] = expectation(state, ham)
        return Tensor(rows)

    def _backward(self) -> None:
        if not self._trainable:
            return
        g = self.grad
        for r in range(g.shape[0]):
            values = self._row_values(r)
            for i, ham in enumerate(self.hams):
                upstream = g[r, i]
                if upstream == 0.0:
                    continue
                shifts = parameter_shift_grad(
                    self.vqc, values, ham, keys=self._trainable, cap=self.machine.qubit_cap
                )
                for key, val in shifts.items():
                    leaf, idx = key
                    leaf.grad.reshape(-1)[idx] += upstream * val


class _QopPmeasure(_QuantumNode):
    op = "qop_pmeasure"

    def __init__(self, vqc, components, machine, qubits):
        components = list(components)
        limit = 1 << len(qubits)
        for label in components:
            if not 0 <= label < limit:
                raise ValueError(f"component label {label} out of range for {len(qubits)} measured qubits")
        super().__init__(vqc, machine, qubits)
        self.components = components
        self._sel = np.asarray(components, dtype=np.int64)

    def _forward(self) -> Tensor:
        rows = np.empty((self._batch_size(), len(self.components)))
        for r in range(rows.shape[0]):
            state = self._row_state(self._row_values(r))
            rows[r] = probabilities(state, self.qubits)[self._sel]
        return Tensor(rows)

    def _backward(self) -> None:
        if not self._trainable:
            return
        g = self.grad
        for r in range(g.shape[0]):
            upstream = g[r]
            if not np.any(upstream):
                continue
            shifts = pmeasure_grad(
                self.vqc,
                self._row_values(r),
                self.qubits,
                self.components,
                keys=self._trainable,
                cap=self.machine.qubit_cap,
            )
            for key, vals in shifts.items():
                leaf, idx = key
                leaf.grad.reshape(-1)[idx] += float(upstream @ vals)


def add(a: Node, b: Node) -> Node:
    return _Elementwise(a, b, "add")


def sub(a: Node, b: Node) -> Node:
    return _Elementwise(a, b, "sub")


def mul(a: Node, b: Node) -> Node:
    return _Elementwise(a, b, "mul")


def div(a: Node, b: Node) -> Node:
    return _Elementwise(a, b, "div")


def exp(a: Node) -> Node:
    return _Unary(a, "exp")


def log(a: Node) -> Node:
    return _Unary(a, "log")


def dot(a: Node, b: Node) -> Node:
    return _Dot(a, b)


def softmax(z: Node) -> Node:
    return _Softmax(z)


def cross_entropy(label: Node, pred: Node) -> Node:
    return _CrossEntropy(label, pred)


def least_square(label: Node, pred: Node) -> Node:
    return _LeastSquare(label, pred)


def reduce_sum(a: Node) -> Node:
    return _ReduceSum(a)


def qop(vqc: VQC, hamiltonians, machine: Machine, qubits: Sequence[int]) -> Node:
    """Expectations of the given Hamiltonians, one output column per Hamiltonian."""
    return _Qop(vqc, hamiltonians, machine, qubits)


def qop_pmeasure(vqc: VQC, components: Sequence[int], machine: Machine, qubits: Sequence[int]) -> Node:
    """Selected projection probabilities over the measured qubit subset."""
    return _QopPmeasure(vqc, components, machine, qubits)


class Expression:
    """Root wrapper that drives forward evaluation and back propagation."""

    def __init__(self, root: Node):
        self.root = root
        self._order = _topological(root)

    @property
    def variables(self) -> list[Variable]:
        return sorted(
            (n for n in self._order if isinstance(n, Variable)), key=lambda n: n.uid
        )

    def forward(self) -> Tensor:
        for node in self._order:
            node.value = node._forward()
        return self.root.value

    def backward(self) -> dict[Variable, np.ndarray]:
        if self.root.value is None:
            raise UsageError("forward must run before backward")
        if not self.root.value.is_scalar:
            raise UsageError(f"backward needs a scalar root, got shape {self.root.value.shape}")
        for node in self._order:
            node.grad = np.zeros(node.value.shape)
        self.root.grad = np.ones((1, 1))
        for node in reversed(self._order):
            node._backward()
        return {v: v.grad.copy() for v in self.variables}


def expression(root: Node) -> Expression:
    return Expression(root)
