"""Dense real tensors of rank <= 2 and the arithmetic the graph operators need.

Every value is stored as an immutable float64 matrix.  Scalars normalize to
shape (1, 1) and 1-D input normalizes to a row (1, n); explicit 2-D input
keeps its shape.
"""
from __future__ import annotations

import numpy as np

from .errors import DomainError, ShapeError

__all__ = ["Tensor", "elementwise", "unary", "dot", "reduce_sum"]


class Tensor:
    """Immutable scalar/vector/matrix of 64-bit floats."""

    __slots__ = ("data",)

    def __init__(self, values):
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        elif arr.ndim == 1:
            arr = arr.reshape(1, -1)
        elif arr.ndim != 2:
            raise ShapeError(f"rank {arr.ndim} tensor not supported (max rank 2)")
        if not np.all(np.isfinite(arr)):
            raise DomainError("tensor entries must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        self.data = arr

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def is_scalar(self) -> bool:
        return self.data.size == 1

    @property
    def is_vector(self) -> bool:
        return min(self.data.shape) == 1 and self.data.size > 1

    def item(self) -> float:
        if not self.is_scalar:
            raise ShapeError(f"item() on non-scalar tensor of shape {self.shape}")
        return float(self.data.reshape(-1)[0])

    def flat(self) -> np.ndarray:
        return self.data.reshape(-1)

    def __repr__(self) -> str:
        if self.is_scalar:
            return f"Tensor({self.item()!r})"
        return f"Tensor(shape={self.shape})"


_BINARY = {
    "add": np.add,
    "sub": np.subtract,
    "mul": np.multiply,
    "div": np.divide,
}

_UNARY = {"exp": np.exp, "log": np.log}


def _broadcast_pair(a: Tensor, b: Tensor) -> tuple[np.ndarray, np.ndarray]:
    """Equal shapes pass through; a scalar operand broadcasts to the other."""
    if a.shape == b.shape:
        return a.data, b.data
    if a.is_scalar:
        return np.full(b.shape, a.item()), b.data
    if b.is_scalar:
        return a.data, np.full(a.shape, b.item())
    raise ShapeError(f"shapes {a.shape} and {b.shape} do not conform")


def elementwise(a: Tensor, b: Tensor, op: str) -> Tensor:
    if op not in _BINARY:
        raise ValueError(f"unknown elementwise op {op!r}")
    x, y = _broadcast_pair(a, b)
    if op == "div" and np.any(y == 0.0):
        raise DomainError("division by a zero entry")
    return Tensor(_BINARY[op](x, y))


def unary(a: Tensor, op: str) -> Tensor:
    if op not in _UNARY:
        raise ValueError(f"unknown unary op {op!r}")
    if op == "log" and np.any(a.data <= 0.0):
        raise DomainError("log of a non-positive entry")
    with np.errstate(over="ignore"):
        out = _UNARY[op](a.data)
    if not np.all(np.isfinite(out)):
        raise DomainError(f"{op} overflowed to a non-finite value")
    return Tensor(out)


def dot(a: Tensor, b: Tensor) -> Tensor:
    """Matrix product, matrix-vector product, or vector inner product.

    Dispatch: conforming inner extents -> matrix product; two vectors of
    equal length -> scalar inner product; matrix times a row vector whose
    length matches the column count -> matrix-vector product.
    """
    if a.shape[1] == b.shape[0]:
        return Tensor(a.data @ b.data)
    if a.is_vector and b.is_vector and a.data.size == b.data.size:
        return Tensor(np.dot(a.flat(), b.flat()))
    if b.is_vector and b.data.size == a.shape[1]:
        return Tensor(a.data @ b.flat())
    raise ShapeError(f"dot extents do not conform: {a.shape} x {b.shape}")


def reduce_sum(a: Tensor) -> Tensor:
    return Tensor(np.sum(a.data))
