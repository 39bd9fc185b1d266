"""Hybrid quantum-classical computation graphs on an exact statevector simulator.

Build a loss out of variables, placeholders, classical operators, and the two
quantum operators (``qop`` for Hamiltonian expectations, ``qop_pmeasure`` for
projection probabilities); gradients of circuit parameters come from the
exact parameter-shift rule, and the optimizers drive the train loop.
"""

from .graph import (
    Expression,
    Placeholder,
    Variable,
    add,
    cross_entropy,
    div,
    dot,
    exp,
    expression,
    least_square,
    log,
    mul,
    placeholder,
    qop,
    qop_pmeasure,
    reduce_sum,
    softmax,
    sub,
    var,
)
from .optim import (
    AdaGradOptimizer,
    AdamOptimizer,
    GradientDescentOptimizer,
    MomentumOptimizer,
    OptimizerConfig,
    RMSPropOptimizer,
    make_optimizer,
)
from .pauli import PauliOperator
from .simulator import BoundCircuit, Gate, Machine, StateVector
from .tensor import Tensor
from .vqc import VQC, evolution

__all__ = [
    "Expression",
    "Placeholder",
    "Variable",
    "add",
    "cross_entropy",
    "div",
    "dot",
    "exp",
    "expression",
    "least_square",
    "log",
    "mul",
    "placeholder",
    "qop",
    "qop_pmeasure",
    "reduce_sum",
    "softmax",
    "sub",
    "var",
    "AdaGradOptimizer",
    "AdamOptimizer",
    "GradientDescentOptimizer",
    "MomentumOptimizer",
    "OptimizerConfig",
    "RMSPropOptimizer",
    "make_optimizer",
    "PauliOperator",
    "BoundCircuit",
    "Gate",
    "Machine",
    "StateVector",
    "Tensor",
    "VQC",
    "evolution",
]

__version__ = "0.1.0"
