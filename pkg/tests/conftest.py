import pytest

from vqnet.simulator import BoundCircuit, Gate, run


@pytest.fixture(scope="session", autouse=True)
def warm_kernel():
    """Trigger the one-off JIT compile so timed tests measure only the algorithms."""
    run(BoundCircuit(2, [Gate("H", 0), Gate("RY", 1, angle=0.1), Gate("CNOT", 1, 0)]))
