import math

import numpy as np
import pytest

from vqnet.errors import DomainError, ShapeError
from vqnet.tensor import Tensor, dot, elementwise, reduce_sum, unary


class TestElementwise:
    def test_sub_self_is_zero(self):
        t = Tensor([1, 2, 3])
        assert np.array_equal(elementwise(t, t, "sub").data, np.zeros((1, 3)))

    def test_scalar_broadcast_mul(self):
        out = elementwise(Tensor([1, 2]), Tensor(2.0), "mul")
        assert np.array_equal(out.flat(), [2, 4])

    def test_div_entrywise(self):
        # oracle: direct entrywise arithmetic
        out = elementwise(Tensor([6, 8]), Tensor([3, 2]), "div")
        assert np.array_equal(out.flat(), [6 / 3, 8 / 2])

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            elementwise(Tensor([1, 2]), Tensor([1, 2, 3]), "add")

    def test_zero_divisor(self):
        with pytest.raises(DomainError):
            elementwise(Tensor([1, 2]), Tensor([1, 0]), "div")

    def test_result_shape_follows_non_scalar(self):
        out = elementwise(Tensor(3.0), Tensor([[1, 2], [3, 4]]), "add")
        assert out.shape == (2, 2)


class TestUnary:
    def test_exp_zero(self):
        assert unary(Tensor([0.0]), "exp").item() == 1.0

    def test_log_one(self):
        assert unary(Tensor([1.0]), "log").item() == 0.0

    def test_exp_one(self):
        assert unary(Tensor([1.0]), "exp").item() == pytest.approx(math.e, rel=1e-15)

    def test_log_non_positive(self):
        with pytest.raises(DomainError):
            unary(Tensor([1.0, 0.0]), "log")

    def test_exp_overflow(self):
        with pytest.raises(DomainError):
            unary(Tensor([1e4]), "exp")


class TestDot:
    def test_identity(self):
        x = Tensor([3.5, -1.25])
        out = dot(Tensor(np.eye(2)), x)
        assert np.array_equal(out.flat(), x.flat())

    def test_inner_product(self):
        assert dot(Tensor([1, 2, 3]), Tensor([1, 1, 1])).item() == 6.0

    def test_matrix_product(self):
        out = dot(Tensor([[1, 2], [3, 4]]), Tensor([[5], [6]]))
        assert np.array_equal(out.data, [[17], [39]])

    def test_non_conforming(self):
        with pytest.raises(ShapeError):
            dot(Tensor([[1, 2], [3, 4]]), Tensor([1, 2, 3]))


class TestReduceSum:
    def test_vector(self):
        assert reduce_sum(Tensor([1, 2, 3])).item() == 6.0

    def test_scalar_identity(self):
        assert reduce_sum(Tensor(5.0)).item() == 5.0

    def test_matrix(self):
        assert reduce_sum(Tensor(np.ones((2, 2)))).item() == 4.0


class TestConstruction:
    def test_scalar_normalizes(self):
        assert Tensor(2.3).shape == (1, 1)

    def test_vector_normalizes_to_row(self):
        assert Tensor([1, 2, 3]).shape == (1, 3)

    def test_rank3_rejected(self):
        with pytest.raises(ShapeError):
            Tensor(np.zeros((2, 2, 2)))

    def test_non_finite_rejected(self):
        with pytest.raises(DomainError):
            Tensor([1.0, float("nan")])

    def test_immutable(self):
        t = Tensor([1.0, 2.0])
        with pytest.raises(ValueError):
            t.data[0, 0] = 9.0


class TestProperties:
    def test_add_mul_commutative_associative(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            a = Tensor(rng.normal(size=(3, 4)))
            b = Tensor(rng.normal(size=(3, 4)))
            c = Tensor(rng.normal(size=(3, 4)))
            for op in ("add", "mul"):
                ab = elementwise(a, b, op)
                ba = elementwise(b, a, op)
                assert np.allclose(ab.data, ba.data, rtol=1e-12, atol=0)
                left = elementwise(elementwise(a, b, op), c, op)
                right = elementwise(a, elementwise(b, c, op), op)
                assert np.allclose(left.data, right.data, rtol=1e-12, atol=1e-15)

    def test_dot_identity_exact(self):
        rng = np.random.default_rng(5)
        x = Tensor(rng.normal(size=6))
        out = dot(Tensor(np.eye(6)), x)
        assert np.array_equal(out.flat(), x.flat())

    def test_reduce_sum_additive(self):
        rng = np.random.default_rng(7)
        a = Tensor(rng.normal(size=(4, 3)))
        b = Tensor(rng.normal(size=(4, 3)))
        lhs = reduce_sum(elementwise(a, b, "add")).item()
        rhs = reduce_sum(a).item() + reduce_sum(b).item()
        assert lhs == pytest.approx(rhs, rel=1e-12)
