"""
Unit Tests for the commuting operator D~, its matrix L~ and the kernel k(x, y)
"""

import math

import pytest
import numpy as np
import sys
from pathlib import Path

# Add src to path so we can import the application modules
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from config import CHECK_THRESHOLDS
from errors import DomainError, StructureError
from gram.block import BlockMatrix
from gram.inner_product import gram_M
from matrix_jacobi.identities import sample_points
from matrix_jacobi.model import ID, T, ModelParams
from matrix_jacobi.polynomials import Q_n, monic_chebyshev
from timeband.kernel import (
    apply_S_coeffs,
    kernel_intertwining_residual,
    kernel_k,
    kernel_sample_pairs,
)
from timeband.operators import (
    apply_Dtilde,
    build_Ltilde,
    build_Ltilde_T_variant,
    c_coeff,
    commutator_residual,
    dtilde_coeffs,
    dtilde_decomposition_residual,
    dtilde_table,
    ltilde_oracle,
    ltilde_oracle_deviation,
    m_symmetry_residual,
    mu,
    symmetry_residual,
    t_block,
    truncation_coupling,
)

INSTANCES = [
    ModelParams(0.3, 1.2, 6, 0.4),
    ModelParams(0.5, -0.5, 5, 0.7),
    ModelParams(0.0, 0.0, 8, 0.2),
    ModelParams(1.7, -0.5, 9, -0.6),
    ModelParams(-0.5, 0.0, 4, 0.9),
]


@pytest.fixture
def params():
    return ModelParams(alpha=0.3, beta=1.2, N=6, Omega=0.4)


class TestDtildeCoefficients:
    """Closed forms of E2, E1, E0"""

    def test_values_at_a_point(self, params):
        x, a, b, omega = 0.3, 0.3, 1.2, 0.4
        coeffs = dtilde_coeffs(params, x)
        np.testing.assert_allclose(coeffs.E2, (x - omega) * (1 - x ** 2) * ID, atol=1e-16)
        e1 = (-(3 + a + b) * x ** 2 + omega * (2 + a + b) * x + 1) * ID + (a - b) * (x - omega) * T
        np.testing.assert_allclose(coeffs.E1, e1, atol=1e-15)
        np.testing.assert_allclose(coeffs.E0, x * 6 * (6 + a + b + 2) * ID, rtol=1e-15)

    def test_shapes_follow_points(self, params):
        coeffs = dtilde_coeffs(params, np.zeros((3, 4)))
        assert coeffs.E1.shape == (3, 4, 2, 2)

    @pytest.mark.parametrize("instance", INSTANCES)
    def test_mu_vanishes_at_N(self, instance):
        """Q_N D~ has no Q_{N+1} component"""
        assert mu(instance, instance.N) == 0.0
        assert mu(instance, 0) == instance.A

    def test_c_coefficient(self, params):
        assert c_coeff(params, 0) == 0.0
        assert c_coeff(params, 3) == pytest.approx(3 * (0.3 - 1.2) / (1.5 + 6))

    @pytest.mark.parametrize("instance", INSTANCES)
    def test_decomposition(self, instance):
        """D~ = (x - Omega) D + (1 - x^2) d/dx + x A"""
        xs = sample_points(33, 0.9)
        for n in range(instance.N + 1):
            residual = dtilde_decomposition_residual(instance, Q_n(instance, n), xs)
            assert residual < CHECK_THRESHOLDS["dtilde_decomposition"]

    def test_table_agrees_with_handles(self, params):
        xs = sample_points(9, 0.8)
        table = dtilde_table(params, 3, xs)
        np.testing.assert_allclose(table[3], apply_Dtilde(params, Q_n(params, 3), xs), rtol=1e-14)

    def test_domain(self, params):
        with pytest.raises(DomainError):
            apply_Dtilde(params, Q_n(params, 1), np.array([0.2, -1.0]))


class TestLtilde:
    """Closed-form block tridiagonal L~"""

    def test_level_zero_is_zero(self):
        L = build_Ltilde(ModelParams(0.4, 0.1, 0, 0.3))
        assert L.order == 1
        np.testing.assert_array_equal(L.flat, np.zeros((2, 2)))

    def test_level_one_legendre(self):
        """alpha = beta = 0, N = 1: [[0, sqrt 3], [sqrt 3, 2 Omega]] (x) Id"""
        omega = 0.35
        L = build_Ltilde(ModelParams(0.0, 0.0, 1, omega))
        r3 = math.sqrt(3.0)
        expected = np.kron(np.array([[0.0, r3], [r3, 2 * omega]]), ID)
        np.testing.assert_allclose(L.flat, expected, atol=1e-14)

    @pytest.mark.parametrize("instance", INSTANCES)
    def test_matches_quadrature_oracle(self, instance):
        assert ltilde_oracle_deviation(instance) < CHECK_THRESHOLDS["ltilde_oracle"]

    @pytest.mark.parametrize("instance", INSTANCES)
    def test_symmetric_block_tridiagonal(self, instance):
        L = build_Ltilde(instance)
        assert symmetry_residual(L) < CHECK_THRESHOLDS["ltilde_symmetry"]
        for m in range(L.order):
            for n in range(L.order):
                if abs(m - n) > 1:
                    np.testing.assert_array_equal(L.block(m, n), np.zeros((2, 2)))

    @pytest.mark.parametrize("instance", INSTANCES)
    def test_truncation(self, instance):
        """Projection of Q_N D~ onto Q_{N+1} vanishes"""
        assert truncation_coupling(instance) < CHECK_THRESHOLDS["ltilde_truncation"]

    def test_oracle_is_not_trivial(self, params):
        """The oracle sees a single perturbed entry"""
        L = build_Ltilde(params)
        L.blocks[2, 3, 0, 0] += 1e-6
        assert ltilde_oracle_deviation(params, L) > 1e-9

    def test_oracle_shape_mismatch(self, params):
        with pytest.raises(StructureError):
            ltilde_oracle_deviation(params, BlockMatrix.zeros(3))

    def test_oracle_order(self, params):
        assert ltilde_oracle(params).order == params.N + 1

    def test_T_variant(self, params):
        variant = build_Ltilde_T_variant(params)
        np.testing.assert_allclose(variant.flat, build_Ltilde(params).flat @ t_block(7).flat, atol=1e-14)


class TestCommutation:
    """M commutes with L~, L~ T_blk and T_blk"""

    @pytest.mark.parametrize("instance", INSTANCES)
    def test_commutators(self, instance):
        M = gram_M(instance)
        L = build_Ltilde(instance)
        T_blk = t_block(M.order)
        assert commutator_residual(M, L) < CHECK_THRESHOLDS["commutator"]
        assert commutator_residual(M, L @ T_blk) < CHECK_THRESHOLDS["commutator_t_variant"]
        assert commutator_residual(M, T_blk) < CHECK_THRESHOLDS["commutator_t_block"]
        assert m_symmetry_residual(M, L) < CHECK_THRESHOLDS["m_symmetry"]

    def test_perturbed_L_does_not_commute(self, params):
        M = gram_M(params)
        L = build_Ltilde(params)
        L.blocks[1, 2] += 1e-2 * ID
        L.blocks[2, 1] += 1e-2 * ID
        assert commutator_residual(M, L) > 1e-8

    def test_rejects_mismatched_orders(self, params):
        with pytest.raises(StructureError):
            commutator_residual(gram_M(params), BlockMatrix.zeros(3))
        with pytest.raises(StructureError):
            m_symmetry_residual(gram_M(params), np.eye(14))


class TestKernel:
    """k(x, y) = sum_w Q_w(x)^T Q_w(y)"""

    def test_level_zero_is_constant(self):
        """N = 0: k = Id / h_0"""
        k = kernel_k(ModelParams(0.0, 0.0, 0, 0.3), np.array([-0.5, 0.2]), 0.7)
        np.testing.assert_allclose(k, np.broadcast_to(0.5 * ID, (2, 2, 2)), atol=1e-15)

    def test_transpose_symmetry(self, params):
        xs = np.linspace(-0.8, 0.8, 7)
        ys = np.linspace(0.85, -0.6, 7)
        np.testing.assert_allclose(
            kernel_k(params, xs, ys), np.swapaxes(kernel_k(params, ys, xs), -1, -2), atol=1e-13
        )

    def test_chebyshev_closed_form(self):
        """sum_n 4^n / pi P~_n(x)^T P~_n(y)"""
        model = ModelParams(0.5, -0.5, 5, 0.2)
        x, y = 0.31, -0.47
        expected = sum(
            4.0 ** n / math.pi * monic_chebyshev(n).eval(x).T @ monic_chebyshev(n).eval(y)
            for n in range(6)
        )
        np.testing.assert_allclose(kernel_k(model, x, y), expected, rtol=1e-12, atol=1e-13)

    def test_sample_pairs(self):
        pairs = kernel_sample_pairs(count=10, seed=3)
        assert pairs.shape == (10, 2)
        np.testing.assert_array_equal(pairs, kernel_sample_pairs(count=10, seed=3))
        assert np.all(np.abs(pairs) <= 0.9)


class TestIntegralOperator:
    """S acts on left coefficients as A -> A M"""

    def test_unit_coefficients_pick_rows(self, params):
        M = gram_M(params)
        A = np.zeros((7, 2, 2))
        A[3] = ID
        np.testing.assert_allclose(apply_S_coeffs(M, A), M.blocks[3], atol=1e-15)

    def test_row_vector_coefficients(self, params):
        M = gram_M(params)
        A = np.zeros((7, 1, 2))
        A[0, 0] = [0.0, 1.0]
        result = apply_S_coeffs(M, A)
        assert result.shape == (7, 1, 2)
        np.testing.assert_allclose(result[:, 0, :], M.blocks[0, :, 1, :], atol=1e-15)

    def test_rejects_wrong_shape(self, params):
        M = gram_M(params)
        with pytest.raises(StructureError):
            apply_S_coeffs(M, np.zeros((6, 2, 2)))
        with pytest.raises(StructureError):
            apply_S_coeffs(M, np.zeros((7, 2)))


class TestIntertwining:
    """D~ applied to the kernel in x matches D~ applied in y"""

    def test_level_zero(self):
        samples = kernel_sample_pairs()
        residual = kernel_intertwining_residual(ModelParams(0.2, 0.7, 0, 0.1), samples)
        assert residual < CHECK_THRESHOLDS["kernel_intertwining"]

    @pytest.mark.parametrize("instance", [ModelParams(0.0, 0.0, 6, 0.3), *INSTANCES[:3], INSTANCES[4]])
    def test_holds(self, instance):
        residual = kernel_intertwining_residual(instance, kernel_sample_pairs())
        assert residual < CHECK_THRESHOLDS["kernel_intertwining"]

    def test_detects_omega_mismatch(self):
        """Shifting Omega on one side breaks the identity"""
        instance = ModelParams(0.0, 0.0, 6, 0.3)
        residual = kernel_intertwining_residual(instance, kernel_sample_pairs(), omega_shift=1e-3)
        assert residual > 1e-5

    def test_rejects_boundary_samples(self, params):
        with pytest.raises(DomainError):
            kernel_intertwining_residual(params, np.array([[0.1, 1.0]]))
