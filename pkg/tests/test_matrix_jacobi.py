"""
Unit Tests for the matrix Jacobi family

Model parameters, the weight matrix W, the polynomials P_n / Q_n and the
structural identities they satisfy.
"""

import pytest
import numpy as np
from scipy.special import eval_jacobi, jacobi
import sys
from pathlib import Path

# Add src to path so we can import the application modules
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from config import CHECK_THRESHOLDS
from errors import DomainError, ParameterError
from matrix_jacobi.identities import (
    apply_D,
    cd_residual,
    check_first_order_ode,
    check_points,
    d_eigen_residual,
    difform_residual,
    orthonormal_difform_residual,
    proof_constant_residual,
    random_points,
    recurrence_residual,
    sample_points,
    secord_residual,
    t_commutation_residual,
    weight_spd_failures,
)
from matrix_jacobi.model import (
    ID,
    MINUS,
    PLUS,
    T,
    ModelParams,
    default_quad_order,
    is_positive_definite,
    scaled_residual,
)
from matrix_jacobi.polynomials import (
    P_n,
    Q_n,
    matrix_table,
    monic_chebyshev,
    norm_h,
    poly_combination,
    struct_constants,
)
from matrix_jacobi.weight import weight_W, weight_W_deriv, weight_W_inverse, weight_p

PARAMETER_SETS = [(0.0, 0.0), (0.5, -0.5), (0.3, 1.2), (1.7, -0.5), (-0.5, -0.5)]
MAX_DEGREE = 12
XS = check_points()


@pytest.fixture
def params():
    return ModelParams(alpha=0.3, beta=1.2, N=6, Omega=0.4)


class TestModelParams:
    """Validation and derived quantities"""

    def test_default_quad_order(self):
        """quad_order defaults to max(64, 2N + 16)"""
        assert ModelParams(0.0, 0.0, 5, 0.2).quad_order == 64
        assert ModelParams(0.0, 0.0, 30, 0.2).quad_order == 76
        assert default_quad_order(40) == 96

    @pytest.mark.parametrize("kwargs,fragment", [
        ({"N": -1}, "N=-1"),
        ({"N": 1.5}, "N=1.5"),
        ({"Omega": 1.5}, "Omega=1.5"),
        ({"Omega": -1.0}, "Omega=-1.0"),
        ({"quad_order": 3}, "quad_order=3"),
        ({"tol": 0.0}, "tol=0.0"),
        ({"alpha": -1.2}, "alpha=-1.2"),
    ])
    def test_rejects_invalid_values(self, kwargs, fragment):
        """Each violated precondition names the offending value"""
        values = {"alpha": 0.0, "beta": 0.0, "N": 4, "Omega": 0.5}
        values.update(kwargs)
        with pytest.raises(ParameterError, match=fragment):
            ModelParams(**values)

    def test_omega_one_is_allowed(self):
        """The band may cover the whole interval"""
        assert ModelParams(0.0, 0.0, 2, 1.0).Omega == 1.0

    def test_A_scalar(self):
        """A = N(N + alpha + beta + 2)"""
        assert ModelParams(0.0, 0.0, 2, 0.0).A == 8.0
        assert ModelParams(0.3, 1.2, 6, 0.4).A == pytest.approx(6 * 9.5)

    def test_with_omega_keeps_other_fields(self, params):
        moved = params.with_omega(1.0)
        assert moved.Omega == 1.0
        assert (moved.alpha, moved.beta, moved.N, moved.quad_order) == (0.3, 1.2, 6, 64)


class TestProjectors:
    """PLUS and MINUS are the spectral projectors of T"""

    def test_projector_algebra(self):
        np.testing.assert_array_equal(PLUS @ PLUS, PLUS)
        np.testing.assert_array_equal(MINUS @ MINUS, MINUS)
        np.testing.assert_array_equal(PLUS @ MINUS, np.zeros((2, 2)))
        np.testing.assert_array_equal(PLUS + MINUS, ID)
        np.testing.assert_array_equal(PLUS - MINUS, T)

    def test_constants_are_read_only(self):
        with pytest.raises(ValueError):
            T[0, 0] = 1.0


class TestWeight:
    """The 2x2 weight matrix"""

    def test_explicit_entries(self, params):
        """W = 1/2 [[w_ab + w_ba, w_ba - w_ab], [w_ba - w_ab, w_ab + w_ba]]"""
        x = 0.3
        w_ab = (1 - x) ** 0.3 * (1 + x) ** 1.2
        w_ba = (1 - x) ** 1.2 * (1 + x) ** 0.3
        expected = 0.5 * np.array([[w_ab + w_ba, w_ba - w_ab], [w_ba - w_ab, w_ab + w_ba]])
        np.testing.assert_allclose(weight_W(params, x), expected, rtol=1e-15)

    @pytest.mark.parametrize("a,b", PARAMETER_SETS)
    def test_symmetric_positive_definite(self, a, b):
        """W(x) is SPD at every interior sample point"""
        model = ModelParams(a, b, 3, 0.5)
        for W in weight_W(model, XS):
            assert is_positive_definite(W)
        assert weight_spd_failures(model) == 0

    def test_commutes_with_T(self, params):
        W = weight_W(params, XS)
        np.testing.assert_allclose(W @ T, T @ W, atol=1e-15)

    def test_domain(self, params):
        """W is only defined on the open interval"""
        with pytest.raises(DomainError):
            weight_W(params, 1.0)
        with pytest.raises(DomainError):
            weight_W(params, np.array([0.0, -1.0]))

    def test_p_vanishes_at_endpoints(self, params):
        """p = (1-x^2) W extends continuously with p(+-1) = 0"""
        np.testing.assert_array_equal(weight_p(params, np.array([-1.0, 1.0])), np.zeros((2, 2, 2)))
        with pytest.raises(DomainError):
            weight_p(params, 1.5)

    def test_derivative_finite_difference(self, params):
        h = 1e-6
        xs = np.linspace(-0.9, 0.9, 13)
        numeric = (weight_W(params, xs + h) - weight_W(params, xs - h)) / (2 * h)
        np.testing.assert_allclose(weight_W_deriv(params, xs), numeric, rtol=1e-7, atol=1e-8)

    @pytest.mark.parametrize("a,b", PARAMETER_SETS)
    def test_log_derivative(self, a, b):
        """(1-x^2) W' W^{-1} = -x(alpha+beta) Id + (alpha-beta) T"""
        model = ModelParams(a, b, 2, 0.0)
        xs = sample_points(33, 0.9)
        lhs = (1 - xs ** 2)[:, None, None] * weight_W_deriv(model, xs) @ weight_W_inverse(model, xs)
        rhs = -xs[:, None, None] * (a + b) * ID + (a - b) * T
        np.testing.assert_allclose(lhs, rhs, atol=1e-13)

    def test_inverse(self, params):
        np.testing.assert_allclose(
            weight_W(params, XS) @ weight_W_inverse(params, XS),
            np.broadcast_to(ID, (len(XS), 2, 2)), atol=1e-13,
        )


class TestPolynomials:
    """P_n, Q_n and the structural constants"""

    @pytest.mark.parametrize("a,b", PARAMETER_SETS)
    def test_components_match_scalar_jacobi(self, a, b):
        """P_n = p_n^{(a,b)} MINUS + p_n^{(b,a)} PLUS"""
        model = ModelParams(a, b, 8, 0.5)
        table = matrix_table(model, 8, XS)
        for n in range(9):
            p_ab = eval_jacobi(n, a, b, XS)
            p_ba = eval_jacobi(n, b, a, XS)
            np.testing.assert_allclose(table[n, :, 0, 0], 0.5 * (p_ab + p_ba), rtol=1e-11, atol=1e-11)
            np.testing.assert_allclose(table[n, :, 0, 1], 0.5 * (p_ba - p_ab), rtol=1e-11, atol=1e-11)

    def test_every_P_n_commutes_with_T(self, params):
        assert t_commutation_residual(params, MAX_DEGREE, XS) < 1e-15

    def test_handles_agree_with_table(self, params):
        table = matrix_table(params, 5, XS, order=1)
        np.testing.assert_allclose(P_n(params, 5).deriv1(XS), table[5], rtol=1e-15)
        assert P_n(params, 5).degree == 5

    def test_Q_n_scaling(self, params):
        """Q_n = h_n^{-1/2} P_n"""
        for n in range(6):
            np.testing.assert_allclose(
                Q_n(params, n).eval(XS), P_n(params, n).eval(XS) / np.sqrt(norm_h(params, n)),
                rtol=1e-14,
            )

    @pytest.mark.parametrize("a,b", PARAMETER_SETS)
    def test_kappa_is_leading_coefficient(self, a, b):
        model = ModelParams(a, b, 8, 0.5)
        for n in range(9):
            assert struct_constants(model, n).kappa == pytest.approx(jacobi(n, a, b).coeffs[0], rel=1e-11)

    def test_recurrence_matrices(self, params):
        """A_n and C_n are scalar, B_n is a multiple of T"""
        k = struct_constants(params, 3)
        np.testing.assert_array_equal(k.A, k.a * ID)
        np.testing.assert_array_equal(k.B, k.b * T)
        np.testing.assert_array_equal(k.C, k.c * ID)

    def test_degree_zero_limits(self):
        """n = 0 constants at alpha + beta = -1 stay finite"""
        k = struct_constants(ModelParams(-0.5, -0.5, 2, 0.0), 0)
        assert k.a == pytest.approx(2.0)
        assert k.c == 0.0 and k.gamma_tilde_prev == 0.0
        assert k.Lambda == 0.0

    def test_negative_degree(self, params):
        with pytest.raises(ParameterError):
            struct_constants(params, -1)
        with pytest.raises(ParameterError):
            Q_n(params, -1)

    def test_poly_combination_single_block(self, params):
        """A unit coefficient on Q_2 reproduces Q_2"""
        coeffs = np.zeros((4, 2, 2))
        coeffs[2] = ID
        combination = poly_combination(params, coeffs)
        assert combination.degree == 3
        np.testing.assert_allclose(combination.eval(XS), Q_n(params, 2).eval(XS), rtol=1e-14)

    def test_poly_combination_row_vector(self, params):
        """(K, 1, 2) coefficients give row-vector values"""
        coeffs = np.zeros((3, 1, 2))
        coeffs[1, 0] = [1.0, 0.0]
        values = poly_combination(params, coeffs).eval(XS)
        assert values.shape == (len(XS), 1, 2)
        np.testing.assert_allclose(values[:, 0, :], Q_n(params, 1).eval(XS)[:, 0, :], rtol=1e-14)


class TestChebyshevFamily:
    """alpha = 1/2, beta = -1/2"""

    def test_first_monic_polynomial(self):
        """P~_1 = x Id - T/2"""
        values = monic_chebyshev(1).eval(XS)
        np.testing.assert_allclose(values, XS[:, None, None] * ID - 0.5 * T, atol=1e-15)

    def test_monic_relation(self):
        """P_n = kappa_n P~_n"""
        model = ModelParams(0.5, -0.5, 10, 0.3)
        for n in range(11):
            kappa = struct_constants(model, n).kappa
            lhs = P_n(model, n).eval(XS)
            rhs = kappa * monic_chebyshev(n).eval(XS)
            assert scaled_residual(lhs - rhs, lhs, rhs) < 1e-12

    def test_weight_closed_form(self):
        """W = (Id + x T) / sqrt(1 - x^2)"""
        model = ModelParams(0.5, -0.5, 2, 0.3)
        expected = (ID + XS[:, None, None] * T) / np.sqrt(1 - XS ** 2)[:, None, None]
        np.testing.assert_allclose(weight_W(model, XS), expected, rtol=1e-13)


class TestStructuralIdentities:
    """Identity residuals stay below the verification thresholds"""

    @pytest.mark.parametrize("a,b", PARAMETER_SETS)
    def test_recurrence_and_differentiation(self, a, b):
        model = ModelParams(a, b, MAX_DEGREE, 0.5)
        for n in range(MAX_DEGREE + 1):
            assert recurrence_residual(model, n, XS) < CHECK_THRESHOLDS["recurrence"]
            assert difform_residual(model, n, XS) < CHECK_THRESHOLDS["difform"]
            assert orthonormal_difform_residual(model, n, XS) < CHECK_THRESHOLDS["orthonormal_difform"]

    @pytest.mark.parametrize("a,b", PARAMETER_SETS)
    def test_D_eigenfunctions(self, a, b):
        """P_n D = Lambda_n P_n, in expanded and factorized form"""
        model = ModelParams(a, b, MAX_DEGREE, 0.5)
        inner = sample_points(33, 0.9)
        for n in range(MAX_DEGREE + 1):
            assert d_eigen_residual(model, n, XS) < CHECK_THRESHOLDS["d_eigenfunction"]
            assert secord_residual(model, n, inner) < CHECK_THRESHOLDS["secord_factorization"]

    @pytest.mark.parametrize("a,b", PARAMETER_SETS)
    def test_proof_constant(self, a, b):
        model = ModelParams(a, b, MAX_DEGREE, 0.5)
        for n in range(1, MAX_DEGREE + 1):
            assert proof_constant_residual(model, n) < CHECK_THRESHOLDS["proof_constant"]

    @pytest.mark.parametrize("a,b", PARAMETER_SETS)
    def test_christoffel_darboux(self, a, b):
        model = ModelParams(a, b, MAX_DEGREE, 0.5)
        for n in (1, 4, MAX_DEGREE):
            for x, y in [(-0.7, 0.2), (0.1, 0.95), (-0.95, -0.3)]:
                assert cd_residual(model, n, x, y) < CHECK_THRESHOLDS["christoffel_darboux"]

    def test_christoffel_darboux_needs_distinct_points(self, params):
        with pytest.raises(ParameterError):
            cd_residual(params, 2, 0.3, 0.3)
        with pytest.raises(ParameterError):
            cd_residual(params, 0, 0.3, 0.4)

    def test_apply_D_domain(self, params):
        with pytest.raises(DomainError):
            apply_D(params, P_n(params, 2), np.array([0.0, 1.0]))


class TestFirstOrderEquation:
    """beta = alpha - 1 admits a first-order equation"""

    @pytest.mark.parametrize("alpha", [0.5, 2.0])
    def test_holds_up_to_degree_eight(self, alpha):
        model = ModelParams(alpha, alpha - 1.0, 8, 0.5)
        for n in range(9):
            assert check_first_order_ode(model, n, XS) < CHECK_THRESHOLDS["first_order_ode"]

    def test_transposed_multiplier_fails(self):
        """[[-x, -1], [1, x]] does not give an identity"""
        model = ModelParams(0.5, -0.5, 3, 0.5)
        handle = P_n(model, 1)
        x = XS[:, None, None]
        multiplier = np.array([[0.0, -1.0], [1.0, 0.0]]) + x * np.array([[-1.0, 0.0], [0.0, 1.0]])
        lhs = handle.deriv1(XS) @ multiplier + handle.eval(XS) @ np.diag([-1.0, 0.0])
        rhs = np.diag([-2.0, 1.0]) @ handle.eval(XS)
        assert scaled_residual(lhs - rhs, lhs, rhs) > 0.1

    def test_requires_shifted_exponents(self, params):
        with pytest.raises(ParameterError, match="beta = alpha - 1"):
            check_first_order_ode(params, 2, XS)


class TestSamplePoints:
    """Deterministic and seeded point sets"""

    def test_chebyshev_roots(self):
        points = sample_points(33, 0.99)
        assert len(points) == 33
        assert np.all(np.diff(points) > 0)
        assert np.max(np.abs(points)) < 0.99
        assert points[16] == pytest.approx(0.0, abs=1e-15)

    def test_random_points_are_seeded(self):
        np.testing.assert_array_equal(random_points(seed=7), random_points(seed=7))
        assert not np.array_equal(random_points(seed=7), random_points(seed=8))
        assert np.all(np.abs(random_points(seed=7)) < 0.9)

    def test_check_points(self):
        assert len(check_points()) == 33 + 16


class TestReferenceValues:
    """Hand-checkable values of W, p and D"""

    def test_equal_exponents_weight_is_scalar(self):
        model = ModelParams(0.7, 0.7, 2, 0.0)
        np.testing.assert_allclose(weight_W(model, 0.4), (0.6 * 1.4) ** 0.7 * ID, rtol=1e-15)

    def test_weight_at_origin(self, params):
        np.testing.assert_allclose(weight_W(params, 0.0), ID, atol=1e-16)

    def test_chebyshev_p(self):
        """p(0.6) = 0.8 [[1, 0.6], [0.6, 1]]"""
        model = ModelParams(0.5, -0.5, 2, 0.0)
        np.testing.assert_allclose(weight_p(model, 0.6), 0.8 * np.array([[1.0, 0.6], [0.6, 1.0]]), rtol=1e-15)

    def test_legendre_p_at_endpoint(self):
        model = ModelParams(0.0, 0.0, 2, 0.0)
        np.testing.assert_array_equal(weight_p(model, 1.0), np.zeros((2, 2)))
        np.testing.assert_allclose(weight_p(model, 0.0), ID)

    def test_D_annihilates_constants(self, params):
        np.testing.assert_array_equal(apply_D(params, Q_n(params, 0), XS), np.zeros((len(XS), 2, 2)))

    def test_D_on_legendre_P1(self):
        """P_1 is linear, so (P_1 D)(0.4) = -2 P_1(0.4)"""
        model = ModelParams(0.0, 0.0, 2, 0.0)
        handle = P_n(model, 1)
        np.testing.assert_allclose(apply_D(model, handle, 0.4), -2.0 * handle.eval(0.4), atol=1e-15)

    def test_first_order_equation_constant_case(self):
        model = ModelParams(0.5, -0.5, 2, 0.0)
        assert check_first_order_ode(model, 0, XS) == 0.0

    @pytest.mark.parametrize("a,b,n,x,y", [
        (0.3, 1.2, 1, 0.5, -0.1),
        (0.0, 0.0, 6, 0.3, -0.2),
        (0.5, -0.5, 4, 0.9, 0.1),
    ])
    def test_christoffel_darboux_examples(self, a, b, n, x, y):
        model = ModelParams(a, b, n, 0.0)
        assert cd_residual(model, n, x, y) <= CHECK_THRESHOLDS["christoffel_darboux"]
