"""
Matrix orthogonal polynomials for the 2x2 Jacobi type weight

P_n = (1/2) [[p_ab + p_ba, -p_ab + p_ba], [-p_ab + p_ba, p_ab + p_ba]]
    = p_n^{(alpha,beta)} MINUS + p_n^{(beta,alpha)} PLUS

so every P_n commutes with T. Q_n = h_n^{-1/2} P_n is the orthonormal family.
Polynomials are exposed through evaluation handles (value and two
derivatives), never through monomial coefficients.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from errors import ParameterError
from matrix_jacobi.model import ID, MINUS, PLUS, T, ModelParams
from orthopoly.jacobi import (
    chebyshev_U_deriv,
    jacobi_deriv_table,
    leading_coefficient,
    scalar_jacobi_norm,
)


@dataclass(frozen=True)
class PolyHandle:
    """
    A matrix-valued polynomial of known degree

    evaluator(x, order) returns the order-th derivative (order 0, 1 or 2) at
    x with shape shape(x) + (2, 2). For row-vector valued combinations the
    trailing shape is (1, 2).
    """

    degree: int
    evaluator: Callable[[np.ndarray, int], np.ndarray]
    label: str = ""

    def eval(self, x) -> np.ndarray:
        return self.evaluator(np.asarray(x, dtype=float), 0)

    def deriv1(self, x) -> np.ndarray:
        return self.evaluator(np.asarray(x, dtype=float), 1)

    def deriv2(self, x) -> np.ndarray:
        return self.evaluator(np.asarray(x, dtype=float), 2)


@dataclass(frozen=True)
class StructConstants:
    """
    Structural constants of P_n

    A, B, C are the recurrence matrices in x P_n = A P_{n+1} + B P_n + C P_{n-1};
    gamma_prev / gamma_tilde_prev are the coefficients of P_{n-1} / Q_{n-1} in
    the differentiation formulas of P_n / Q_n; t_coef is n(alpha-beta)/(alpha+beta+2n),
    the coefficient of -T P_n in the same formula.
    """

    n: int
    h: float
    kappa: float
    a: float
    b: float
    c: float
    a_tilde: float
    c_tilde: float
    gamma_prev: float
    gamma_tilde_prev: float
    t_coef: float
    Lambda: float

    @property
    def A(self) -> np.ndarray:
        return self.a * ID

    @property
    def B(self) -> np.ndarray:
        return self.b * T

    @property
    def C(self) -> np.ndarray:
        return self.c * ID


def norm_h(params: ModelParams, n: int) -> float:
    """h_n; identical for w_{alpha,beta} and w_{beta,alpha}"""
    return scalar_jacobi_norm(params.jacobi, n)


def struct_constants(params: ModelParams, n: int) -> StructConstants:
    """All structural constants of index n, by direct formula"""
    if n < 0:
        raise ParameterError(f"n={n} violates n >= 0")
    alpha, beta = params.alpha, params.beta
    s = alpha + beta
    h = norm_h(params, n)
    h_next = norm_h(params, n + 1)

    if n == 0:
        # Closed forms of the n -> 0 limits (avoid 0/0 when alpha+beta in {-1, 0})
        a = 2.0 / (s + 2.0)
        b = (alpha - beta) / (s + 2.0)
        c = 0.0
        c_tilde = 0.0
        gamma_prev = 0.0
        gamma_tilde_prev = 0.0
        t_coef = 0.0
    else:
        h_prev = norm_h(params, n - 1)
        a = 2.0 * (n + 1) * (n + s + 1.0) / ((2 * n + s + 1.0) * (2 * n + s + 2.0))
        b = (alpha * alpha - beta * beta) / ((2 * n + s) * (2 * n + s + 2.0))
        c = 2.0 * (n + alpha) * (n + beta) / ((2 * n + s) * (2 * n + s + 1.0))
        c_tilde = c * math.sqrt(h_prev / h)
        gamma_prev = 2.0 * (n + alpha) * (n + beta) / (s + 2 * n)
        gamma_tilde_prev = gamma_prev * math.sqrt(h_prev / h)
        t_coef = n * (alpha - beta) / (s + 2 * n)

    return StructConstants(
        n=n,
        h=h,
        kappa=leading_coefficient(params.jacobi, n),
        a=a,
        b=b,
        c=c,
        a_tilde=a * math.sqrt(h_next / h),
        c_tilde=c_tilde,
        gamma_prev=gamma_prev,
        gamma_tilde_prev=gamma_tilde_prev,
        t_coef=t_coef,
        Lambda=-n * (n + s + 1.0),
    )


def matrix_table(params: ModelParams, nmax: int, x, order: int = 0,
                 orthonormal: bool = False) -> np.ndarray:
    """
    Order-th derivatives of P_0..P_nmax (or Q_0..Q_nmax) at x

    Returns:
        Array of shape (nmax+1,) + shape(x) + (2, 2)
    """
    x = np.asarray(x, dtype=float)
    minus_part = jacobi_deriv_table(params.jacobi, nmax, x, order)
    plus_part = jacobi_deriv_table(params.jacobi_swapped, nmax, x, order)
    if orthonormal:
        scale = np.array([norm_h(params, n) ** -0.5 for n in range(nmax + 1)])
        scale = scale.reshape((nmax + 1,) + (1,) * x.ndim)
        minus_part = minus_part * scale
        plus_part = plus_part * scale
    return minus_part[..., None, None] * MINUS + plus_part[..., None, None] * PLUS


def P_n(params: ModelParams, n: int) -> PolyHandle:
    """Handle for P_n; leading coefficient kappa_n Id"""
    if n < 0:
        raise ParameterError(f"n={n} violates n >= 0")

    def evaluator(x, order):
        return matrix_table(params, n, x, order)[n]

    return PolyHandle(n, evaluator, f"P_{n}")


def Q_n(params: ModelParams, n: int) -> PolyHandle:
    """Handle for the orthonormal Q_n = h_n^{-1/2} P_n"""
    if n < 0:
        raise ParameterError(f"n={n} violates n >= 0")
    factor = norm_h(params, n) ** -0.5

    def evaluator(x, order):
        return factor * matrix_table(params, n, x, order)[n]

    return PolyHandle(n, evaluator, f"Q_{n}")


def poly_combination(params: ModelParams, coeffs) -> PolyHandle:
    """
    f = sum_n coeffs[n] Q_n with left coefficients

    Args:
        coeffs: Array of shape (K, r, 2): K blocks of r x 2 left coefficients
            (r = 2 for matrix-valued, r = 1 for row-vector valued functions)
    """
    coeffs = np.asarray(coeffs, dtype=float)
    degree = coeffs.shape[0] - 1

    def evaluator(x, order):
        table = matrix_table(params, degree, x, order, orthonormal=True)
        # sum_n coeffs[n] @ Q_n(x), broadcast over the point axes
        return np.einsum("nij,n...jk->...ik", coeffs, table)

    return PolyHandle(degree, evaluator, "combination")


def monic_chebyshev(n: int) -> PolyHandle:
    """
    Monic family for alpha=1/2, beta=-1/2

    P~_n = 2^{-n} [[U_n, -U_{n-1}], [-U_{n-1}, U_n]] = 2^{-n} (U_n Id - U_{n-1} T)
    """
    if n < 0:
        raise ParameterError(f"n={n} violates n >= 0")
    factor = 2.0 ** -n

    def evaluator(x, order):
        u_n = np.asarray(chebyshev_U_deriv(n, x, order))
        u_prev = np.asarray(chebyshev_U_deriv(n - 1, x, order))
        return factor * (u_n[..., None, None] * ID - u_prev[..., None, None] * T)

    return PolyHandle(n, evaluator, f"P~_{n}")
