"""
Scalar Jacobi polynomials

p_n^{(a,b)} in the classical normalization p_n(1) = (a+1)_n / n!, orthogonal
on [-1, 1] with respect to w_{a,b}(x) = (1-x)^a (1+x)^b.

Values come from the three-term recurrence; derivatives from the parameter
shift d/dx p_n^{(a,b)} = ((n+a+b+1)/2) p_{n-1}^{(a+1,b+1)}. Every function
accepts a scalar or an array of points.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from errors import ParameterError


@dataclass(frozen=True)
class JacobiParams:
    """Exponents of the scalar Jacobi weight w_{alpha,beta}"""

    alpha: float
    beta: float

    def __post_init__(self):
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if not math.isfinite(value) or value <= -1.0:
                raise ParameterError(f"{name}={value} violates {name} > -1")

    def shifted(self, k: int) -> "JacobiParams":
        """Parameters (alpha+k, beta+k) of the k-th derivative family"""
        return JacobiParams(self.alpha + k, self.beta + k)

    def swapped(self) -> "JacobiParams":
        return JacobiParams(self.beta, self.alpha)


def jacobi_table(params: JacobiParams, nmax: int, x) -> np.ndarray:
    """
    Evaluate p_0, ..., p_nmax at x

    Args:
        params: Jacobi exponents
        nmax: Highest degree (a negative value yields an empty table)
        x: Scalar or array of evaluation points

    Returns:
        Array of shape (nmax+1,) + shape(x)
    """
    x = np.asarray(x, dtype=float)
    if nmax < 0:
        return np.zeros((0,) + x.shape)

    a, b = params.alpha, params.beta
    ab = a + b
    table = np.empty((nmax + 1,) + x.shape)
    table[0] = 1.0
    if nmax >= 1:
        table[1] = 0.5 * ((a - b) + (ab + 2.0) * x)

    for k in range(2, nmax + 1):
        c = 2.0 * k + ab
        a1 = 2.0 * k * (k + ab) * (c - 2.0)
        a2 = (c - 1.0) * (a * a - b * b)
        a3 = (c - 2.0) * (c - 1.0) * c
        a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c
        table[k] = ((a2 + a3 * x) * table[k - 1] - a4 * table[k - 2]) / a1

    return table


def _shift_factor(params: JacobiParams, n: int, order: int) -> float:
    # Gamma(n+a+b+1+order) / (2^order Gamma(n+a+b+1)) for order in {1, 2}
    s = n + params.alpha + params.beta
    if order == 1:
        return 0.5 * (s + 1.0)
    return 0.25 * (s + 1.0) * (s + 2.0)


def jacobi_deriv_table(params: JacobiParams, nmax: int, x, order: int) -> np.ndarray:
    """Derivatives of order 0, 1 or 2 of p_0, ..., p_nmax at x"""
    if order == 0:
        return jacobi_table(params, nmax, x)
    if order not in (1, 2):
        raise ParameterError(f"order={order} violates order in {{0, 1, 2}}")

    x = np.asarray(x, dtype=float)
    table = np.zeros((nmax + 1,) + x.shape)
    shifted = jacobi_table(params.shifted(order), nmax - order, x)
    for n in range(order, nmax + 1):
        table[n] = _shift_factor(params, n, order) * shifted[n - order]
    return table


def jacobi_eval(params: JacobiParams, n: int, x):
    """p_n^{(alpha,beta)}(x) computed by the three-term recurrence"""
    if n < 0:
        raise ParameterError(f"n={n} violates n >= 0")
    value = jacobi_table(params, n, x)[n]
    return float(value) if value.ndim == 0 else value


def jacobi_deriv(params: JacobiParams, n: int, x, order: int = 1):
    """First or second derivative of p_n^{(alpha,beta)} at x"""
    if n < 0:
        raise ParameterError(f"n={n} violates n >= 0")
    if order not in (1, 2):
        raise ParameterError(f"order={order} violates order in {{1, 2}}")
    value = jacobi_deriv_table(params, n, x, order)[n]
    return float(value) if value.ndim == 0 else value


def log_scalar_jacobi_norm(params: JacobiParams, n: int) -> float:
    """log h_n; every Gamma argument is positive for alpha, beta > -1"""
    a, b = params.alpha, params.beta
    head = (a + b + 1.0) * math.log(2.0)
    if n == 0:
        # (a+b+1) Gamma(a+b+1) folded into Gamma(a+b+2)
        return head + gammaln(a + 1.0) + gammaln(b + 1.0) - gammaln(a + b + 2.0)
    return (
        head
        + gammaln(n + a + 1.0)
        + gammaln(n + b + 1.0)
        - math.log(2.0 * n + a + b + 1.0)
        - gammaln(n + 1.0)
        - gammaln(n + a + b + 1.0)
    )


def scalar_jacobi_norm(params: JacobiParams, n: int) -> float:
    """
    Squared norm h_n = int p_n^2 w_{alpha,beta}

    h_n = 2^{a+b+1} Gamma(a+n+1) Gamma(b+n+1) / ((a+b+2n+1) n! Gamma(a+b+n+1))
    """
    if n < 0:
        raise ParameterError(f"n={n} violates n >= 0")
    return float(math.exp(log_scalar_jacobi_norm(params, n)))


def leading_coefficient(params: JacobiParams, n: int) -> float:
    """kappa_n = Gamma(a+b+2n+1) / (2^n n! Gamma(a+b+n+1)), with kappa_0 = 1"""
    if n < 0:
        raise ParameterError(f"n={n} violates n >= 0")
    if n == 0:
        return 1.0
    s = params.alpha + params.beta
    log_kappa = (
        gammaln(s + 2.0 * n + 1.0)
        - n * math.log(2.0)
        - gammaln(n + 1.0)
        - gammaln(s + n + 1.0)
    )
    return float(math.exp(log_kappa))


def chebyshev_U(n: int, x):
    """
    Chebyshev polynomial of the second kind U_n(x)

    U_{-1} is taken as 0 so the monic matrix family is defined at n = 0.
    """
    if n < -1:
        raise ParameterError(f"n={n} violates n >= -1")
    x = np.asarray(x, dtype=float)
    previous = np.zeros_like(x)
    current = np.ones_like(x)
    if n == -1:
        current = previous
    for _ in range(n):
        previous, current = current, 2.0 * x * current - previous
    return float(current) if current.ndim == 0 else current


def chebyshev_U_deriv(n: int, x, order: int = 1):
    """Derivative of order 0, 1 or 2 of U_n, by differentiating the recurrence"""
    if n < -1:
        raise ParameterError(f"n={n} violates n >= -1")
    if order not in (0, 1, 2):
        raise ParameterError(f"order={order} violates order in {{0, 1, 2}}")
    x = np.asarray(x, dtype=float)
    # axis 0 holds value, first and second derivative of U_{k-1} / U_k
    previous = np.zeros((3,) + x.shape)
    current = np.zeros((3,) + x.shape)
    current[0] = 1.0
    if n == -1:
        current = previous
    for _ in range(n):
        following = np.empty_like(current)
        following[0] = 2.0 * x * current[0] - previous[0]
        following[1] = 2.0 * current[0] + 2.0 * x * current[1] - previous[1]
        following[2] = 4.0 * current[1] + 2.0 * x * current[2] - previous[2]
        previous, current = current, following
    value = current[order]
    return float(value) if value.ndim == 0 else value
