"""
The differential operator D and the structural identities of P_n

Every *_residual function returns a scaled residual: the largest entry of
LHS - RHS divided by 1 + the largest entry of any term involved.
"""

import numpy as np

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from config import DEFAULT_SEED, RANDOM_SAMPLE_COUNT, SAMPLE_COUNT, SAMPLE_EDGE
from errors import DomainError, ParameterError
from matrix_jacobi.model import ID, T, ModelParams, scaled_residual, t_commutator
from matrix_jacobi.polynomials import PolyHandle, P_n, matrix_table, struct_constants
from matrix_jacobi.weight import weight_W, weight_W_deriv, weight_W_inverse


def sample_points(count: int = SAMPLE_COUNT, edge: float = SAMPLE_EDGE) -> np.ndarray:
    """Roots of the Chebyshev polynomial T_count scaled to (-edge, edge), ascending"""
    k = np.arange(count)
    return np.sort(edge * np.cos((2 * k + 1) * np.pi / (2 * count)))


def random_points(count: int = RANDOM_SAMPLE_COUNT, seed: int = DEFAULT_SEED,
                  edge: float = 0.9) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.sort(rng.uniform(-edge, edge, size=count))


def check_points(seed: int = DEFAULT_SEED) -> np.ndarray:
    """Default deterministic set plus seeded random points"""
    return np.concatenate([sample_points(), random_points(seed=seed)])


def _interior(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0):
        raise DomainError(f"x={x} violates x in (-1, 1)")
    return x


def d_first_order_coefficient(params: ModelParams, x) -> np.ndarray:
    """-x(alpha+beta+2) Id + (alpha-beta) T"""
    x = np.asarray(x, dtype=float)
    s = params.alpha + params.beta
    return (-x * (s + 2.0))[..., None, None] * ID + (params.alpha - params.beta) * T


def apply_D(params: ModelParams, f: PolyHandle, x) -> np.ndarray:
    """
    Right action of D = d^2/dx^2 (1-x^2) + d/dx (-x(alpha+beta+2) Id + (alpha-beta) T)

    (fD)(x) = f''(x)(1-x^2) + f'(x)(-x(alpha+beta+2) Id + (alpha-beta) T)
    """
    x = _interior(x)
    second = f.deriv2(x) * (1.0 - x ** 2)[..., None, None]
    return second + f.deriv1(x) @ d_first_order_coefficient(params, x)


def d_eigen_residual(params: ModelParams, n: int, xs) -> float:
    """P_n D = Lambda_n P_n"""
    xs = _interior(xs)
    lhs = apply_D(params, P_n(params, n), xs)
    rhs = struct_constants(params, n).Lambda * P_n(params, n).eval(xs)
    return scaled_residual(lhs - rhs, lhs, rhs)


def _tables(params: ModelParams, nmax: int, xs, orthonormal: bool = False):
    return [matrix_table(params, nmax, xs, order, orthonormal) for order in (0, 1, 2)]


def recurrence_residual(params: ModelParams, n: int, xs) -> float:
    """x P_n = A_n P_{n+1} + B_n P_n + C_n P_{n-1}"""
    xs = np.asarray(xs, dtype=float)
    values = matrix_table(params, n + 1, xs)
    k = struct_constants(params, n)
    lhs = xs[..., None, None] * values[n]
    terms = [k.A @ values[n + 1], k.B @ values[n]]
    if n >= 1:
        terms.append(k.C @ values[n - 1])
    rhs = sum(terms)
    return scaled_residual(lhs - rhs, lhs, *terms)


def _difform(params: ModelParams, n: int, xs, orthonormal: bool) -> float:
    xs = np.asarray(xs, dtype=float)
    values, firsts, _ = _tables(params, n, xs, orthonormal)
    k = struct_constants(params, n)
    lhs = (1.0 - xs ** 2)[..., None, None] * firsts[n]
    terms = [-n * xs[..., None, None] * values[n], -k.t_coef * (T @ values[n])]
    if n >= 1:
        coefficient = k.gamma_tilde_prev if orthonormal else k.gamma_prev
        terms.append(coefficient * values[n - 1])
    return scaled_residual(lhs - sum(terms), lhs, *terms)


def difform_residual(params: ModelParams, n: int, xs) -> float:
    """(1-x^2) P_n' = -n x P_n - n(alpha-beta)/(alpha+beta+2n) T P_n + gamma_{n-1} P_{n-1}"""
    return _difform(params, n, xs, orthonormal=False)


def orthonormal_difform_residual(params: ModelParams, n: int, xs) -> float:
    """Same formula for Q_n with gamma~_{n-1} = gamma_{n-1} (h_{n-1}/h_n)^{1/2}"""
    return _difform(params, n, xs, orthonormal=True)


def secord_residual(params: ModelParams, n: int, xs) -> float:
    """
    Factorized form d/dx(P_n'(1-x^2)W) W^{-1} = Lambda_n P_n

    The left side is expanded with the product rule using the analytic W'
    and compared against both apply_D and Lambda_n P_n.
    """
    xs = _interior(xs)
    handle = P_n(params, n)
    W = weight_W(params, xs)
    dW = weight_W_deriv(params, xs)
    one_minus = (1.0 - xs ** 2)[..., None, None]
    inner = -2.0 * xs[..., None, None] * W + one_minus * dW
    derivative = handle.deriv2(xs) @ (one_minus * W) + handle.deriv1(xs) @ inner
    expanded = derivative @ weight_W_inverse(params, xs)
    via_d = apply_D(params, handle, xs)
    eigen = struct_constants(params, n).Lambda * handle.eval(xs)
    return max(
        scaled_residual(expanded - via_d, expanded, via_d),
        scaled_residual(expanded - eigen, expanded, eigen),
    )


def proof_constant_residual(params: ModelParams, n: int) -> float:
    """gamma~_{n-1} kappa_n h_{n-1}^{1/2} / (kappa_{n-1} h_n^{1/2}) = alpha+beta+2n+1"""
    if n < 1:
        raise ParameterError(f"n={n} violates n >= 1")
    k = struct_constants(params, n)
    prev = struct_constants(params, n - 1)
    lhs = k.gamma_tilde_prev * k.kappa * np.sqrt(prev.h) / (prev.kappa * np.sqrt(k.h))
    rhs = params.alpha + params.beta + 2 * n + 1.0
    return scaled_residual(lhs - rhs, lhs, rhs)


def t_commutation_residual(params: ModelParams, nmax: int, xs) -> float:
    """max over n <= nmax of |T P_n - P_n T|"""
    values = matrix_table(params, nmax, xs)
    return scaled_residual(t_commutator(values), values)


def cd_residual(params: ModelParams, n: int, x: float, y: float) -> float:
    """
    Christoffel-Darboux formula

    kappa_{n-1}/(kappa_n h_{n-1}) (P*_{n-1}(y) P_n(x) - P*_n(y) P_{n-1}(x))
        = (x - y) sum_{k<n} P*_k(y) P_k(x) / h_k
    """
    if n < 1:
        raise ParameterError(f"n={n} violates n >= 1")
    if x == y:
        raise ParameterError("x == y; the Christoffel-Darboux formula needs x != y")
    at_x = matrix_table(params, n, x)
    at_y = matrix_table(params, n, y)
    k = struct_constants(params, n)
    prev = struct_constants(params, n - 1)
    factor = prev.kappa / (k.kappa * prev.h)
    lhs = factor * (at_y[n - 1].T @ at_x[n] - at_y[n].T @ at_x[n - 1])
    rhs = (x - y) * sum(
        at_y[j].T @ at_x[j] / struct_constants(params, j).h for j in range(n)
    )
    return scaled_residual(lhs - rhs, lhs, rhs)


def check_first_order_ode(params: ModelParams, n: int, xs) -> float:
    """
    First-order equation for beta = alpha - 1, alpha > 0

    P_n'(x) [[-x, 1], [-1, x]] + P_n(x) diag(-2 alpha, 0) = diag(-2 alpha - n, n) P_n(x)

    Returns the scaled residual over the sample points.
    """
    if params.beta != params.alpha - 1.0 or params.alpha <= 0:
        raise ParameterError(
            f"(alpha, beta)=({params.alpha}, {params.beta}) violates beta = alpha - 1, alpha > 0"
        )
    xs = np.asarray(xs, dtype=float)
    handle = P_n(params, n)
    values = handle.eval(xs)
    firsts = handle.deriv1(xs)
    x = xs[..., None, None]
    multiplier = np.array([[0.0, 1.0], [-1.0, 0.0]]) + x * np.array([[-1.0, 0.0], [0.0, 1.0]])
    potential = np.diag([-2.0 * params.alpha, 0.0])
    eigen = np.diag([-2.0 * params.alpha - n, float(n)])
    lhs = firsts @ multiplier + values @ potential
    rhs = eigen @ values
    return scaled_residual(lhs - rhs, lhs, rhs)


def weight_spd_failures(params: ModelParams, count: int = 64) -> int:
    """Number of sample points where W(x) is not symmetric positive definite"""
    W = weight_W(params, sample_points(count))
    eigenvalues = np.linalg.eigvalsh(W)
    asymmetric = np.max(np.abs(W - np.swapaxes(W, -1, -2)), axis=(-1, -2)) > 0
    return int(np.sum((eigenvalues[..., 0] <= 0) | asymmetric))
