"""
The commuting differential operator D~ and its matrix L~

(f D~)(x) = f''(x) E2(x) + f'(x) E1(x) + f(x) E0(x)

E2(x) = (x - Omega)(1 - x^2) Id
E1(x) = (-(3+alpha+beta) x^2 + Omega(2+alpha+beta) x + 1) Id + (alpha-beta)(x - Omega) T
E0(x) = x N(N+alpha+beta+2) Id

On the span of Q_0..Q_N, Q_m D~ = sum_k L~_{mk} Q_k with L~ block tridiagonal:

    L~_{n,n+1} = mu_n A~_n Id
    L~_{n,n}   = mu_n b_n T - Lambda_n Omega Id - c_n T
    L~_{n+1,n} = (mu_{n+1} C~_{n+1} + gamma~_n) Id

mu_N = 0, so Q_N D~ has no Q_{N+1} component.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from errors import DomainError, StructureError
from gram.block import BlockMatrix
from matrix_jacobi.identities import apply_D
from matrix_jacobi.model import ID, MINUS, PLUS, T, ModelParams, scaled_residual
from matrix_jacobi.polynomials import PolyHandle, matrix_table, struct_constants
from orthopoly.quadrature import gauss_jacobi_rule


@dataclass(frozen=True)
class DtildeCoeffs:
    """Coefficients of D~ at a set of points, each of shape shape(x) + (2, 2)"""

    E2: np.ndarray
    E1: np.ndarray
    E0: np.ndarray


def dtilde_coeffs(params: ModelParams, x) -> DtildeCoeffs:
    x = np.asarray(x, dtype=float)
    a, b, omega = params.alpha, params.beta, params.Omega
    s = a + b
    xx = x[..., None, None]
    e1 = -(3.0 + s) * xx ** 2 + omega * (2.0 + s) * xx + 1.0
    return DtildeCoeffs(
        E2=(xx - omega) * (1.0 - xx ** 2) * ID,
        E1=e1 * ID + (a - b) * (xx - omega) * T,
        E0=xx * params.A * ID,
    )


def t_block(order: int) -> BlockMatrix:
    """T_blk: T on every diagonal block"""
    return BlockMatrix.block_diagonal(T, order)


def mu(params: ModelParams, n: int) -> float:
    """mu_n = N(N+alpha+beta+2) - n(n+alpha+beta+2); mu_N = 0 exactly"""
    # same evaluation order as ModelParams.A
    return params.A - n * (n + params.alpha + params.beta + 2.0)


def c_coeff(params: ModelParams, n: int) -> float:
    """c_n = n(alpha-beta)/(alpha+beta+2n), c_0 = 0"""
    if n == 0:
        return 0.0
    return n * (params.alpha - params.beta) / (params.alpha + params.beta + 2.0 * n)


def _apply(coeffs: DtildeCoeffs, values, firsts, seconds) -> np.ndarray:
    return seconds @ coeffs.E2 + firsts @ coeffs.E1 + values @ coeffs.E0


def apply_Dtilde(params: ModelParams, f: PolyHandle, x) -> np.ndarray:
    """Right action of D~ on f at x in (-1, 1)"""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0) or not np.all(np.isfinite(x)):
        raise DomainError(f"x={x} violates x in (-1, 1)")
    return _apply(dtilde_coeffs(params, x), f.eval(x), f.deriv1(x), f.deriv2(x))


def dtilde_table(params: ModelParams, nmax: int, x) -> np.ndarray:
    """(Q_n D~)(x) for n = 0..nmax, shape (nmax+1,) + shape(x) + (2, 2)"""
    x = np.asarray(x, dtype=float)
    coeffs = dtilde_coeffs(params, x)
    values, firsts, seconds = (
        matrix_table(params, nmax, x, order, orthonormal=True) for order in (0, 1, 2)
    )
    return _apply(coeffs, values, firsts, seconds)


def dtilde_decomposition_residual(params: ModelParams, f: PolyHandle, xs) -> float:
    """D~ = (x - Omega) D + (1 - x^2) d/dx + x A, pointwise"""
    xs = np.asarray(xs, dtype=float)
    xx = xs[..., None, None]
    lhs = apply_Dtilde(params, f, xs)
    terms = [
        (xx - params.Omega) * apply_D(params, f, xs),
        (1.0 - xx ** 2) * f.deriv1(xs),
        xx * params.A * f.eval(xs),
    ]
    return scaled_residual(lhs - sum(terms), lhs, *terms)


def build_Ltilde(params: ModelParams) -> BlockMatrix:
    """L~ from the closed-form block entries"""
    order = params.N + 1
    L = BlockMatrix.zeros(order)
    for n in range(order):
        k = struct_constants(params, n)
        mu_n = mu(params, n)
        L.blocks[n, n] = mu_n * k.b * T - k.Lambda * params.Omega * ID - c_coeff(params, n) * T
        if n < params.N:
            following = struct_constants(params, n + 1)
            L.blocks[n, n + 1] = mu_n * k.a_tilde * ID
            sub = mu(params, n + 1) * following.c_tilde + following.gamma_tilde_prev
            L.blocks[n + 1, n] = sub * ID
    return L


def build_Ltilde_T_variant(params: ModelParams) -> BlockMatrix:
    """L~ T_blk, the matrix of D~ T"""
    L = build_Ltilde(params)
    return L @ t_block(L.order)


def _full_interval_projection(params: ModelParams, nmax_left: int, nmax_right: int) -> np.ndarray:
    # int_{-1}^{1} (Q_m D~) W Q_k^T for m <= nmax_left, k <= nmax_right, exact for these degrees
    points = max(nmax_left, nmax_right) + 2
    a, b = params.alpha, params.beta
    total = 0.0
    for projector, exponents in ((MINUS, (a, b)), (PLUS, (b, a))):
        rule = gauss_jacobi_rule(exponents, points)
        left = dtilde_table(params, nmax_left, rule.nodes)
        right = matrix_table(params, nmax_right, rule.nodes, orthonormal=True)
        total = total + np.einsum(
            "a,maij,jk,nalk->mnil", rule.weights, left, projector, right
        )
    return total


def ltilde_oracle(params: ModelParams) -> BlockMatrix:
    """L~_{mk} = int_{-1}^{1} (Q_m D~)(x) W(x) Q_k(x)^T dx by exact Gauss-Jacobi quadrature"""
    return BlockMatrix(_full_interval_projection(params, params.N, params.N))


def ltilde_oracle_deviation(params: ModelParams, L: Optional[BlockMatrix] = None) -> float:
    """max |L - oracle| / (1 + max |oracle|)"""
    L = build_Ltilde(params) if L is None else L
    oracle = ltilde_oracle(params)
    if L.order != oracle.order:
        raise StructureError(f"L~ has order {L.order}, expected {oracle.order}")
    return scaled_residual(L.blocks - oracle.blocks, oracle.blocks)


def truncation_coupling(params: ModelParams) -> float:
    """Largest entry of the projection of Q_N D~ onto Q_{N+1}"""
    projection = _full_interval_projection(params, params.N, params.N + 1)
    return float(np.max(np.abs(projection[params.N, params.N + 1])))


def _check_pair(M: BlockMatrix, L: BlockMatrix):
    if not isinstance(M, BlockMatrix) or not isinstance(L, BlockMatrix):
        raise StructureError("expected two BlockMatrix operands")
    if M.order != L.order:
        raise StructureError(f"orders differ: M has {M.order}, L has {L.order}")


def commutator_residual(M: BlockMatrix, L: BlockMatrix) -> float:
    """||ML - LM||_F / (1 + ||M||_F ||L||_F) on the flattened views"""
    _check_pair(M, L)
    m, l = M.flat, L.flat
    commutator = np.linalg.norm(m @ l - l @ m)
    return float(commutator / (1.0 + np.linalg.norm(m) * np.linalg.norm(l)))


def symmetry_residual(L: BlockMatrix) -> float:
    """||L - L^T||_F / (1 + ||L||_F)"""
    flat = L.flat
    return float(np.linalg.norm(flat - flat.T) / (1.0 + np.linalg.norm(flat)))


def m_symmetry_residual(M: BlockMatrix, L: BlockMatrix) -> float:
    """||L M - M L^T||_F / (1 + ||M||_F ||L||_F): D~ is symmetric for <.,.>_Omega"""
    _check_pair(M, L)
    m, l = M.flat, L.flat
    difference = np.linalg.norm(l @ m - m @ l.T)
    return float(difference / (1.0 + np.linalg.norm(m) * np.linalg.norm(l)))
