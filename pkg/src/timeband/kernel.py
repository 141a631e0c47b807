"""
The kernel k(x, y) = sum_{w<=N} Q_w(x)^T Q_w(y) and the integral operator S

(f S)(y) = int_{-1}^{Omega} f(x) W(x) k(x, y) dx. For f = sum_m A_m Q_m this is
sum_w (sum_m A_m M_{mw}) Q_w, so S acts on left coefficients as A -> A M.
"""

import numpy as np

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from config import DEFAULT_SEED, KERNEL_RANGE, KERNEL_SAMPLE_PAIRS
from errors import DomainError, StructureError
from gram.block import BlockMatrix
from matrix_jacobi.model import ModelParams, scaled_residual
from matrix_jacobi.polynomials import matrix_table
from timeband.operators import dtilde_table


def kernel_k(params: ModelParams, x, y) -> np.ndarray:
    """
    k(x, y) at broadcast-compatible points

    Returns:
        Array of shape broadcast(x, y) + (2, 2)
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    at_x = matrix_table(params, params.N, x, orthonormal=True)
    at_y = matrix_table(params, params.N, y, orthonormal=True)
    return np.einsum("n...ji,n...jk->...ik", at_x, at_y)


def apply_S_coeffs(M: BlockMatrix, A) -> np.ndarray:
    """
    Coefficients of f S given those of f

    Args:
        M: Gram matrix of order K
        A: Left coefficients of shape (K, r, 2)

    Returns:
        A M with the same shape as A
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 3 or A.shape[0] != M.order or A.shape[2] != 2:
        raise StructureError(
            f"coefficients of shape {A.shape} do not match a Gram matrix of order {M.order}"
        )
    return np.einsum("mij,mwjk->wik", A, M.blocks)


def kernel_sample_pairs(count: int = KERNEL_SAMPLE_PAIRS, seed: int = DEFAULT_SEED,
                        bounds=KERNEL_RANGE) -> np.ndarray:
    """Seeded (x, y) pairs uniform in bounds^2, shape (count, 2)"""
    rng = np.random.default_rng(seed)
    return rng.uniform(bounds[0], bounds[1], size=(count, 2))


def kernel_intertwining_residual(params: ModelParams, samples,
                                 omega_shift: float = 0.0) -> float:
    """
    Compare D~ applied to k(x, y)^T in x with the transpose of D~ applied to k(x, y) in y

        sum_w Q_w(y)^T (Q_w D~)(x)  vs  sum_w ((Q_w D~)(y))^T Q_w(x)

    Both sides are differentiated termwise. omega_shift perturbs Omega on the
    x side only and exists to show the comparison is sensitive.
    """
    samples = np.asarray(samples, dtype=float).reshape(-1, 2)
    if np.any(np.abs(samples) >= 1.0):
        raise DomainError("kernel samples violate (x, y) in (-1, 1)^2")
    x, y = samples[:, 0], samples[:, 1]
    x_params = params.with_omega(params.Omega + omega_shift) if omega_shift else params

    q_x = matrix_table(params, params.N, x, orthonormal=True)
    q_y = matrix_table(params, params.N, y, orthonormal=True)
    d_x = dtilde_table(x_params, params.N, x)
    d_y = dtilde_table(params, params.N, y)

    in_x = np.einsum("nsji,nsjk->sik", q_y, d_x)
    in_y = np.einsum("nsji,nsjk->sik", d_y, q_x)
    return scaled_residual(in_x - in_y, in_x, in_y)
