"""
Gauss-Jacobi quadrature

Rules are generated with the Golub-Welsch method: the nodes are the
eigenvalues of the symmetric tridiagonal Jacobi matrix built from the monic
recurrence coefficients of (1-x)^a (1+x)^b, the weights are the squared first
eigenvector components times the zeroth moment.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from errors import NumericalFailure, ParameterError
from orthopoly.jacobi import JacobiParams, log_scalar_jacobi_norm


@dataclass(frozen=True)
class QuadratureRule:
    """
    Nodes and weights for int_lo^hi f(x) (hi-x)^a (x-lo)^b dx

    endpoint_exponents holds (a, b): a belongs to the hi-side factor and b to
    the lo-side factor.
    """

    nodes: np.ndarray
    weights: np.ndarray
    domain: Tuple[float, float]
    endpoint_exponents: Tuple[float, float]

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ParameterError("nodes and weights must be 1-d arrays of equal length")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return len(self.nodes)

    def integrate(self, values) -> np.ndarray:
        """Apply the rule to values sampled at the nodes (axis 0 is the node axis)"""
        return np.tensordot(self.weights, np.asarray(values, dtype=float), axes=(0, 0))


def jacobi_matrix_coefficients(a: float, b: float, m: int):
    """
    Diagonal and off-diagonal of the m x m Jacobi matrix for (1-x)^a (1+x)^b

    Returns:
        (diagonal, off_diagonal) with lengths m and m-1
    """
    ab = a + b
    k = np.arange(m, dtype=float)
    diagonal = np.empty(m)
    diagonal[0] = (b - a) / (ab + 2.0)
    if m > 1:
        kk = k[1:]
        diagonal[1:] = (b * b - a * a) / ((2.0 * kk + ab) * (2.0 * kk + ab + 2.0))

    off_squared = np.empty(max(m - 1, 0))
    if m > 1:
        # k = 1 is simplified by hand: (k+a+b) and (2k+a+b-1) cancel
        off_squared[0] = 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) ** 2 * (ab + 3.0))
        kk = k[2:]
        c = 2.0 * kk + ab
        off_squared[1:] = (
            4.0 * kk * (kk + a) * (kk + b) * (kk + ab)
            / (c * c * (c + 1.0) * (c - 1.0))
        )
    return diagonal, np.sqrt(off_squared)


@lru_cache(maxsize=256)
def gauss_jacobi_rule(exponents: Tuple[float, float], m: int) -> QuadratureRule:
    """
    m-point Gauss rule on (-1, 1) for the weight (1-x)^a (1+x)^b

    Args:
        exponents: (a, b), both > -1
        m: Number of points, m >= 1

    Returns:
        QuadratureRule exact for polynomials of degree <= 2m-1
    """
    a, b = float(exponents[0]), float(exponents[1])
    if m < 1:
        raise ParameterError(f"m={m} violates m >= 1")
    params = JacobiParams(a, b)
    mu0 = math.exp(log_scalar_jacobi_norm(params, 0))

    diagonal, off_diagonal = jacobi_matrix_coefficients(a, b, m)
    if m == 1:
        return QuadratureRule(diagonal.copy(), np.array([mu0]), (-1.0, 1.0), (a, b))

    try:
        nodes, vectors = eigh_tridiagonal(diagonal, off_diagonal)
    except LinAlgError as e:
        raise NumericalFailure(
            f"Golub-Welsch eigensolver failed for (a, b, m) = ({a}, {b}, {m}): {e}"
        ) from e

    weights = mu0 * vectors[0, :] ** 2
    return QuadratureRule(nodes, weights, (-1.0, 1.0), (a, b))


def map_rule(rule: QuadratureRule, target: Tuple[float, float]) -> QuadratureRule:
    """
    Affine image of a rule on a new interval

    Weights pick up the Jacobian and the half-length powers of the endpoint
    factors, so the mapped rule integrates (hi-x)^a (x-lo)^b-weighted
    polynomials exactly up to the same degree.
    """
    lo, hi = float(target[0]), float(target[1])
    if not lo < hi:
        raise ParameterError(f"target=({lo}, {hi}) violates lo < hi")

    src_lo, src_hi = rule.domain
    a, b = rule.endpoint_exponents
    ratio = (hi - lo) / (src_hi - src_lo)
    nodes = lo + (rule.nodes - src_lo) * ratio
    weights = rule.weights * ratio ** (a + b + 1.0)
    return QuadratureRule(nodes, weights, (lo, hi), (a, b))
