"""
Band-limited inner product and the Gram matrix M

<f, g>_Omega = int_{-1}^{Omega} f(x) W(x) g(x)^T dx

W splits as w_ab MINUS + w_ba PLUS, so the integral is a sum of two scalar
weighted integrals. On (-1, Omega) the endpoint singularity at -1 is absorbed
into a Gauss-Jacobi rule with exponents (0, beta) (resp. (0, alpha)) mapped to
(-1, Omega); the factor (1-x)^alpha (resp. (1-x)^beta) is smooth there and
multiplies the integrand. At Omega = 1 the exact rules for w_ab and w_ba are
used instead.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from gram.block import BlockMatrix
from matrix_jacobi.model import MINUS, PLUS, ModelParams
from matrix_jacobi.polynomials import PolyHandle, matrix_table
from orthopoly.quadrature import gauss_jacobi_rule, map_rule


@dataclass(frozen=True)
class WeightedPart:
    """Nodes and effective weights of one scalar part of W, with its projector"""

    nodes: np.ndarray
    weights: np.ndarray
    projector: np.ndarray


def band_parts(params: ModelParams, quad_order: Optional[int] = None) -> List[WeightedPart]:
    """Quadrature for the MINUS (w_ab) and PLUS (w_ba) parts of W over (-1, Omega)"""
    m = quad_order or params.quad_order
    a, b = params.alpha, params.beta
    parts = []
    for projector, (hi_exp, lo_exp) in ((MINUS, (a, b)), (PLUS, (b, a))):
        if params.Omega == 1.0:
            rule = gauss_jacobi_rule((hi_exp, lo_exp), m)
            weights = np.array(rule.weights)
        else:
            rule = map_rule(gauss_jacobi_rule((0.0, lo_exp), m), (-1.0, params.Omega))
            weights = rule.weights * (1.0 - rule.nodes) ** hi_exp
        parts.append(WeightedPart(np.array(rule.nodes), weights, projector))
    return parts


def inner_product_Omega(params: ModelParams, f: PolyHandle, g: PolyHandle,
                        quad_order: Optional[int] = None) -> np.ndarray:
    """
    <f, g>_Omega for polynomial handles of matrix (2x2) or row (1x2) type

    The default quad_order integrates degree(f) + degree(g) <= 2N exactly.
    """
    total = 0.0
    for part in band_parts(params, quad_order):
        left = f.eval(part.nodes)
        right = g.eval(part.nodes)
        total = total + np.einsum(
            "a,aij,jk,alk->il", part.weights, left, part.projector, right
        )
    return total


def gram_M(params: ModelParams, quad_order: Optional[int] = None) -> BlockMatrix:
    """M_{mn} = <Q_m, Q_n>_Omega for m, n = 0..N"""
    blocks = 0.0
    for part in band_parts(params, quad_order):
        table = matrix_table(params, params.N, part.nodes, orthonormal=True)
        blocks = blocks + np.einsum(
            "a,maij,jk,nalk->mnil", part.weights, table, part.projector, table
        )
    return BlockMatrix(blocks)


@dataclass
class ConvergenceReport:
    quad_order: int
    doubled_order: int
    max_difference: float
    tol: float

    @property
    def converged(self) -> bool:
        return self.max_difference <= self.tol


def convergence_check(params: ModelParams, tol: Optional[float] = None) -> ConvergenceReport:
    """Compare M at quad_order and at 2 * quad_order"""
    doubled = 2 * params.quad_order
    difference = gram_M(params).blocks - gram_M(params, doubled).blocks
    return ConvergenceReport(
        quad_order=params.quad_order,
        doubled_order=doubled,
        max_difference=float(np.max(np.abs(difference))),
        tol=params.tol if tol is None else tol,
    )
