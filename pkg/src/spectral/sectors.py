"""
Splitting T-commuting block matrices into the two eigenspaces of T

U = (1/sqrt 2) [[1, 1], [1, -1]] is symmetric, orthogonal and U T U = diag(1, -1).
Every 2x2 block a Id + b T becomes diag(a + b, a - b) under conjugation by U,
so a block matrix whose blocks commute with T is two scalar matrices: the
plus sector (T = +1, scalar weight w_{beta,alpha}) and the minus sector
(T = -1, scalar weight w_{alpha,beta}).
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from config import T_COMMUTE_TOL
from errors import NumericalFailure, StructureError
from gram.block import BlockMatrix
from matrix_jacobi.model import t_commutator

U = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
U.setflags(write=False)

# Sector label -> index of the diagonal entry after conjugation
SECTOR_INDEX = {1: 0, -1: 1}


@dataclass(frozen=True)
class SectorPair:
    plus: np.ndarray
    minus: np.ndarray

    def sector(self, sign: int) -> np.ndarray:
        return self.plus if sign == 1 else self.minus


def sector_vector(sign: int) -> np.ndarray:
    """Row of U spanning the sign-eigenspace of T"""
    return U[SECTOR_INDEX[sign]]


def sector_decompose(B: BlockMatrix, tol: float = T_COMMUTE_TOL) -> SectorPair:
    """
    Restrictions of B to the +1 and -1 eigenspaces of T

    Raises:
        StructureError: if some block fails to commute with T within
            tol * (1 + max |B|)
    """
    blocks = B.blocks
    defect = float(np.max(np.abs(t_commutator(blocks))))
    if defect > tol * (1.0 + float(np.max(np.abs(blocks)))):
        raise StructureError(f"blocks do not commute with T (max |[B, T]| = {defect:.3e})")
    conjugated = U @ blocks @ U
    return SectorPair(
        plus=np.array(conjugated[..., 0, 0]),
        minus=np.array(conjugated[..., 1, 1]),
    )


def sector_reassemble(pair: SectorPair) -> BlockMatrix:
    """Inverse of sector_decompose"""
    order = pair.plus.shape[0]
    if pair.plus.shape != (order, order) or pair.minus.shape != (order, order):
        raise StructureError(
            f"sector shapes {pair.plus.shape} and {pair.minus.shape} are not equal squares"
        )
    diagonal = np.zeros((order, order, 2, 2))
    diagonal[..., 0, 0] = pair.plus
    diagonal[..., 1, 1] = pair.minus
    return BlockMatrix(U @ diagonal @ U)


def eig_sym_tridiag(A, tol: float = 1e-11):
    """
    Eigen-decomposition of a symmetric tridiagonal matrix

    Returns:
        (eigenvalues ascending, eigenvectors as columns)

    Raises:
        StructureError: if A is not square, symmetric or tridiagonal
        NumericalFailure: if the LAPACK solver does not converge
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise StructureError(f"matrix of shape {A.shape} is not square")
    scale = 1.0 + float(np.max(np.abs(A), initial=0.0))
    if np.max(np.abs(A - A.T), initial=0.0) > tol * scale:
        raise StructureError("matrix is not symmetric")
    if np.max(np.abs(np.triu(A, 2)), initial=0.0) > tol * scale:
        raise StructureError("matrix is not tridiagonal")

    order = A.shape[0]
    diagonal = np.diag(A).copy()
    if order == 1:
        return diagonal, np.ones((1, 1))
    off_diagonal = 0.5 * (np.diag(A, 1) + np.diag(A, -1))
    try:
        return eigh_tridiagonal(diagonal, off_diagonal)
    except LinAlgError as e:
        raise NumericalFailure(
            f"tridiagonal eigensolver failed for order {order} "
            f"(diagonal range [{diagonal.min():.3e}, {diagonal.max():.3e}]): {e}"
        ) from e
