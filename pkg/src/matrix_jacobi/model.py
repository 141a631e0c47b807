"""
Problem instance and 2x2 matrix helpers

Matrix2 values are plain numpy arrays of shape (2, 2); stacks of them have
shape (..., 2, 2) and are multiplied with the @ operator.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from config import DEFAULT_TOL, MIN_QUAD_ORDER, QUAD_ORDER_PAD
from errors import ParameterError
from orthopoly.jacobi import JacobiParams

Matrix2 = np.ndarray

ID = np.eye(2)
ID.setflags(write=False)

# Permutation matrix; the whole model commutes with it
T = np.array([[0.0, 1.0], [1.0, 0.0]])
T.setflags(write=False)

# Spectral projectors of T: T = PLUS - MINUS
PLUS = 0.5 * (ID + T)
MINUS = 0.5 * (ID - T)


def default_quad_order(N: int) -> int:
    return max(MIN_QUAD_ORDER, 2 * N + QUAD_ORDER_PAD)


@dataclass(frozen=True)
class ModelParams:
    """
    One time-and-band limiting instance

    Attributes:
        alpha, beta: Jacobi exponents, both > -1
        N: Time-limit level (highest polynomial degree kept)
        Omega: Band edge; the band is (-1, Omega), Omega in (-1, 1]
        quad_order: Points per Gauss-Jacobi rule (defaults to max(64, 2N+16))
        tol: Pass/fail tolerance for report-style checks
    """

    alpha: float
    beta: float
    N: int
    Omega: float
    quad_order: Optional[int] = None
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        # Re-validates alpha and beta
        JacobiParams(self.alpha, self.beta)
        if int(self.N) != self.N or self.N < 0:
            raise ParameterError(f"N={self.N} violates N >= 0 (integer)")
        object.__setattr__(self, "N", int(self.N))
        if not math.isfinite(self.Omega) or not -1.0 < self.Omega <= 1.0:
            raise ParameterError(f"Omega={self.Omega} violates Omega in (-1, 1]")
        if self.quad_order is None:
            object.__setattr__(self, "quad_order", default_quad_order(self.N))
        if int(self.quad_order) != self.quad_order or self.quad_order < self.N + 1:
            raise ParameterError(
                f"quad_order={self.quad_order} violates quad_order >= N + 1 = {self.N + 1}"
            )
        object.__setattr__(self, "quad_order", int(self.quad_order))
        if not self.tol > 0:
            raise ParameterError(f"tol={self.tol} violates tol > 0")

    @property
    def jacobi(self) -> JacobiParams:
        """Exponents (alpha, beta) of w_{alpha,beta}"""
        return JacobiParams(self.alpha, self.beta)

    @property
    def jacobi_swapped(self) -> JacobiParams:
        """Exponents (beta, alpha) of w_{beta,alpha}"""
        return JacobiParams(self.beta, self.alpha)

    @property
    def A(self) -> float:
        """Scalar of the zeroth-order coefficient A = N(N+alpha+beta+2) Id"""
        return self.N * (self.N + self.alpha + self.beta + 2.0)

    def with_omega(self, Omega: float) -> "ModelParams":
        return replace(self, Omega=Omega)


def is_symmetric(m: Matrix2, tol: float = 0.0) -> bool:
    m = np.asarray(m, dtype=float)
    return bool(np.max(np.abs(m - np.swapaxes(m, -1, -2))) <= tol)


def is_positive_definite(m: Matrix2) -> bool:
    """Symmetric positive definite test via Cholesky"""
    m = np.asarray(m, dtype=float)
    if not is_symmetric(m, 1e-14 * (1.0 + np.max(np.abs(m)))):
        return False
    try:
        np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        return False
    return True


def t_commutator(m: Matrix2) -> np.ndarray:
    """[m, T] for a matrix or a stack of matrices"""
    return m @ T - T @ m


def residual_scale(*terms) -> float:
    """1 + the largest entry magnitude among the terms of an identity"""
    return 1.0 + max(float(np.max(np.abs(np.asarray(t)))) for t in terms)


def scaled_residual(difference, *terms) -> float:
    return float(np.max(np.abs(np.asarray(difference)))) / residual_scale(*terms)
