"""
The 2x2 Jacobi type weight matrix

W = (1/2) [[w_ab + w_ba, -w_ab + w_ba], [-w_ab + w_ba, w_ab + w_ba]]
  = w_ab * MINUS + w_ba * PLUS

with w_ab = w_{alpha,beta}, w_ba = w_{beta,alpha} and PLUS/MINUS the
spectral projectors of T.
"""

import numpy as np

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from errors import DomainError
from matrix_jacobi.model import MINUS, PLUS, ModelParams


def scalar_weight(a: float, b: float, x) -> np.ndarray:
    """w_{a,b}(x) = (1-x)^a (1+x)^b"""
    x = np.asarray(x, dtype=float)
    return (1.0 - x) ** a * (1.0 + x) ** b


def _check_open_interval(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0) or not np.all(np.isfinite(x)):
        raise DomainError(f"x={x} violates x in (-1, 1)")
    return x


def _combine(minus_part, plus_part) -> np.ndarray:
    return minus_part[..., None, None] * MINUS + plus_part[..., None, None] * PLUS


def weight_W(params: ModelParams, x) -> np.ndarray:
    """W(x); symmetric positive definite for x in (-1, 1)"""
    x = _check_open_interval(x)
    a, b = params.alpha, params.beta
    return _combine(scalar_weight(a, b, x), scalar_weight(b, a, x))


def weight_W_deriv(params: ModelParams, x) -> np.ndarray:
    """dW/dx, using w_ab' = w_ab (b/(1+x) - a/(1-x))"""
    x = _check_open_interval(x)
    a, b = params.alpha, params.beta
    w_ab = scalar_weight(a, b, x)
    w_ba = scalar_weight(b, a, x)
    d_ab = w_ab * (b / (1.0 + x) - a / (1.0 - x))
    d_ba = w_ba * (a / (1.0 + x) - b / (1.0 - x))
    return _combine(d_ab, d_ba)


def weight_p(params: ModelParams, x) -> np.ndarray:
    """
    p(x) = (1-x^2) W(x)

    Continuous on the closed interval; the endpoint values are the limits,
    which vanish because alpha+1 and beta+1 are positive.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0) or not np.all(np.isfinite(x)):
        raise DomainError(f"x={x} violates x in [-1, 1]")
    a, b = params.alpha, params.beta
    return _combine(scalar_weight(a + 1.0, b + 1.0, x), scalar_weight(b + 1.0, a + 1.0, x))


def weight_W_inverse(params: ModelParams, x) -> np.ndarray:
    """W(x)^{-1} = MINUS / w_ab + PLUS / w_ba"""
    x = _check_open_interval(x)
    a, b = params.alpha, params.beta
    return _combine(1.0 / scalar_weight(a, b, x), 1.0 / scalar_weight(b, a, x))
