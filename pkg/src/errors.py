"""
Exception types shared by every layer

Built-in bases are kept so callers can still catch ValueError/RuntimeError.
"""


class TimebandError(Exception):
    """Base class for all toolkit errors"""


class ParameterError(TimebandError, ValueError):
    """Invalid problem parameters (alpha, beta, N, Omega, tolerances, formats)"""


class DomainError(TimebandError, ValueError):
    """Evaluation point outside the open interval (-1, 1)"""


class StructureError(TimebandError, ValueError):
    """Dimension mismatch or a block that does not commute with T"""


class NumericalFailure(TimebandError, RuntimeError):
    """An eigensolver or quadrature routine did not converge"""
