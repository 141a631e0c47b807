"""
Matrix Jacobi Time-and-Band Limiting Toolkit
2x2 Jacobi type matrix orthogonal polynomials, the time-and-band limiting
operator S and its commuting differential operator D-tilde
"""

__version__ = "1.0.0"
