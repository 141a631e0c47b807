"""Scalar layer: classical Jacobi and Chebyshev-U polynomials, Gauss-Jacobi rules"""
