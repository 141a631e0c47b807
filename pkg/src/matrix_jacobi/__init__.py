"""Matrix layer: 2x2 Jacobi weight, matrix orthogonal polynomials and their identities"""
