"""
Eigenfunctions of the time-and-band limiting operator S

M (the matrix of S on the Q basis) has eigenvalues that cluster near 0 and 1,
while L~ (the matrix of D~) has a well separated spectrum. The two commute, so
eigenvectors are computed from the tridiagonal sectors of L~ and the
concentrations are read off M with a Rayleigh quotient.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.linalg import eigh

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from config import DEGENERACY_RTOL, EIGEN_RESIDUAL_TOL, GAP_RESOLUTION_ULPS, INTEGRAL_CHECK_POINTS
from errors import DomainError
from gram.inner_product import band_parts, gram_M
from matrix_jacobi.identities import sample_points
from matrix_jacobi.model import ModelParams, residual_scale
from matrix_jacobi.polynomials import matrix_table
from orthopoly.jacobi import JacobiParams, jacobi_table, scalar_jacobi_norm
from orthopoly.quadrature import gauss_jacobi_rule, map_rule
from spectral.sectors import eig_sym_tridiag, sector_decompose, sector_vector
from timeband.operators import build_Ltilde


@dataclass(frozen=True)
class ProlatePair:
    """
    One shared eigenvector of M and L~

    Attributes:
        chi: Eigenvalue of L~
        lam: Concentration, the matching eigenvalue of M
        coeffs: Left coefficients on Q_0..Q_N, shape (N+1, 1, 2), unit norm
        sector: +1 or -1, the eigenvalue of T on the coefficient rows
        params: Instance the pair belongs to
        residual: ||v M - lam v|| in the sector
        flagged: True when the eigenvector came from a near-degenerate chi cluster
    """

    chi: float
    lam: float
    coeffs: np.ndarray
    sector: int
    params: ModelParams = field(repr=False)
    residual: float = 0.0
    flagged: bool = False

    @property
    def vector(self) -> np.ndarray:
        """Sector coordinates v with coeffs[n] = v[n] * sector_vector(sector)"""
        return self.coeffs[:, 0, :] @ sector_vector(self.sector)


def _clusters(values: np.ndarray, tol: float) -> List[List[int]]:
    # runs of consecutive ascending values closer than tol
    groups = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] < tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _runs(mask: np.ndarray) -> List[List[int]]:
    groups, current = [], []
    for i, hit in enumerate(mask):
        if hit:
            current.append(i)
        elif current:
            groups.append(current)
            current = []
    if current:
        groups.append(current)
    return groups


def _joint_diagonalize(vectors: np.ndarray, group: List[int], m_sector: np.ndarray):
    # rotate an invariant subspace of L~ so that it also diagonalizes M
    basis = vectors[:, group]
    _, rotation = eigh(basis.T @ m_sector @ basis)
    vectors[:, group] = basis @ rotation


def _residuals(vectors: np.ndarray, m_sector: np.ndarray):
    lams = np.einsum("ik,ij,jk->k", vectors, m_sector, vectors)
    residuals = np.linalg.norm(m_sector @ vectors - vectors * lams, axis=0)
    return lams, residuals


def _sector_pairs(params: ModelParams, sign: int, m_sector: np.ndarray,
                  l_sector: np.ndarray, l_scale: float, m_scale: float) -> List[ProlatePair]:
    chis, vectors = eig_sym_tridiag(l_sector)
    flagged = np.zeros(len(chis), dtype=bool)

    for group in _clusters(chis, DEGENERACY_RTOL * max(l_scale, 1.0)):
        if len(group) > 1:
            _joint_diagonalize(vectors, group, m_sector)
            flagged[group] = True

    _, residuals = _residuals(vectors, m_sector)
    offending = residuals > EIGEN_RESIDUAL_TOL * m_scale
    for group in _runs(offending):
        _joint_diagonalize(vectors, group, m_sector)
    flagged |= offending

    lams, residuals = _residuals(vectors, m_sector)
    chis = np.einsum("ik,ij,jk->k", vectors, l_sector, vectors)
    row = sector_vector(sign)
    pairs = []
    for k in range(vectors.shape[1]):
        v = vectors[:, k]
        if v[np.argmax(np.abs(v))] < 0:
            v = -v
        pairs.append(ProlatePair(
            chi=float(chis[k]),
            lam=float(lams[k]),
            coeffs=v[:, None, None] * row[None, None, :],
            sector=sign,
            params=params,
            residual=float(residuals[k]),
            flagged=bool(flagged[k]),
        ))
    return pairs


def prolate_eigenpairs(params: ModelParams) -> List[ProlatePair]:
    """All 2(N+1) shared eigenpairs, sorted by descending concentration"""
    M = gram_M(params)
    L = build_Ltilde(params)
    m_sectors = sector_decompose(M)
    l_sectors = sector_decompose(L)
    m_scale = 1.0 + np.linalg.norm(M.flat, 2)
    l_scale = float(np.linalg.norm(L.flat, 2))

    pairs = []
    for sign in (1, -1):
        pairs.extend(_sector_pairs(
            params, sign, m_sectors.sector(sign), l_sectors.sector(sign), l_scale, m_scale
        ))
    return sorted(pairs, key=lambda pair: -pair.lam)


def eigenfunction_sample(pair: ProlatePair, grid) -> np.ndarray:
    """phi(x) = sum_n coeffs[n] Q_n(x) as rows of shape (len(grid), 2)"""
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if np.any(np.abs(grid) >= 1.0):
        raise DomainError("grid violates x in (-1, 1)")
    table = matrix_table(pair.params, pair.params.N, grid, orthonormal=True)
    return np.einsum("nij,ngjk->gk", pair.coeffs, table)


def integral_equation_defect(pair: ProlatePair, xs) -> np.ndarray:
    """
    Pointwise defect of int_{-1}^{Omega} phi(y) W(y) k(x, y)^T dy = lam phi(x)

    The kernel is expanded, so the left side is sum_w <phi, Q_w>_Omega Q_w(x)
    with the inner products computed by the band quadrature. Each entry is
    max |lhs - rhs| at one x over 1 + max |lhs|, |rhs| on all of xs.
    """
    params = pair.params
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    projections = 0.0
    for part in band_parts(params):
        table = matrix_table(params, params.N, part.nodes, orthonormal=True)
        phi = np.einsum("nij,najk->aik", pair.coeffs, table)
        projections = projections + np.einsum(
            "a,aij,jk,walk->wil", part.weights, phi, part.projector, table
        )
    at_x = matrix_table(params, params.N, xs, orthonormal=True)
    lhs = np.einsum("wij,wxjk->xk", projections, at_x)
    rhs = pair.lam * eigenfunction_sample(pair, xs)
    return np.max(np.abs(lhs - rhs), axis=-1) / residual_scale(lhs, rhs)


def integral_equation_residual(pair: ProlatePair, xs=None) -> float:
    """Largest integral equation defect, by default at INTEGRAL_CHECK_POINTS points"""
    xs = sample_points(INTEGRAL_CHECK_POINTS, 0.9) if xs is None else xs
    return float(np.max(integral_equation_defect(pair, xs)))


@dataclass
class SectorSpectrum:
    """
    Spectra of M and L~ in one sector, paired by shared eigenvector

    Eigenvalues of M near 0 and 1 can be closer than double precision
    resolves. Such a sector is unresolved: gap_M is roundoff and the ratio is
    the lower bound gap_Ltilde / resolution. A sector is degenerate only when
    M is numerically a multiple of the identity there (Omega = 1).
    """

    sector: int
    lambdas: np.ndarray
    chis: np.ndarray
    gap_M: float
    gap_Ltilde: float
    flagged: int

    @property
    def resolution(self) -> float:
        """Smallest gap of M distinguishable from roundoff"""
        return GAP_RESOLUTION_ULPS * float(np.finfo(float).eps) * self._size

    @property
    def _size(self) -> float:
        return max(1.0, float(np.max(np.abs(self.lambdas), initial=0.0)))

    @property
    def degenerate(self) -> bool:
        """M restricted to this sector is a multiple of the identity"""
        if len(self.lambdas) < 2:
            return False
        spread = float(np.max(self.lambdas) - np.min(self.lambdas))
        return spread <= DEGENERACY_RTOL * self._size

    @property
    def unresolved(self) -> bool:
        """Some gap of M is below the resolution of double precision"""
        return not self.degenerate and self.gap_M <= self.resolution

    @property
    def ratio(self) -> float:
        if self.degenerate or math.isinf(self.gap_Ltilde):
            return math.inf
        return self.gap_Ltilde / max(self.gap_M, self.resolution)

    @property
    def chi_monotone(self) -> bool:
        """Diagnostic only: whether chi is monotone along descending lambda"""
        steps = np.diff(self.chis)
        return bool(np.all(steps >= 0) or np.all(steps <= 0))


@dataclass
class SpectrumReport:
    params: ModelParams
    sectors: List[SectorSpectrum]

    @property
    def degenerate(self) -> bool:
        return any(s.degenerate for s in self.sectors)

    @property
    def unresolved(self) -> bool:
        return any(s.unresolved for s in self.sectors)


def _min_gap(values: np.ndarray) -> float:
    if len(values) < 2:
        return math.inf
    return float(np.min(np.diff(np.sort(values))))


def spectrum_report(params: ModelParams, pairs: Optional[List[ProlatePair]] = None) -> SpectrumReport:
    pairs = prolate_eigenpairs(params) if pairs is None else pairs
    sectors = []
    for sign in (1, -1):
        chosen = [p for p in pairs if p.sector == sign]
        lambdas = np.array([p.lam for p in chosen])
        chis = np.array([p.chi for p in chosen])
        sectors.append(SectorSpectrum(
            sector=sign,
            lambdas=lambdas,
            chis=chis,
            gap_M=_min_gap(lambdas),
            gap_Ltilde=_min_gap(chis),
            flagged=sum(p.flagged for p in chosen),
        ))
    return SpectrumReport(params, sectors)


def scalar_sector_gram(params: ModelParams, sector: int) -> np.ndarray:
    """
    Truncated Gram matrix of the scalar Jacobi problem behind one sector

    The plus sector is the (beta, alpha) problem and the minus sector the
    (alpha, beta) problem; built from scalar polynomials only.
    """
    a, b = (params.beta, params.alpha) if sector == 1 else (params.alpha, params.beta)
    m = params.quad_order
    if params.Omega == 1.0:
        rule = gauss_jacobi_rule((a, b), m)
        weights = np.array(rule.weights)
    else:
        rule = map_rule(gauss_jacobi_rule((0.0, b), m), (-1.0, params.Omega))
        weights = rule.weights * (1.0 - rule.nodes) ** a
    family = JacobiParams(a, b)
    norms = np.array([scalar_jacobi_norm(family, n) for n in range(params.N + 1)])
    q = jacobi_table(family, params.N, rule.nodes) / np.sqrt(norms)[:, None]
    return (q * weights) @ q.T
