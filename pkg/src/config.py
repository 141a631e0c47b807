"""
Configuration file for the matrix Jacobi time-and-band limiting toolkit
Contains numerical defaults, check thresholds and output file names
"""

import os
from pathlib import Path

# Project root directory
PROJECT_ROOT = Path(__file__).parent.parent

# Output directory for reports and CSV/JSON artifacts
OUTPUT_DIR = Path(os.getenv("TIMEBAND_OUTPUT_DIR", str(PROJECT_ROOT / "output")))

# Numerical defaults
DEFAULT_TOL = float(os.getenv("TIMEBAND_TOL", "1e-10"))
DEFAULT_SEED = int(os.getenv("TIMEBAND_SEED", "20240611"))
DEFAULT_GRID_POINTS = 201
DEFAULT_TOP_K = 4
DEFAULT_FORMAT = "json"
OUTPUT_FORMATS = ("csv", "json")

# Quadrature order: max(MIN_QUAD_ORDER, 2N + QUAD_ORDER_PAD)
MIN_QUAD_ORDER = 64
QUAD_ORDER_PAD = 16

# Sample set for pointwise identity checks (Chebyshev roots on (-edge, edge))
SAMPLE_COUNT = 33
SAMPLE_EDGE = 0.99
RANDOM_SAMPLE_COUNT = 16
KERNEL_SAMPLE_PAIRS = 25

# Eigencomputation
DEGENERACY_RTOL = 1e-9
# Gaps of M below GAP_RESOLUTION_ULPS * eps * max(1, |lambda|) are roundoff
GAP_RESOLUTION_ULPS = 64
EIGEN_RESIDUAL_TOL = 1e-8
T_COMMUTE_TOL = 1e-11

# Eigenfunction sampling stays EIGENFUNCTION_EDGE away from -1 and Omega
EIGENFUNCTION_EDGE = 1e-6
INTEGRAL_CHECK_POINTS = 9

# Kernel tabulation default ranges
KERNEL_RANGE = (-0.9, 0.9)

# Thresholds used by the verification suite (scaled residuals)
CHECK_THRESHOLDS = {
    "orthonormality": 1e-12,
    "recurrence": 1e-11,
    "difform": 1e-11,
    "orthonormal_difform": 1e-11,
    "christoffel_darboux": 1e-11,
    "d_eigenfunction": 1e-11,
    "secord_factorization": 1e-10,
    "proof_constant": 1e-12,
    "t_commutation": 1e-12,
    "first_order_ode": 1e-11,
    "gram_symmetry": 1e-13,
    "gram_convergence": 1e-11,
    "ltilde_oracle": 1e-11,
    "ltilde_symmetry": 1e-11,
    "m_symmetry": 1e-11,
    "commutator": 1e-10,
    "commutator_t_variant": 1e-11,
    "commutator_t_block": 1e-12,
    "dtilde_decomposition": 1e-11,
    "kernel_intertwining": 1e-10,
    "chebyshev_weight": 1e-13,
    "chebyshev_norm": 1e-12,
    "chebyshev_dtilde": 1e-13,
    "chebyshev_monic": 1e-12,
    "ltilde_truncation": 1e-11,
    "sector_consistency": 1e-9,
    "weight_spd": 0.0,
}

# Gap report of alpha = beta = 0, N = 20, Omega = 0.2, recorded from a
# verified run. M is unresolved in both sectors there; gap_Ltilde is
# identical in the two sectors since alpha = beta.
STABILITY_BASELINE = {
    "alpha": 0.0,
    "beta": 0.0,
    "N": 20,
    "Omega": 0.2,
    "gap_Ltilde": 20.88,
    "gap_Ltilde_rtol": 1e-2,
    "min_ratio": 1e14,
}

# Parameter grid for the full commutation sweep
GRID_EXPONENTS = (-0.5, 0.0, 0.5, 1.7)
GRID_OMEGAS = (-0.6, 0.0, 0.3, 0.9)
GRID_LEVELS = (1, 4, 9)

# File names
VERIFY_REPORT_FILE = "verify_report.json"
SPECTRUM_FILE_STEM = "spectrum"
EIGENFUNCTIONS_FILE_STEM = "eigenfunctions"
KERNEL_FILE_STEM = "kernel"
