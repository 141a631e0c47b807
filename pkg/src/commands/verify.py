"""
Verification suite

Runs the structural identities of the polynomial family, the Gram matrix
checks and the commutation checks for one instance (optionally for the whole
parameter grid), and writes a JSON report listing every check with its scaled
residual, threshold and pass/fail flag.
"""

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

import sys
sys.path.append(str(Path(__file__).parent.parent))
from config import (
    CHECK_THRESHOLDS,
    GRID_EXPONENTS,
    GRID_LEVELS,
    GRID_OMEGAS,
    SAMPLE_COUNT,
    VERIFY_REPORT_FILE,
)
from commands.artifacts import save_json
from commands.run_config import RunConfig
from gram.inner_product import convergence_check, gram_M, inner_product_Omega
from matrix_jacobi.identities import (
    cd_residual,
    check_first_order_ode,
    check_points,
    d_eigen_residual,
    difform_residual,
    orthonormal_difform_residual,
    proof_constant_residual,
    recurrence_residual,
    sample_points,
    secord_residual,
    t_commutation_residual,
    weight_spd_failures,
)
from matrix_jacobi.model import ID, T, ModelParams, scaled_residual
from matrix_jacobi.polynomials import P_n, Q_n, monic_chebyshev, struct_constants
from matrix_jacobi.weight import weight_W
from spectral.prolate import scalar_sector_gram
from spectral.sectors import sector_decompose
from timeband.kernel import kernel_intertwining_residual, kernel_sample_pairs
from timeband.operators import (
    build_Ltilde,
    build_Ltilde_T_variant,
    commutator_residual,
    dtilde_coeffs,
    dtilde_decomposition_residual,
    ltilde_oracle_deviation,
    m_symmetry_residual,
    symmetry_residual,
    t_block,
    truncation_coupling,
)

# Highest degree of the Chebyshev golden checks
CHEBYSHEV_DEGREE = 10
# Highest kernel level checked in the grid sweep
GRID_KERNEL_MAX_N = 8


@dataclass
class CheckResult:
    name: str
    residual: float
    threshold: float
    instance: str = ""

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.threshold)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "threshold": self.threshold,
            "passed": self.passed,
            "instance": self.instance,
        }


def is_chebyshev_case(params: ModelParams) -> bool:
    return params.alpha == 0.5 and params.beta == -0.5


def has_first_order_ode(params: ModelParams) -> bool:
    return params.beta == params.alpha - 1.0 and params.alpha > 0


class VerificationSuite:
    """Runs every check for one configuration"""

    def __init__(self, config: RunConfig, verbose: bool = True):
        """
        Initialize the suite

        Args:
            config: Run configuration (validated into ModelParams here)
            verbose: Print one line per check
        """
        self.config = config
        self.params = config.to_params()
        self.verbose = verbose
        self.points = check_points(config.seed)
        self.results: List[CheckResult] = []

    @property
    def levels(self) -> range:
        """Degrees covered by the identity checks"""
        return range(0, max(self.params.N, 1) + 1)

    def record(self, name: str, residual: float, instance: str = "",
               threshold: Optional[float] = None) -> CheckResult:
        if threshold is None:
            threshold = CHECK_THRESHOLDS[name]
        result = CheckResult(name, float(residual), threshold, instance)
        self.results.append(result)
        if self.verbose:
            mark = "✓" if result.passed else "✗"
            suffix = f" [{instance}]" if instance else ""
            print(f"  {mark} {name}: {result.residual:.3e} (threshold {result.threshold:.0e}){suffix}")
        return result

    def check_polynomial_identities(self):
        """Orthonormality, recurrence, differentiation formulas, CD, D eigen-relation"""
        params, xs = self.params, self.points
        top = self.levels[-1]
        span = f"n <= {top}"

        full = gram_M(params.with_omega(1.0)).flat
        self.record("orthonormality", np.max(np.abs(full - np.eye(full.shape[0]))), "Omega = 1")
        self.record("recurrence", max(recurrence_residual(params, n, xs) for n in self.levels), span)
        self.record("difform", max(difform_residual(params, n, xs) for n in self.levels), span)
        self.record(
            "orthonormal_difform",
            max(orthonormal_difform_residual(params, n, xs) for n in self.levels),
            span,
        )

        pairs = list(zip(xs[:8], xs[::-1][:8]))
        cd = max(
            cd_residual(params, n, x, y)
            for n in self.levels if n >= 1
            for x, y in pairs if x != y
        )
        self.record("christoffel_darboux", cd, span)
        self.record("d_eigenfunction", max(d_eigen_residual(params, n, xs) for n in self.levels), span)

        inner = sample_points(SAMPLE_COUNT, 0.9)
        self.record(
            "secord_factorization",
            max(secord_residual(params, n, inner) for n in self.levels),
            span,
        )
        self.record(
            "proof_constant",
            max(proof_constant_residual(params, n) for n in self.levels if n >= 1),
            span,
        )
        self.record("t_commutation", t_commutation_residual(params, top, xs), span)
        self.record("weight_spd", weight_spd_failures(params), "64 sample points")

        if has_first_order_ode(params):
            ode = max(check_first_order_ode(params, n, xs) for n in self.levels)
            self.record("first_order_ode", ode, span)

    def check_chebyshev(self):
        """Closed forms of the alpha = 1/2, beta = -1/2 family"""
        params, xs = self.params, self.points
        x = xs[:, None, None]
        expected = (ID + x * T) / np.sqrt(1.0 - x ** 2)
        W = weight_W(params, xs)
        self.record("chebyshev_weight", scaled_residual(W - expected, expected))

        full = params.with_omega(1.0)
        # degree 2n integrands need CHEBYSHEV_DEGREE + 1 Gauss points
        norm_order = max(params.quad_order, CHEBYSHEV_DEGREE + 1)
        norm_defect = 0.0
        monic_defect = 0.0
        for n in range(CHEBYSHEV_DEGREE + 1):
            monic = monic_chebyshev(n)
            gram = inner_product_Omega(full, monic, monic, norm_order) * 4.0 ** n / np.pi
            norm_defect = max(norm_defect, float(np.max(np.abs(gram - ID))))
            kappa = struct_constants(params, n).kappa
            lhs = P_n(params, n).eval(xs)
            rhs = kappa * monic.eval(xs)
            monic_defect = max(monic_defect, scaled_residual(lhs - rhs, lhs, rhs))
        self.record("chebyshev_norm", norm_defect, f"n <= {CHEBYSHEV_DEGREE}")
        self.record("chebyshev_monic", monic_defect, f"n <= {CHEBYSHEV_DEGREE}")

        omega, level = params.Omega, params.N * (params.N + 2.0)
        coeffs = dtilde_coeffs(params, xs)
        display = [
            (x - omega) * (1.0 - x ** 2) * ID,
            (-3.0 * x ** 2 + 2.0 * omega * x + 1.0) * ID + (x - omega) * T,
            level * x * ID,
        ]
        dtilde = max(
            scaled_residual(got - want, want)
            for got, want in zip((coeffs.E2, coeffs.E1, coeffs.E0), display)
        )
        self.record("chebyshev_dtilde", dtilde)

    def check_operators(self):
        """Gram matrix, L~ and the commutation checks for the configured instance"""
        params = self.params
        M = gram_M(params)
        L = build_Ltilde(params)
        T_blk = t_block(M.order)

        self.record("gram_symmetry", symmetry_residual(M))
        report = convergence_check(params)
        self.record(
            "gram_convergence",
            report.max_difference,
            f"quad_order {report.quad_order} vs {report.doubled_order}",
            threshold=min(CHECK_THRESHOLDS["gram_convergence"], report.tol),
        )
        self.record("ltilde_oracle", ltilde_oracle_deviation(params, L))
        self.record("ltilde_truncation", truncation_coupling(params))
        self.record("ltilde_symmetry", symmetry_residual(L))
        self.record("m_symmetry", m_symmetry_residual(M, L))
        self.record("commutator", commutator_residual(M, L))
        self.record("commutator_t_variant", commutator_residual(M, build_Ltilde_T_variant(params)))
        self.record("commutator_t_block", commutator_residual(M, T_blk))

        pair = sector_decompose(M)
        self.record(
            "sector_consistency",
            max(
                np.max(np.abs(np.linalg.eigvalsh(pair.sector(sign))
                              - np.linalg.eigvalsh(scalar_sector_gram(params, sign))))
                for sign in (1, -1)
            ),
            "spectra of M per sector vs scalar Gram",
        )

        xs = sample_points(SAMPLE_COUNT, 0.9)
        self.record(
            "dtilde_decomposition",
            max(dtilde_decomposition_residual(params, Q_n(params, n), xs) for n in range(params.N + 1)),
        )
        samples = kernel_sample_pairs(seed=self.config.seed)
        self.record(
            "kernel_intertwining",
            kernel_intertwining_residual(params, samples),
            f"{len(samples)} sample pairs",
        )

    def check_grid(self):
        """Commutation, symmetry and intertwining over the full parameter grid"""
        worst = {}
        samples = kernel_sample_pairs(seed=self.config.seed)
        cells = itertools.product(GRID_EXPONENTS, GRID_EXPONENTS, GRID_OMEGAS, GRID_LEVELS)
        count = 0
        for alpha, beta, omega, level in cells:
            params = ModelParams(alpha, beta, level, omega)
            M = gram_M(params)
            L = build_Ltilde(params)
            residuals = {
                "commutator": commutator_residual(M, L),
                "ltilde_symmetry": symmetry_residual(L),
                "m_symmetry": m_symmetry_residual(M, L),
            }
            if level <= GRID_KERNEL_MAX_N:
                residuals["kernel_intertwining"] = kernel_intertwining_residual(params, samples)
            cell = f"alpha={alpha}, beta={beta}, N={level}, Omega={omega}"
            for name, residual in residuals.items():
                if name not in worst or residual > worst[name][0]:
                    worst[name] = (residual, cell)
            count += 1

        for name, (residual, cell) in worst.items():
            self.record(name, residual, f"grid of {count} cells, worst at {cell}")

    def save_report(self, report: dict, output_path: Optional[Path] = None) -> Path:
        if output_path is None:
            output_path = self.config.output_file(Path(VERIFY_REPORT_FILE).stem, "json")
        save_json(report, output_path)
        if self.verbose:
            print(f"\n  Saved verification report to: {output_path}")
        return output_path

    def run(self) -> dict:
        """
        Execute every applicable check and write the report

        Returns:
            Report dictionary (status, passed, params, checks)
        """
        if self.verbose:
            print("=" * 60)
            print("VERIFY: identities, Gram matrix and commutation")
            print("=" * 60)

        self.results = []
        self.check_polynomial_identities()
        if is_chebyshev_case(self.params):
            self.check_chebyshev()
        self.check_operators()
        if self.config.grid:
            self.check_grid()

        passed = all(result.passed for result in self.results)
        report = {
            "status": "ok" if passed else "failed",
            "passed": passed,
            "params": self.config.describe(),
            "checks": [result.to_dict() for result in self.results],
        }
        self.save_report(report)

        if self.verbose:
            failed = sum(not result.passed for result in self.results)
            print(f"\n{len(self.results) - failed}/{len(self.results)} checks passed")
            print("=" * 60)
        return report
