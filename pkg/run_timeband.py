#!/usr/bin/env python3
"""
Time-and-Band Limiting Runner

Builds the 2x2 matrix Jacobi time-and-band limiting problem and:
1. verify: runs the identity, Gram and commutation checks (JSON report)
2. spectrum: writes concentrations and L~ eigenvalues per sector
3. eigenfunctions: samples the most concentrated eigenfunctions
4. kernel: tabulates k(x, y) on a product grid

Usage:
    python run_timeband.py verify --alpha 0 --beta 0 --order-n 8 --omega 0.2
    python run_timeband.py verify --alpha 0.5 --beta -0.5 --order-n 5 --omega 0.7 --grid
    python run_timeband.py spectrum --alpha 0 --beta 0 --order-n 20 --omega 0.2 --format csv
    python run_timeband.py eigenfunctions --alpha 0 --beta 0 --order-n 10 --omega 0.3 --check
    python run_timeband.py kernel --alpha 0.5 --beta -0.5 --order-n 2 --omega 0.5 --grid-points 5

Exit codes: 0 pass, 1 failed check, 2 usage, parameter or input error, 3 numerical failure.
"""

import sys
import argparse
from pathlib import Path

# Load environment variables
from dotenv import load_dotenv
load_dotenv(".env")

# Ensure src is in path
sys.path.append(str(Path(__file__).parent / "src"))

from config import (
    DEFAULT_FORMAT,
    DEFAULT_GRID_POINTS,
    DEFAULT_SEED,
    DEFAULT_TOL,
    DEFAULT_TOP_K,
    KERNEL_RANGE,
    OUTPUT_DIR,
    OUTPUT_FORMATS,
    VERIFY_REPORT_FILE,
)
from errors import DomainError, NumericalFailure, ParameterError, StructureError
from commands.artifacts import save_json
from commands.export import EigenfunctionExport, KernelExport, SpectrumExport
from commands.run_config import RunConfig
from commands.verify import VerificationSuite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

EXPORTS = {
    "spectrum": SpectrumExport,
    "eigenfunctions": EigenfunctionExport,
    "kernel": KernelExport,
}


def build_parser() -> argparse.ArgumentParser:
    """Subcommands share one set of long-form flags"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, required=True, help="Jacobi exponent alpha > -1")
    common.add_argument("--beta", type=float, required=True, help="Jacobi exponent beta > -1")
    common.add_argument("--order-n", type=int, required=True, dest="N",
                        help="Time-limit level N >= 0 (highest degree kept)")
    common.add_argument("--omega", type=float, required=True, help="Band edge Omega in (-1, 1]")
    common.add_argument("--quad-order", type=int, default=None,
                        help="Gauss-Jacobi points per rule (default max(64, 2N+16))")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help=f"Quadrature convergence tolerance (default {DEFAULT_TOL})")
    common.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS,
                        help=f"Sampling points per axis (default {DEFAULT_GRID_POINTS})")
    common.add_argument("--top-k", type=int, default=DEFAULT_TOP_K,
                        help=f"Eigenfunctions to export (default {DEFAULT_TOP_K})")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=DEFAULT_FORMAT,
                        help=f"Artifact format (default {DEFAULT_FORMAT})")
    common.add_argument("--output", type=Path, default=None,
                        help=f"Output file (default under {OUTPUT_DIR})")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="Seed for the random sample points")
    common.add_argument("--check", action="store_true",
                        help="Add integral-equation residuals to eigenfunction exports")
    common.add_argument("--grid", action="store_true",
                        help="Also verify across the full parameter grid")
    common.add_argument("--x-range", type=float, nargs=2, default=KERNEL_RANGE,
                        metavar=("LO", "HI"), help="Kernel x range")
    common.add_argument("--y-range", type=float, nargs=2, default=KERNEL_RANGE,
                        metavar=("LO", "HI"), help="Kernel y range")
    common.add_argument("--quiet", action="store_true", help="Suppress progress output")

    parser = argparse.ArgumentParser(
        description="Matrix Jacobi time-and-band limiting toolkit",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python run_timeband.py verify --alpha 0 --beta 0 --order-n 8 --omega 0.2
  python run_timeband.py spectrum --alpha 0 --beta 0 --order-n 20 --omega 0.2 --format csv
        """
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("verify", parents=[common], help="Run the verification suite")
    subparsers.add_parser("spectrum", parents=[common], help="Export the per-sector spectra")
    subparsers.add_parser("eigenfunctions", parents=[common], help="Export sampled eigenfunctions")
    subparsers.add_parser("kernel", parents=[common], help="Tabulate the kernel k(x, y)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        alpha=args.alpha,
        beta=args.beta,
        N=args.N,
        Omega=args.omega,
        quad_order=args.quad_order,
        tol=args.tol,
        grid_points=args.grid_points,
        output_path=args.output,
        format=args.format,
        top_k=args.top_k,
        seed=args.seed,
        check=args.check,
        grid=args.grid,
        x_range=tuple(args.x_range),
        y_range=tuple(args.y_range),
    )


def write_error_report(args: argparse.Namespace, message: str):
    """verify always leaves a JSON report, even when it cannot run"""
    if args.command != "verify":
        return
    output_path = args.output or (OUTPUT_DIR / VERIFY_REPORT_FILE)
    try:
        save_json({"status": "error", "passed": False, "message": message}, output_path)
    except OSError as e:
        print(f"✗ {e}")


def run_command(args: argparse.Namespace, config: RunConfig) -> int:
    verbose = not args.quiet
    if args.command == "verify":
        report = VerificationSuite(config, verbose=verbose).run()
        return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED

    EXPORTS[args.command](config, verbose=verbose).run()
    return EXIT_OK


def main(argv=None) -> int:
    """Main entry point; returns the exit code"""
    args = build_parser().parse_args(argv)

    try:
        config = config_from_args(args)
        config.to_params()
    except ParameterError as e:
        print(f"✗ Invalid parameters: {e}")
        write_error_report(args, str(e))
        return EXIT_USAGE

    try:
        return run_command(args, config)
    except ParameterError as e:
        print(f"✗ Invalid parameters: {e}")
        write_error_report(args, str(e))
        return EXIT_USAGE
    except (DomainError, StructureError) as e:
        print(f"✗ Invalid input: {e}")
        write_error_report(args, str(e))
        return EXIT_USAGE
    except NumericalFailure as e:
        print(f"✗ Numerical failure: {e}")
        write_error_report(args, str(e))
        return EXIT_NUMERICAL
    except OSError as e:
        # unwritable --output is a usage error
        print(f"✗ Output error: {e}")
        write_error_report(args, str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
