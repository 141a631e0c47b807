"""
Spectrum, eigenfunction and kernel exports

Each export builds one pandas DataFrame (CSV) or one JSON document and writes
it under OUTPUT_DIR unless the configuration names an output path.
"""

from pathlib import Path
from typing import List

import numpy as np
import pandas as pd

import sys
sys.path.append(str(Path(__file__).parent.parent))
from config import (
    EIGENFUNCTION_EDGE,
    EIGENFUNCTIONS_FILE_STEM,
    KERNEL_FILE_STEM,
    SPECTRUM_FILE_STEM,
)
from commands.artifacts import save_csv, save_json
from commands.run_config import RunConfig
from spectral.prolate import (
    ProlatePair,
    SpectrumReport,
    eigenfunction_sample,
    integral_equation_defect,
    prolate_eigenpairs,
    spectrum_report,
)
from timeband.kernel import kernel_k


def clamp_concentrations(lambdas) -> np.ndarray:
    """Concentrations lie in [0, 1]; roundoff can push the extremes just outside"""
    return np.clip(np.asarray(lambdas, dtype=float), 0.0, 1.0)


class SpectrumExport:
    """Per-sector concentrations and L~ eigenvalues with the gap report"""

    def __init__(self, config: RunConfig, verbose: bool = True):
        self.config = config
        self.params = config.to_params()
        self.verbose = verbose

    def build(self) -> SpectrumReport:
        return spectrum_report(self.params, prolate_eigenpairs(self.params))

    def to_frame(self, report: SpectrumReport) -> pd.DataFrame:
        """One row per eigenpair: sector, index, lambda (clamped to [0, 1]), chi"""
        rows = []
        for sector in report.sectors:
            lambdas = clamp_concentrations(sector.lambdas)
            for index, (lam, chi) in enumerate(zip(lambdas, sector.chis)):
                rows.append({"sector": sector.sector, "index": index, "lambda": lam, "chi": chi})
        return pd.DataFrame(rows, columns=["sector", "index", "lambda", "chi"])

    def gaps_frame(self, report: SpectrumReport) -> pd.DataFrame:
        return pd.DataFrame([
            {
                "sector": s.sector,
                "gap_M": s.gap_M,
                "gap_Ltilde": s.gap_Ltilde,
                "ratio": s.ratio,
                "resolution": s.resolution,
                "degenerate": s.degenerate,
                "unresolved": s.unresolved,
                "chi_monotone": s.chi_monotone,
                "flagged": s.flagged,
            }
            for s in report.sectors
        ])

    def to_document(self, report: SpectrumReport) -> dict:
        return {
            "params": self.config.describe(),
            "degenerate": report.degenerate,
            "unresolved": report.unresolved,
            "sectors": [
                {
                    "sector": s.sector,
                    "lambda": clamp_concentrations(s.lambdas),
                    "chi": s.chis,
                    "gaps": {
                        "M": s.gap_M,
                        "Ltilde": s.gap_Ltilde,
                        "ratio": s.ratio,
                        "resolution": s.resolution,
                    },
                    "degenerate": s.degenerate,
                    "unresolved": s.unresolved,
                    "chi_monotone": s.chi_monotone,
                    "flagged": s.flagged,
                }
                for s in report.sectors
            ],
        }

    def run(self) -> Path:
        if self.verbose:
            print("=" * 60)
            print("SPECTRUM: concentrations and L~ eigenvalues per sector")
            print("=" * 60)

        report = self.build()
        output_path = self.config.output_file(SPECTRUM_FILE_STEM)
        if self.config.format == "csv":
            save_csv(self.to_frame(report), output_path)
            gaps_path = output_path.with_name(f"{output_path.stem}_gaps.csv")
            save_csv(self.gaps_frame(report), gaps_path)
            if self.verbose:
                print(f"  Saved gap report to: {gaps_path}")
        else:
            save_json(self.to_document(report), output_path)

        if self.verbose:
            for s in report.sectors:
                print(f"  sector {s.sector:+d}: gap_M={s.gap_M:.3e}, "
                      f"gap_Ltilde={s.gap_Ltilde:.3e}, ratio={s.ratio:.3e}"
                      f"{' (unresolved)' if s.unresolved else ''}")
            print(f"  Saved spectrum to: {output_path}")
            print("=" * 60)
        return output_path


class EigenfunctionExport:
    """Top-k eigenfunctions sampled on (-1 + eps, Omega - eps)"""

    def __init__(self, config: RunConfig, verbose: bool = True):
        self.config = config
        self.params = config.to_params()
        self.verbose = verbose

    def grid(self) -> np.ndarray:
        lo = -1.0 + EIGENFUNCTION_EDGE
        hi = self.params.Omega - EIGENFUNCTION_EDGE
        return np.linspace(lo, hi, self.config.grid_points)

    def select(self) -> List[ProlatePair]:
        return prolate_eigenpairs(self.params)[: self.config.top_k]

    def to_frame(self, pairs: List[ProlatePair], grid: np.ndarray) -> pd.DataFrame:
        """Columns x, phi{k}_1, phi{k}_2 (and residual{k} when checking)"""
        columns = {"x": grid}
        for k, pair in enumerate(pairs):
            values = eigenfunction_sample(pair, grid)
            columns[f"phi{k}_1"] = values[:, 0]
            columns[f"phi{k}_2"] = values[:, 1]
            if self.config.check:
                columns[f"residual{k}"] = integral_equation_defect(pair, grid)
        return pd.DataFrame(columns)

    def to_document(self, pairs: List[ProlatePair], grid: np.ndarray) -> dict:
        functions = []
        for k, pair in enumerate(pairs):
            entry = {
                "rank": k,
                "sector": pair.sector,
                "lambda": float(clamp_concentrations(pair.lam)),
                "chi": pair.chi,
                "flagged": pair.flagged,
                "values": eigenfunction_sample(pair, grid),
            }
            if self.config.check:
                entry["residual"] = integral_equation_defect(pair, grid)
            functions.append(entry)
        return {"params": self.config.describe(), "x": grid, "eigenfunctions": functions}

    def run(self) -> Path:
        if self.verbose:
            print("=" * 60)
            print(f"EIGENFUNCTIONS: top {self.config.top_k} by concentration")
            print("=" * 60)

        pairs = self.select()
        grid = self.grid()
        output_path = self.config.output_file(EIGENFUNCTIONS_FILE_STEM)
        if self.config.format == "csv":
            save_csv(self.to_frame(pairs, grid), output_path)
        else:
            save_json(self.to_document(pairs, grid), output_path)

        if self.verbose:
            for k, pair in enumerate(pairs):
                print(f"  phi{k}: sector {pair.sector:+d}, lambda={pair.lam:.15f}, chi={pair.chi:.6f}")
            print(f"  Saved {len(pairs)} eigenfunctions on {len(grid)} points to: {output_path}")
            print("=" * 60)
        return output_path


class KernelExport:
    """k(x, y) on the product grid x_range x y_range"""

    def __init__(self, config: RunConfig, verbose: bool = True):
        self.config = config
        self.params = config.to_params()
        self.verbose = verbose

    def to_frame(self) -> pd.DataFrame:
        xs = np.linspace(*self.config.x_range, self.config.grid_points)
        ys = np.linspace(*self.config.y_range, self.config.grid_points)
        x, y = (axis.ravel() for axis in np.meshgrid(xs, ys, indexing="ij"))
        k = kernel_k(self.params, x, y)
        return pd.DataFrame({
            "x": x,
            "y": y,
            "k11": k[:, 0, 0],
            "k12": k[:, 0, 1],
            "k21": k[:, 1, 0],
            "k22": k[:, 1, 1],
        })

    def run(self) -> Path:
        if self.verbose:
            print("=" * 60)
            print("KERNEL: k(x, y) on a product grid")
            print("=" * 60)

        df = self.to_frame()
        output_path = self.config.output_file(KERNEL_FILE_STEM)
        if self.config.format == "csv":
            save_csv(df, output_path)
        else:
            save_json({"params": self.config.describe(), "rows": df.to_dict(orient="records")},
                      output_path)

        if self.verbose:
            print(f"  Saved {len(df)} kernel rows to: {output_path}")
            print("=" * 60)
        return output_path
