"""
Run configuration shared by every command
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import sys
sys.path.append(str(Path(__file__).parent.parent))
from config import (
    DEFAULT_FORMAT,
    DEFAULT_GRID_POINTS,
    DEFAULT_SEED,
    DEFAULT_TOL,
    DEFAULT_TOP_K,
    KERNEL_RANGE,
    OUTPUT_DIR,
    OUTPUT_FORMATS,
)
from errors import ParameterError
from matrix_jacobi.model import ModelParams


@dataclass
class RunConfig:
    """
    Everything a command needs: the model instance plus output settings

    output_path overrides the default file under OUTPUT_DIR.
    """

    alpha: float
    beta: float
    N: int
    Omega: float
    quad_order: Optional[int] = None
    tol: float = DEFAULT_TOL
    grid_points: int = DEFAULT_GRID_POINTS
    output_path: Optional[Path] = None
    format: str = DEFAULT_FORMAT
    top_k: int = DEFAULT_TOP_K
    seed: int = DEFAULT_SEED
    check: bool = False
    grid: bool = False
    x_range: Tuple[float, float] = KERNEL_RANGE
    y_range: Tuple[float, float] = KERNEL_RANGE

    def __post_init__(self):
        if self.format not in OUTPUT_FORMATS:
            raise ParameterError(f"format={self.format!r} violates format in {OUTPUT_FORMATS}")
        if self.grid_points < 1:
            raise ParameterError(f"grid_points={self.grid_points} violates grid_points >= 1")
        if self.top_k < 1:
            raise ParameterError(f"top_k={self.top_k} violates top_k >= 1")
        for name in ("x_range", "y_range"):
            lo, hi = getattr(self, name)
            if not lo < hi:
                raise ParameterError(f"{name}=({lo}, {hi}) violates lo < hi")
        if self.output_path is not None:
            self.output_path = Path(self.output_path)

    def to_params(self) -> ModelParams:
        """Validated model instance; raises ParameterError"""
        return ModelParams(
            alpha=self.alpha,
            beta=self.beta,
            N=self.N,
            Omega=self.Omega,
            quad_order=self.quad_order,
            tol=self.tol,
        )

    def output_file(self, stem: str, suffix: Optional[str] = None) -> Path:
        if self.output_path is not None:
            return self.output_path
        return OUTPUT_DIR / f"{stem}.{suffix or self.format}"

    def describe(self) -> dict:
        """Instance parameters as written into reports"""
        params = self.to_params()
        return {
            "alpha": params.alpha,
            "beta": params.beta,
            "N": params.N,
            "Omega": params.Omega,
            "quad_order": params.quad_order,
            "tol": params.tol,
            "seed": self.seed,
        }
