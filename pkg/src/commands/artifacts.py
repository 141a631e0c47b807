"""
CSV and JSON artifact writers shared by the commands
"""

import json
import math
from pathlib import Path

import numpy as np
import pandas as pd

CSV_FLOAT_FORMAT = "%.17g"


def json_safe(value):
    """Convert numpy values to plain Python; non-finite floats become None"""
    if isinstance(value, dict):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, np.ndarray):
        return json_safe(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    return value


def save_json(document: dict, output_path: Path) -> Path:
    """Write a JSON document (sorted keys, no NaN/inf)"""
    output_path = Path(output_path)
    try:
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", encoding="utf-8") as f:
            json.dump(json_safe(document), f, indent=2, sort_keys=True, allow_nan=False)
            f.write("\n")
    except OSError as e:
        raise OSError(f"Could not write {output_path}: {e}") from e
    return output_path


def save_csv(df: pd.DataFrame, output_path: Path) -> Path:
    """Write a DataFrame as UTF-8 CSV with round-trip float precision"""
    output_path = Path(output_path)
    try:
        output_path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(output_path, index=False, float_format=CSV_FLOAT_FORMAT, encoding="utf-8")
    except OSError as e:
        raise OSError(f"Could not write {output_path}: {e}") from e
    return output_path
