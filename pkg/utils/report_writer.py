"""JSON reports and CSV sweeps"""
import hashlib
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from utils import __version__
from utils.exact_arithmetic import ExactScalar

logger = logging.getLogger(__name__)


def make_json_safe(obj: Any) -> Any:
    """Recursively convert numpy values, complex numbers, exact scalars and report objects to plain JSON types"""
    if hasattr(obj, "to_dict") and callable(obj.to_dict):
        obj = obj.to_dict()

    if isinstance(obj, dict):
        return {str(k): make_json_safe(v) for k, v in obj.items()}

    if isinstance(obj, (list, tuple)):
        return [make_json_safe(v) for v in obj]

    if isinstance(obj, np.ndarray):
        return make_json_safe(obj.tolist())

    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}

    if isinstance(obj, np.bool_):
        return bool(obj)

    if isinstance(obj, (np.integer, np.floating)):
        return obj.item()

    if isinstance(obj, ExactScalar):
        return obj.to_string()

    if isinstance(obj, Fraction):
        return str(obj)

    if isinstance(obj, Path):
        return str(obj)

    return obj


def file_digest(path: Union[str, Path]) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class AnalysisReport:
    """One CLI result: command echo, graph descriptor, tolerances in force, and the command payload"""
    command: str
    graph: Optional[Dict[str, Any]]
    tolerances: Dict[str, float]
    payload: Dict[str, Any]
    wall_time: Optional[float] = None
    argv: List[str] = field(default_factory=list)
    tool_version: str = field(default=__version__)

    def to_dict(self) -> dict:
        result = {
            "command": self.command,
            "command_line": list(self.argv),
            "graph": self.graph,
            "tolerances": self.tolerances,
            "result": self.payload,
            "tool_version": self.tool_version,
        }
        if self.wall_time is not None:
            result["wall_time_seconds"] = self.wall_time
        return result

    def to_json(self) -> str:
        return dumps(self)


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, two-space indent, no NaN"""
    return json.dumps(make_json_safe(obj), sort_keys=True, indent=2, allow_nan=False, ensure_ascii=False)


def write_sweep_csv(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, columns=["time", "fidelity"])
    logger.info(f"[Report] Wrote {len(frame)} sweep rows to {path}")
    return path
