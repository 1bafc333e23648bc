"""Helper functions to get environment variables and numeric tolerances from .env or the process environment"""
import logging
import math
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Dict, Optional

import numpy as np
from dotenv import load_dotenv

from utils.errors import InvalidParameterError

logger = logging.getLogger(__name__)

# PGST search defaults
DEFAULT_ELL_MAX = 100_000
REFINE_WINDOW = math.pi / 8
REFINE_ITERATIONS = 40
SEARCH_CHUNK_SIZE = 4096

# all-pairs PST scan guard (vertex count of the analysed graph)
SCAN_VERTEX_LIMIT = 60

_dotenv_loaded = False


def _load_dotenv_once() -> None:
    global _dotenv_loaded
    if _dotenv_loaded:
        return
    env_file = Path(__file__).parent.parent / ".env"
    if env_file.exists():
        load_dotenv(env_file, override=False)
        logger.debug(f"[Config] Loaded {env_file}")
    _dotenv_loaded = True


def get_env_var(key: str, default: Optional[str] = None) -> Optional[str]:
    """
    Get environment variable from the process environment or the project .env file

    Args:
        key: Environment variable key
        default: Default value if not found

    Returns:
        Environment variable value or default
    """
    _load_dotenv_once()
    value = os.getenv(key)
    if value is None or value.strip() == "":
        return default
    return value


@dataclass(frozen=True)
class Tolerances:
    """Numeric tolerances; `grouping` is relative to max(1, ‖M‖∞), `support` and `cospectral` to ‖pair vector‖"""
    grouping: float = 1e-8
    support: float = 1e-7
    cospectral: float = 1e-7
    integrality: float = 1e-6
    fidelity: float = 1e-8

    def grouping_for(self, matrix: np.ndarray) -> float:
        """Absolute eigenvalue grouping tolerance for a given matrix"""
        if matrix.size == 0:
            return self.grouping
        return self.grouping * max(1.0, float(np.abs(matrix).sum(axis=1).max()))

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()


def _parse_positive(key: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise InvalidParameterError(f"Tolerance {key} is not a number: {raw!r}")
    if not math.isfinite(value) or value <= 0:
        raise InvalidParameterError(f"Tolerance {key} must be a positive finite number, got {raw!r}")
    return value


def parse_tolerance_override(raw: str, base: Tolerances = DEFAULT_TOLERANCES) -> Tolerances:
    """Apply a PAIRWALK_TOL style override: a single float or `key=value,...` pairs"""
    raw = raw.strip()
    if "=" not in raw:
        value = _parse_positive("PAIRWALK_TOL", raw)
        return replace(base, grouping=value, support=value, cospectral=value)

    known = {f.name for f in fields(Tolerances)}
    updates = {}
    for item in raw.split(","):
        if not item.strip():
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in known:
            raise InvalidParameterError(
                f"Unknown tolerance {key!r}; expected one of {', '.join(sorted(known))}"
            )
        updates[key] = _parse_positive(key, value.strip())
    return replace(base, **updates)


def load_tolerances() -> Tolerances:
    """Tolerances from PAIRWALK_TOL, falling back to the defaults"""
    raw = get_env_var("PAIRWALK_TOL")
    if raw is None:
        return DEFAULT_TOLERANCES
    tolerances = parse_tolerance_override(raw)
    logger.info(f"[Config] Tolerance override from PAIRWALK_TOL: {tolerances.to_dict()}")
    return tolerances


def get_log_level(default: str = "INFO") -> str:
    """Log level name from PAIRWALK_LOG_LEVEL"""
    level = (get_env_var("PAIRWALK_LOG_LEVEL", default) or default).upper()
    if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        raise InvalidParameterError(f"Unknown log level: {level}")
    return level
