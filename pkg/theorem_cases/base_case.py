"""Base interface for registered verification cases"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from utils.env_helper import DEFAULT_TOLERANCES, Tolerances
from utils.errors import InvalidParameterError
from utils.graph_core import Graph, circulant, complete_graph, cycle, hypercube, petersen

logger = logging.getLogger(__name__)


@dataclass
class CaseResult:
    case_id: str
    passed: bool
    expected: str
    observed: str
    evidence: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "case": self.case_id,
            "status": "pass" if self.passed else "fail",
            "expected": self.expected,
            "observed": self.observed,
            "evidence": self.evidence,
        }


class TheoremCase(ABC):
    """Base class for all verification cases"""

    @property
    @abstractmethod
    def case_id(self) -> str:
        """Case identifier used by verify-theorem --case"""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    @property
    def default_params(self) -> Dict[str, Any]:
        return {}

    @abstractmethod
    def _run(self, params: Dict[str, Any], tolerances: Tolerances) -> CaseResult:
        pass

    def run(self, params: Optional[Dict[str, Any]] = None, tolerances: Tolerances = DEFAULT_TOLERANCES) -> CaseResult:
        params = params or {}
        unknown = sorted(set(params) - set(self.default_params))
        if unknown:
            raise InvalidParameterError(f"Case {self.case_id} does not take parameter(s): {', '.join(unknown)}")
        merged = {**self.default_params, **params}
        logger.info(f"[Case] Running {self.case_id} with {merged}")
        result = self._run(merged, tolerances)
        logger.info(f"[Case] {self.case_id}: {'pass' if result.passed else 'FAIL'} ({result.observed})")
        return result


def oracle_fixtures() -> List[Graph]:
    """Regular bases with r ≥ 2 whose total spectra are cross-checked against numerics"""
    return [
        complete_graph(4),
        complete_graph(5),
        petersen(),
        hypercube(3),
        circulant(6, [1, 3, 5]),
        cycle(5),
    ]
