"""Domain error types with the status/code/msg response shape"""
from typing import Dict


class PairwalkError(Exception):
    """Base class for all pairwalk domain errors"""

    code = "pairwalk-error"

    def __init__(self, msg: str):
        super().__init__(msg)
        self.msg = msg

    def to_dict(self) -> Dict:
        """Machine-readable error object"""
        return {
            "status": 1,
            "code": self.code,
            "msg": self.msg
        }


class InvalidParameterError(PairwalkError):
    code = "invalid-parameter"


class InvalidMatrixError(PairwalkError):
    code = "invalid-matrix"


class NumericFailureError(PairwalkError):
    code = "numeric-failure"


class UnsupportedError(PairwalkError):
    code = "unsupported"


class CertificationUnavailableError(PairwalkError):
    """No exact spectrum exists, so neither yes nor no can be certified"""
    code = "certification-unavailable"


class InternalInconsistencyError(PairwalkError):
    code = "internal-inconsistency"


class GuardViolationError(PairwalkError):
    code = "guard-violation"


class UnknownCaseError(PairwalkError):
    code = "unknown-case"


class UsageError(PairwalkError):
    """Bad command-line usage (unknown family, malformed flag values)"""
    code = "usage-error"
