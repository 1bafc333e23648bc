"""Verification case registry"""
from typing import Dict, List

from utils.errors import UnknownCaseError

from .base_case import CaseResult, TheoremCase
from .pgst_cases import CocktailPartyPGSTCase, HypercubePGSTCase
from .pst_cases import CocktailPartyPSTCase, NonexistenceTotalCase, SupportPairingCase, TotalCompleteCase
from .spectra_cases import OracleEquivalenceCase, PropertySuiteCase, SpectraOracleCase, TknProjectorsCase

# Case registry
CASE_REGISTRY = {
    'spectra-oracle': SpectraOracleCase(),
    'thm-tkn': TotalCompleteCase(),
    'tkn-projectors': TknProjectorsCase(),
    'thm-nonexistence-total': NonexistenceTotalCase(),
    'lemma-support-pairing': SupportPairingCase(),
    'ex-cocktail-pst': CocktailPartyPSTCase(),
    'ex-cocktail': CocktailPartyPGSTCase(),
    'ex-hypercube': HypercubePGSTCase(),
    'oracle-equivalence': OracleEquivalenceCase(),
    'property-suites': PropertySuiteCase(),
}


def get_case(case_id: str) -> TheoremCase:
    """Get a verification case by id"""
    case = CASE_REGISTRY.get(case_id.lower())
    if case is None:
        raise UnknownCaseError(f"Unknown case {case_id!r}; available: {', '.join(get_available_cases())}")
    return case


def get_available_cases() -> List[str]:
    """Get list of registered case ids"""
    return list(CASE_REGISTRY.keys())


def get_case_descriptions() -> Dict[str, str]:
    return {key: case.description for key, case in CASE_REGISTRY.items()}
