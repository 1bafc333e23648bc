"""Graph family registry"""
from typing import Dict, List, Optional

from .base_family import Field, GraphFamily
from .circulant_family import CirculantFamily
from .cocktail_party_family import CocktailPartyFamily
from .complete_bipartite_family import CompleteBipartiteFamily
from .complete_family import CompleteFamily
from .cycle_family import CycleFamily
from .hypercube_family import HypercubeFamily
from .petersen_family import PetersenFamily

# Family registry
FAMILY_REGISTRY = {
    'complete': CompleteFamily(),
    'circulant': CirculantFamily(),
    'cocktail_party': CocktailPartyFamily(),
    'hypercube': HypercubeFamily(),
    'petersen': PetersenFamily(),
    'cycle': CycleFamily(),
    'complete_bipartite': CompleteBipartiteFamily(),
}


def get_family(family_name: str) -> Optional[GraphFamily]:
    """Get graph family by name"""
    return FAMILY_REGISTRY.get(family_name.lower())


def get_available_families() -> List[str]:
    """Get list of available family names"""
    return list(FAMILY_REGISTRY.keys())


def get_family_display_names() -> Dict[str, str]:
    """Get display names for all families"""
    return {key: family.display_name for key, family in FAMILY_REGISTRY.items()}
