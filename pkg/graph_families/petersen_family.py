"""The Petersen graph"""
from typing import Dict, List

from graph_families.base_family import Field, GraphFamily
from utils.graph_core import Graph, petersen


class PetersenFamily(GraphFamily):

    @property
    def family_name(self) -> str:
        return "petersen"

    @property
    def display_name(self) -> str:
        return "Petersen graph"

    def get_parameter_fields(self) -> List[Field]:
        return []

    def _build(self, params: Dict) -> Graph:
        return petersen()
