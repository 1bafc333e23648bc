"""Cycles C_n"""
from typing import Dict, List

from graph_families.base_family import Field, GraphFamily
from utils.graph_core import Graph, cycle


class CycleFamily(GraphFamily):

    @property
    def family_name(self) -> str:
        return "cycle"

    @property
    def display_name(self) -> str:
        return "Cycle C_n"

    def get_parameter_fields(self) -> List[Field]:
        return [Field(name="n", field_type="int", label="Vertex count", min_value=3)]

    def _build(self, params: Dict) -> Graph:
        return cycle(params["n"])
