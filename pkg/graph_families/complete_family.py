"""Complete graphs K_n"""
from typing import Dict, List

from graph_families.base_family import Field, GraphFamily
from utils.graph_core import Graph, complete_graph


class CompleteFamily(GraphFamily):

    @property
    def family_name(self) -> str:
        return "complete"

    @property
    def display_name(self) -> str:
        return "Complete graph K_n"

    def get_parameter_fields(self) -> List[Field]:
        return [Field(name="n", field_type="int", label="Vertex count", min_value=2)]

    def _build(self, params: Dict) -> Graph:
        return complete_graph(params["n"])
