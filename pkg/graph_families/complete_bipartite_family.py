"""Complete bipartite graphs K_{a,b}"""
from typing import Dict, List

from graph_families.base_family import Field, GraphFamily
from utils.graph_core import Graph, complete_bipartite


class CompleteBipartiteFamily(GraphFamily):

    @property
    def family_name(self) -> str:
        return "complete_bipartite"

    @property
    def display_name(self) -> str:
        return "Complete bipartite graph K_{a,b}"

    def get_parameter_fields(self) -> List[Field]:
        return [
            Field(name="a", field_type="int", label="First side", min_value=1),
            Field(name="b", field_type="int", label="Second side", min_value=1),
        ]

    def _build(self, params: Dict) -> Graph:
        return complete_bipartite(params["a"], params["b"])
