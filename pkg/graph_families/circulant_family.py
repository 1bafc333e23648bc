"""Circulant graphs Cay(Z_n, S)"""
from typing import Dict, List

from graph_families.base_family import Field, GraphFamily
from utils.graph_core import Graph, circulant


class CirculantFamily(GraphFamily):

    @property
    def family_name(self) -> str:
        return "circulant"

    @property
    def display_name(self) -> str:
        return "Circulant graph Cay(Z_n, S)"

    def get_parameter_fields(self) -> List[Field]:
        return [
            Field(name="n", field_type="int", label="Vertex count", min_value=2),
            Field(
                name="S",
                field_type="int_list",
                label="Connection set",
                help_text="Residues mod n, closed under negation, e.g. S=1,3,5",
            ),
        ]

    def _build(self, params: Dict) -> Graph:
        return circulant(params["n"], params["S"])
