"""Hypercubes Q_d"""
from typing import Dict, List

from graph_families.base_family import Field, GraphFamily
from utils.graph_core import Graph, hypercube


class HypercubeFamily(GraphFamily):

    @property
    def family_name(self) -> str:
        return "hypercube"

    @property
    def display_name(self) -> str:
        return "Hypercube Q_d"

    def get_parameter_fields(self) -> List[Field]:
        return [Field(name="d", field_type="int", label="Dimension", min_value=1)]

    def _build(self, params: Dict) -> Graph:
        return hypercube(params["d"])
