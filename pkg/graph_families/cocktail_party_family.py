"""Cocktail party graphs CP(m)"""
from typing import Dict, List

from graph_families.base_family import Field, GraphFamily
from utils.graph_core import Graph, cocktail_party


class CocktailPartyFamily(GraphFamily):

    @property
    def family_name(self) -> str:
        return "cocktail_party"

    @property
    def display_name(self) -> str:
        return "Cocktail party graph CP(m)"

    def get_parameter_fields(self) -> List[Field]:
        return [
            Field(
                name="m",
                field_type="int",
                label="Couples",
                help_text="2m vertices; i and i + m are non-adjacent",
                min_value=2,
            )
        ]

    def _build(self, params: Dict) -> Graph:
        return cocktail_party(params["m"])
