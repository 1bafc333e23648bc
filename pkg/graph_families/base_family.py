"""Base interface for parameterised graph families"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from utils.errors import InvalidParameterError
from utils.graph_core import Graph


@dataclass
class Field:
    """Parameter definition for a graph family"""
    name: str
    field_type: str  # int, int_list
    required: bool = True
    label: Optional[str] = None
    help_text: Optional[str] = None
    default: Any = None
    min_value: Optional[int] = None

    def __post_init__(self):
        if self.label is None:
            self.label = self.name.replace('_', ' ').title()


class GraphFamily(ABC):
    """Base class for all graph families"""

    @property
    @abstractmethod
    def family_name(self) -> str:
        """Family identifier (lowercase)"""
        pass

    @property
    @abstractmethod
    def display_name(self) -> str:
        """Human-readable family name"""
        pass

    @abstractmethod
    def get_parameter_fields(self) -> List[Field]:
        """Parameters accepted by build()"""
        pass

    @abstractmethod
    def _build(self, params: Dict) -> Graph:
        pass

    def validate_params(self, params: Dict) -> Tuple[bool, str]:
        """Validate parameters against the declared fields"""
        fields = {f.name: f for f in self.get_parameter_fields()}
        unknown = sorted(set(params) - set(fields))
        if unknown:
            return False, f"{self.display_name} does not take parameter(s): {', '.join(unknown)}"

        for name, field_def in fields.items():
            if name not in params:
                if field_def.required and field_def.default is None:
                    return False, f"{field_def.label} is required"
                continue
            value = params[name]
            items = value if field_def.field_type == "int_list" else [value]
            if field_def.field_type == "int_list" and not isinstance(value, (list, tuple)):
                return False, f"{field_def.label} must be a list of integers"
            for item in items:
                if isinstance(item, bool) or not isinstance(item, int):
                    return False, f"{field_def.label} must be an integer, got {item!r}"
                if field_def.min_value is not None and item < field_def.min_value:
                    return False, f"{field_def.label} must be at least {field_def.min_value}, got {item}"

        return True, ""

    def with_defaults(self, params: Dict) -> Dict:
        merged = {f.name: f.default for f in self.get_parameter_fields() if f.default is not None}
        merged.update(params)
        return merged

    def build(self, params: Optional[Dict] = None) -> Graph:
        """Validate parameters and construct the graph"""
        params = self.with_defaults(params or {})
        for f in self.get_parameter_fields():
            if f.field_type == "int_list" and isinstance(params.get(f.name), int):
                params[f.name] = [params[f.name]]
        ok, msg = self.validate_params(params)
        if not ok:
            raise InvalidParameterError(msg)
        return self._build(params)

    def describe(self) -> Dict:
        return {
            "name": self.family_name,
            "display_name": self.display_name,
            "parameters": [
                {"name": f.name, "type": f.field_type, "required": f.required, "default": f.default, "help": f.help_text}
                for f in self.get_parameter_fields()
            ],
        }
