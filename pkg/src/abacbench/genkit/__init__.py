"""Parameterized dataset generators for the two large case studies."""

from .config import GenConfig, parse_config_file
from .edocument import DEFAULT_CONTROLS as EDOCUMENT_DEFAULTS
from .edocument import generate_edocument
from .workforce import DEFAULT_CONTROLS as WORKFORCE_DEFAULTS
from .workforce import generate_workforce

__all__ = [
    "EDOCUMENT_DEFAULTS",
    "GenConfig",
    "WORKFORCE_DEFAULTS",
    "generate_edocument",
    "generate_workforce",
    "parse_config_file",
]
