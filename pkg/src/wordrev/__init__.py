"""Subword reversing for presented monoids and groups."""

from .presentation import (
    Presentation,
    PresentationSyntaxError,
    Relation,
    homogeneity_witness,
    is_complemented,
    mirror,
    parse_presentation,
)
from .reversing import (
    Limits,
    ReversalOutcome,
    Status,
    build_grid,
    complement,
    reverse_left,
    reverse_right,
)

__all__ = [
    "Limits",
    "Presentation",
    "PresentationSyntaxError",
    "Relation",
    "ReversalOutcome",
    "Status",
    "build_grid",
    "complement",
    "homogeneity_witness",
    "is_complemented",
    "mirror",
    "parse_presentation",
    "reverse_left",
    "reverse_right",
]

__version__ = "0.1.0"
