"""Presentations used throughout the documentation and the test suite."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .presentation import Presentation, parse_presentation

NAMES = (
    "example_1_2",
    "example_1_2_completed",
    "flag_braid",
    "baumslag_solitar",
    "a2_tilde",
    "raag",
    "counter",
    "heisenberg",
    "nonhomogeneous",
    "b3",
    "b4",
)


def path(name: str):
    if name not in NAMES:
        raise KeyError(f"no corpus presentation named {name!r}")
    return resources.files(__package__).joinpath("data", f"{name}.pres")


@lru_cache(maxsize=None)
def load(name: str) -> Presentation:
    return parse_presentation(path(name).read_text(encoding="utf-8"))
