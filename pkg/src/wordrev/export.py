"""DOT and JSON renderings of grids, one-letter diagrams, lattices and traces."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING, Sequence, Union

from .diagram import Diagram
from .presentation import Presentation
from .reversing import ReversingGrid

if TYPE_CHECKING:
    from .braids import NamedGrid
    from .garside import DivisorLattice

__all__ = [
    "diagram_to_dot",
    "diagram_to_json",
    "export_grid",
    "grid_to_dot",
    "grid_to_json",
    "lattice_to_dot",
    "lattice_to_json",
    "trace_to_json",
]

EPSILON = "ε"


def _q(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def _word(p: Presentation, w) -> str:
    return p.format(w, style="minus") if w else ""


def trace_to_json(p: Presentation, trace: Sequence[Sequence[int]]) -> str:
    """Signed words as arrays of letter names, inverses prefixed with ``-``."""
    return json.dumps([[p.format((x,), style="minus") for x in w] for w in trace], ensure_ascii=False)


# -- cell grids ---------------------------------------------------------------


def _grid_edges(grid: ReversingGrid):
    """(src node, dst node, word) for every edge of the grid, top row and left column first."""
    edges = []
    for j, x in enumerate(grid.v):
        edges.append(((0, j), (0, j + 1), (x,)))
    for i, x in enumerate(grid.u):
        edges.append(((i, 0), (i + 1, 0), (x,)))
    for row in grid.cells:
        for c in row:
            edges.append(((c.row + 1, c.col), (c.row + 1, c.col + 1), c.bottom))
            edges.append(((c.row, c.col + 1), (c.row + 1, c.col + 1), c.right))
    return edges


def grid_to_dot(grid: ReversingGrid) -> str:
    p = grid.presentation
    lines = ["digraph reversing {", "  node [shape=point];"]
    for i in range(grid.rows + 1):
        for j in range(grid.cols + 1):
            lines.append(f"  v{i}_{j};")
    for (a, b), (c, d), w in _grid_edges(grid):
        if w:
            lines.append(f"  v{a}_{b} -> v{c}_{d} [label={_q(p.format(w))}];")
        else:
            lines.append(f"  v{a}_{b} -> v{c}_{d} [style=dotted, arrowhead=none, label={_q(EPSILON)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def grid_to_json(grid: ReversingGrid) -> str:
    p = grid.presentation
    data = {
        "u": _word(p, grid.u),
        "v": _word(p, grid.v),
        "rows": grid.rows,
        "cols": grid.cols,
        "cells": [
            {
                "row": c.row,
                "col": c.col,
                "left": _word(p, c.left),
                "top": _word(p, c.top),
                "bottom": _word(p, c.bottom),
                "right": _word(p, c.right),
                "steps": c.steps,
            }
            for row in grid.cells
            for c in row
        ],
        "bottom": _word(p, grid.bottom),
        "right": _word(p, grid.right),
        "steps": grid.steps,
    }
    return json.dumps(data, ensure_ascii=False, sort_keys=True)


# -- one-letter diagrams ------------------------------------------------------


def _split(obj) -> tuple[Diagram, list | None]:
    if isinstance(obj, Diagram):
        return obj, None
    return obj.diagram, obj.names


def diagram_to_dot(obj: Union[Diagram, "NamedGrid"]) -> str:
    """Vertices, letter-labelled edges (with names for braid diagrams), dotted arcs for trivial steps."""
    d, names = _split(obj)
    p = d.presentation
    lines = ["digraph reversing {", "  node [shape=point];"]
    for k in range(d.vertices):
        lines.append(f"  n{k};")
    for i, e in enumerate(d.edges):
        label = p.name(e.letter)
        if names is not None:
            nm = names[i]
            label += f" [{nm.p},{nm.q},{nm.a}]"
        lines.append(f"  n{e.src} -> n{e.dst} [label={_q(label)}];")
    for a, b in d.dotted:
        lines.append(f"  n{a} -> n{b} [style=dotted, arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def diagram_to_json(obj: Union[Diagram, "NamedGrid"]) -> str:
    d, names = _split(obj)
    p = d.presentation
    edges = []
    for i, e in enumerate(d.edges):
        item = {"src": e.src, "dst": e.dst, "letter": p.name(e.letter)}
        if names is not None:
            item["name"] = list(names[i])
        edges.append(item)
    data = {
        "word": _word(p, d.word),
        "vertices": d.vertices,
        "edges": edges,
        "faces": [{"apex": f.apex, "left": list(f.left), "right": list(f.right)} for f in d.faces],
        "dotted": [list(x) for x in d.dotted],
        "open": [[i, g] for i, g in d.boundary],
    }
    return json.dumps(data, ensure_ascii=False, sort_keys=True)


def export_grid(obj, fmt: str = "dot") -> str:
    """Render a ReversingGrid, Diagram or NamedGrid as ``dot`` or ``json``."""
    if fmt not in ("dot", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(obj, ReversingGrid):
        return grid_to_dot(obj) if fmt == "dot" else grid_to_json(obj)
    return diagram_to_dot(obj) if fmt == "dot" else diagram_to_json(obj)


# -- divisor lattices ---------------------------------------------------------


def lattice_to_dot(lattice: "DivisorLattice") -> str:
    p = lattice.presentation
    lines = ["digraph divisors {", "  rankdir=BT;"]
    for i, w in enumerate(lattice.elements):
        lines.append(f"  d{i} [label={_q(p.format(w) if w else EPSILON)}];")
    for i, j, s in lattice.edges:
        lines.append(f"  d{i} -> d{j} [label={_q(p.name(s))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_to_json(lattice: "DivisorLattice") -> str:
    p = lattice.presentation
    data = {
        "delta": _word(p, lattice.delta),
        "elements": [_word(p, w) for w in lattice.elements],
        "edges": [[i, j, p.name(s)] for i, j, s in lattice.edges],
        "size": len(lattice.elements),
    }
    return json.dumps(data, ensure_ascii=False, sort_keys=True)
