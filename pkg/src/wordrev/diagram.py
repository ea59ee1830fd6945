"""
Reversing diagrams with one edge per letter.

Replaying a sequence of reversing moves on a signed word adds, for each
step s^-1 t => v' v^-1, a face bounded by s v' and t v; a trivial step
s^-1 s => e adds a dotted arc joining the two end vertices instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .presentation import Presentation, Word
from .reversing import DEFAULT_LIMITS, Limits, Status, search_empty, reverse_right

__all__ = ["Diagram", "Edge", "Face", "reversing_diagram"]


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    letter: int


@dataclass(frozen=True)
class Face:
    apex: int
    # edge ids along the two sides, both starting at ``apex``
    left: tuple[int, ...]
    right: tuple[int, ...]


@dataclass
class Diagram:
    presentation: Presentation
    word: tuple[int, ...]
    vertices: int = 0
    edges: list[Edge] = field(default_factory=list)
    faces: list[Face] = field(default_factory=list)
    # pairs of vertices joined by a dotted arc (trivial steps)
    dotted: list[tuple[int, int]] = field(default_factory=list)
    # current boundary: (edge id, sign) as the path is read
    boundary: list[tuple[int, int]] = field(default_factory=list)
    start: int = 0

    def new_vertex(self) -> int:
        self.vertices += 1
        return self.vertices - 1

    def new_edge(self, src: int, dst: int, letter: int) -> int:
        self.edges.append(Edge(src, dst, letter))
        return len(self.edges) - 1

    def chain(self, start: int, letters: Sequence[int], end: Optional[int]) -> tuple[list[int], int]:
        """Edges spelling ``letters`` from ``start``; the last one ends at ``end`` if given."""
        ids = []
        cur = start
        for k, x in enumerate(letters):
            nxt = end if (k == len(letters) - 1 and end is not None) else self.new_vertex()
            ids.append(self.new_edge(cur, nxt, x))
            cur = nxt
        return ids, cur

    def classes(self) -> list[int]:
        """Union-find representatives after identifying dotted arcs."""
        parent = list(range(self.vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.dotted:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return [find(x) for x in range(self.vertices)]

    def source(self) -> int:
        """The class with no incoming edge (the top-left corner for ``u^-1 v``)."""
        cls = self.classes()
        targets = {cls[e.dst] for e in self.edges}
        roots = sorted({cls[x] for x in range(self.vertices)} - targets)
        if len(roots) != 1:
            raise ValueError("diagram has no unique source vertex")
        return roots[0]

    def side_word(self, ids: Sequence[int]) -> Word:
        return tuple(self.edges[i].letter for i in ids)

    @property
    def is_closed(self) -> bool:
        return not self.boundary

    def apply(self, position: int, choice: Optional[int]) -> None:
        (e1, g1), (e2, g2) = self.boundary[position], self.boundary[position + 1]
        if not (g1 < 0 < g2):
            raise ValueError(f"no factor s^-1 t at position {position}")
        a = self.edges[e1].src
        b, c = self.edges[e1].dst, self.edges[e2].dst
        s, t = self.edges[e1].letter, self.edges[e2].letter
        if choice is None:
            if s != t:
                raise ValueError("the trivial tile needs s = t")
            self.dotted.append((b, c))
            self.boundary[position : position + 2] = []
            return
        vp, v = self.presentation.eligible(s, t)[choice]
        if not vp:
            d = b
        elif not v:
            d = c
        else:
            d = None
        left, d = self.chain(b, vp, d)
        right, _ = self.chain(c, v, d)
        self.faces.append(Face(a, (e1, *left), (e2, *right)))
        self.boundary[position : position + 2] = [(i, 1) for i in left] + [(i, -1) for i in reversed(right)]


def _initial(p: Presentation, w: Sequence[int]) -> Diagram:
    d = Diagram(p, tuple(w))
    cur = d.new_vertex()
    d.start = cur
    for x in w:
        nxt = d.new_vertex()
        if x > 0:
            d.boundary.append((d.new_edge(cur, nxt, x), 1))
        else:
            d.boundary.append((d.new_edge(nxt, cur, -x), -1))
        cur = nxt
    return d


def reversing_diagram(
    p: Presentation, w: Sequence[int], moves: Optional[Sequence[tuple[int, Optional[int]]]] = None,
    limits: Limits = DEFAULT_LIMITS,
) -> Diagram:
    """
    Diagram of a reversing of ``w``.  Without ``moves``, a reversing to the
    empty word is searched first, and the leftmost reversing is used when
    there is none.
    """
    w = tuple(w)
    if moves is None:
        out = search_empty(p, w, limits)
        if not out.reaches_empty:
            out = reverse_right(p, w, "leftmost", limits)
        if out.moves is None or out.status is Status.LIMIT_EXCEEDED:
            raise ValueError(f"cannot replay the reversing of {p.format(w)} ({out.status.value})")
        moves = out.moves
    d = _initial(p, w)
    for position, choice in moves:
        d.apply(position, choice)
    return d
