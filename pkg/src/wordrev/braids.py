"""
Braid tools: Artin presentations, crossing names (p, q, a), named
reversing diagrams and the sparse-family optimality certificate.

A name (p, q, a) is the a-th crossing of the strands that start at
positions p < q.  In a van Kampen diagram every face reverses the
sequence of names along its boundary; a sparse family whose names meet
every face exactly once certifies that the diagram is optimal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import rewriting
from .diagram import Diagram, reversing_diagram
from .presentation import Presentation, inverse, parse_presentation
from .reversing import DEFAULT_LIMITS, Limits, ReversingGrid, search_empty

__all__ = [
    "Name",
    "NamedGrid",
    "NameLawError",
    "OptimalityVerdict",
    "assign_names",
    "braid_presentation",
    "check_optimality",
    "combinatorial_distance",
    "is_sparse",
    "name_grid",
    "named_diagram",
]


def braid_presentation(n: int) -> Presentation:
    """Artin's presentation of the n-strand braid monoid on s1 ... s(n-1)."""
    if n < 2:
        raise ValueError("braids need at least 2 strands")
    lines = ["gens: " + " ".join(f"s{i}" for i in range(1, n))]
    for i in range(1, n):
        for j in range(i + 1, n):
            if j == i + 1:
                lines.append(f"rel: s{i} s{j} s{i} = s{j} s{i} s{j}")
            else:
                lines.append(f"rel: s{i} s{j} = s{j} s{i}")
    return parse_presentation("\n".join(lines) + "\n")


@dataclass(frozen=True, order=True)
class Name:
    p: int
    q: int
    a: int

    def __post_init__(self):
        if not (1 <= self.p < self.q) or self.a < 1:
            raise ValueError(f"invalid name {tuple(self)}")

    def __iter__(self):
        return iter((self.p, self.q, self.a))

    @property
    def pair(self) -> tuple[int, int]:
        return self.p, self.q

    def __str__(self):
        return f"[{self.p},{self.q},{self.a}]"


@dataclass(frozen=True)
class _Strands:
    """Strand permutation and crossing counts after some braid word."""

    at: tuple[int, ...]  # at[i] = initial position of the strand now at position i+1
    crossings: tuple[tuple[tuple[int, int], int], ...] = ()

    @classmethod
    def identity(cls, n: int) -> "_Strands":
        return cls(tuple(range(1, n + 1)))

    def name(self, letter: int) -> Name:
        x, y = self.at[letter - 1], self.at[letter]
        pair = (min(x, y), max(x, y))
        return Name(*pair, dict(self.crossings).get(pair, 0) + 1)

    def cross(self, letter: int) -> "_Strands":
        nm = self.name(letter)
        at = list(self.at)
        at[letter - 1], at[letter] = at[letter], at[letter - 1]
        counts = dict(self.crossings)
        counts[nm.pair] = nm.a
        return _Strands(tuple(at), tuple(sorted(counts.items())))


def assign_names(n: int, w: Sequence[int]) -> list[Name]:
    """Name of every letter of the positive braid word ``w`` (letters are 1 ... n-1)."""
    state = _Strands.identity(n)
    out = []
    for x in w:
        if not 1 <= x < n:
            raise ValueError(f"letter {x} is not a generator of B{n}")
        out.append(state.name(x))
        state = state.cross(x)
    return out


class NameLawError(RuntimeError):
    pass


@dataclass
class NamedGrid:
    n: int
    diagram: Diagram
    names: list[Name]  # one per edge of the diagram
    # per face: "hexagon" or "square" and the names along its two sides
    kinds: list[str] = field(default_factory=list)
    face_names: list[tuple[tuple[Name, ...], tuple[Name, ...]]] = field(default_factory=list)

    @property
    def faces(self) -> int:
        return len(self.diagram.faces)

    def names_on(self, face: int) -> frozenset:
        left, right = self.face_names[face]
        return frozenset(left) | frozenset(right)

    def boundary_names(self, word_edges: Sequence[int]) -> list[Name]:
        return [self.names[i] for i in word_edges]


def _check_face(kind: str, left: tuple[Name, ...], right: tuple[Name, ...]) -> None:
    if left != tuple(reversed(right)):
        raise NameLawError(f"{kind} sides {left} and {right} are not reversed")
    pairs = [nm.pair for nm in left]
    if kind == "hexagon":
        strands = set(itertools.chain.from_iterable(pairs))
        if len(set(pairs)) != 3 or len(strands) != 3:
            raise NameLawError(f"hexagon names {left} do not share a 3-strand set")
    elif set(pairs[0]) & set(pairs[1]):
        raise NameLawError(f"square names {left} have overlapping strand pairs")


def named_diagram(n: int, d: Diagram) -> NamedGrid:
    """Name every edge from the source vertex and check the face-name law."""
    cls = d.classes()
    src = d.source()
    states: dict[int, _Strands] = {src: _Strands.identity(n)}
    out_edges: dict[int, list[int]] = {}
    for i, e in enumerate(d.edges):
        out_edges.setdefault(cls[e.src], []).append(i)
    stack = [src]
    names: list[Optional[Name]] = [None] * len(d.edges)
    while stack:
        v = stack.pop()
        st = states[v]
        for i in out_edges.get(v, ()):
            e = d.edges[i]
            names[i] = st.name(e.letter)
            nxt = st.cross(e.letter)
            w = cls[e.dst]
            if w in states:
                if states[w] != nxt:
                    raise NameLawError("edge names depend on the path")
            else:
                states[w] = nxt
                stack.append(w)
    if any(x is None for x in names):
        raise NameLawError("some edges are not reachable from the source")
    grid = NamedGrid(n, d, names)  # type: ignore[arg-type]
    for f in d.faces:
        left = tuple(names[i] for i in f.left)
        right = tuple(names[i] for i in f.right)
        kind = "hexagon" if len(f.left) == 3 else "square"
        _check_face(kind, left, right)
        grid.kinds.append(kind)
        grid.face_names.append((left, right))
    return grid


def name_grid(n: int, grid: ReversingGrid, limits: Limits = DEFAULT_LIMITS) -> NamedGrid:
    """Named one-letter diagram of the reversing of ``u^-1 v`` behind ``grid``."""
    d = reversing_diagram(grid.presentation, inverse(grid.u) + grid.v, limits=limits)
    return named_diagram(n, d)


# -- optimality --------------------------------------------------------------


def is_sparse(names: Iterable[Name]) -> bool:
    """No (p, r, .) together with some (p, q, .) and (q, r, .)."""
    pairs = {nm.pair for nm in names}
    for (p, q) in pairs:
        for (q2, r) in pairs:
            if q2 == q and (p, r) in pairs:
                return False
    return True


@dataclass
class OptimalityVerdict:
    status: str  # "Optimal" or "Inconclusive"
    family: Optional[tuple[tuple[int, int], ...]] = None
    distance: Optional[int] = None
    faces: int = 0
    inversions: Optional[int] = None
    reason: Optional[str] = None

    @property
    def optimal(self) -> bool:
        return self.status == "Optimal"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "family": [list(x) for x in self.family] if self.family is not None else None,
            "distance": self.distance,
            "faces": self.faces,
            "inversions": self.inversions,
            "reason": self.reason,
        }


def _inversions(first: Sequence[Name], second: Sequence[Name]) -> int:
    rank = {nm: i for i, nm in enumerate(second)}
    seq = [rank[nm] for nm in first]
    return sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])


def _certify(grid: NamedGrid, pairs: frozenset, u_names, v_names) -> tuple[bool, str, Optional[int]]:
    family = {nm for nm in grid.names if nm.pair in pairs}
    if not is_sparse(family):
        return False, "family is not sparse", None
    meets: dict[tuple[Name, Name], int] = {}
    for k in range(grid.faces):
        inside = sorted(grid.names_on(k) & family)
        if len(inside) != 2:
            return False, f"face {k} holds {len(inside)} family names", None
        key = (inside[0], inside[1])
        meets[key] = meets.get(key, 0) + 1
        if meets[key] > 1:
            return False, f"separatrices {inside[0]} and {inside[1]} cross twice", None
    inv = _inversions([x for x in u_names if x in family], [x for x in v_names if x in family])
    if inv != grid.faces:
        return False, "inversion count differs from the face count", inv
    return True, "", inv


def check_optimality(
    n: int, u: Sequence[int], v: Sequence[int],
    family: Optional[Iterable[tuple[int, int]]] = None, limits: Limits = DEFAULT_LIMITS,
) -> OptimalityVerdict:
    """
    Build the reversing diagram of ``u^-1 v`` and look for a certificate
    that it has the least possible number of faces.  ``family`` lists
    strand pairs (p, q) standing for all names (p, q, a); when omitted,
    every set of strand pairs is tried.
    """
    p = braid_presentation(n)
    u, v = tuple(u), tuple(v)
    out = search_empty(p, inverse(u) + v, limits)
    if not out.reaches_empty:
        raise ValueError(f"{p.format(u)} and {p.format(v)} are not equivalent")
    grid = named_diagram(n, reversing_diagram(p, inverse(u) + v, out.moves))
    faces = grid.faces
    u_names, v_names = assign_names(n, u), assign_names(n, v)
    if faces == 0:
        return OptimalityVerdict("Optimal", (), 0, 0, 0)
    if family is not None:
        candidates = [frozenset(tuple(x) for x in family)]
    else:
        all_pairs = list(itertools.combinations(range(1, n + 1), 2))
        candidates = [
            frozenset(c) for k in range(1, len(all_pairs) + 1) for c in itertools.combinations(all_pairs, k)
        ]
    reason = "no candidate family"
    for pairs in candidates:
        ok, why, inv = _certify(grid, pairs, u_names, v_names)
        if ok:
            return OptimalityVerdict("Optimal", tuple(sorted(pairs)), faces, faces, inv)
        reason = why
    if family is None:
        reason = "no family of strand pairs gives a certificate"
    return OptimalityVerdict("Inconclusive", tuple(sorted(candidates[0])) if family is not None else None,
                             None, faces, None, reason)


def combinatorial_distance(
    n: int, u: Sequence[int], v: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> Optional[int]:
    """Least number of braid relations turning ``u`` into ``v`` (breadth-first search)."""
    return rewriting.distance(braid_presentation(n), u, v, max_words=limits.max_frontier)
