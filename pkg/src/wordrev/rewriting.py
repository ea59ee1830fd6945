"""
Plain relation rewriting on positive words: one-relation neighbours,
equivalence classes and combinatorial distance by breadth-first search.

Nothing here uses reversing, which makes it the reference oracle for the
reversing-based procedures.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

from .presentation import Presentation, Word

__all__ = ["canonical", "distance", "equivalence_class", "neighbors", "shortlex_key"]


def shortlex_key(w: Sequence[int]):
    return (len(w), tuple(w))


@lru_cache(maxsize=256)
def _sides(p: Presentation) -> dict[int, tuple[tuple[Word, Word], ...]]:
    by_first: dict[int, list[tuple[Word, Word]]] = {}
    for r in p.relations:
        by_first.setdefault(r.lhs[0], []).append((r.lhs, r.rhs))
        by_first.setdefault(r.rhs[0], []).append((r.rhs, r.lhs))
    return {k: tuple(v) for k, v in by_first.items()}


def neighbors(p: Presentation, w: Word) -> set[Word]:
    """Words obtained from ``w`` by one application of one relation."""
    table = _sides(p)
    out = set()
    n = len(w)
    for i, x in enumerate(w):
        for side, other in table.get(x, ()):
            k = len(side)
            if i + k <= n and w[i : i + k] == side:
                out.add(w[:i] + other + w[i + k :])
    return out


@lru_cache(maxsize=65536)
def _class(p: Presentation, w: Word, max_size: int) -> Optional[frozenset]:
    seen = {w}
    stack = [w]
    while stack:
        x = stack.pop()
        for y in neighbors(p, x):
            if y not in seen:
                seen.add(y)
                if len(seen) > max_size:
                    return None
                stack.append(y)
    return frozenset(seen)


def equivalence_class(p: Presentation, w: Sequence[int], max_size: int = 100_000) -> Optional[frozenset]:
    """All words equivalent to ``w``, or None when there are more than ``max_size``."""
    return _class(p, tuple(w), max_size)


def canonical(p: Presentation, w: Sequence[int], max_size: int = 100_000) -> Optional[Word]:
    """Shortlex-least word of the class of ``w``."""
    cls = equivalence_class(p, w, max_size)
    if cls is None:
        return None
    return min(cls, key=shortlex_key)


def distance(
    p: Presentation, u: Sequence[int], v: Sequence[int], max_words: int = 1_000_000,
    max_depth: Optional[int] = None,
) -> Optional[int]:
    """
    Least number of relation applications turning ``u`` into ``v``, by
    bidirectional breadth-first search; None if not found within the budget.
    Exhausting the component of ``u`` without meeting ``v`` also gives None.
    """
    u, v = tuple(u), tuple(v)
    if u == v:
        return 0
    dist_a, dist_b = {u: 0}, {v: 0}
    front_a, front_b = [u], [v]
    depth_a = depth_b = 0
    while front_a and front_b:
        if max_depth is not None and depth_a + depth_b >= max_depth:
            return None
        # expand the smaller side
        if len(front_a) <= len(front_b):
            front, dist, other, depth_a = front_a, dist_a, dist_b, depth_a + 1
            depth = depth_a
        else:
            front, dist, other, depth_b = front_b, dist_b, dist_a, depth_b + 1
            depth = depth_b
        nxt = []
        best = None
        for x in front:
            for y in neighbors(p, x):
                if y in dist:
                    continue
                dist[y] = depth
                if y in other:
                    total = depth + other[y]
                    best = total if best is None else min(best, total)
                nxt.append(y)
        if best is not None:
            return best
        if len(dist_a) + len(dist_b) > max_words:
            return None
        if front is front_a:
            front_a = nxt
        else:
            front_b = nxt
    return None
