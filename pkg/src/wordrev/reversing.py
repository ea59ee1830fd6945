"""
Right- and left-reversing of signed words.

A right-reversing step replaces a factor ``s^-1 t`` by ``v' v^-1`` where
``s v' = t v`` is a relation, or deletes ``s^-1 s`` (the trivial tile).
Left-reversing is obtained through the mirror presentation.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .presentation import (
    Presentation,
    SignedWord,
    Word,
    inverse,
    is_complemented,
    is_positive_negative,
    mirror,
    mirror_signed,
    split_positive_negative,
)

__all__ = [
    "Cell",
    "GridError",
    "Limits",
    "NotComplementedError",
    "ReversalOutcome",
    "ReversingGrid",
    "Status",
    "build_grid",
    "complement",
    "factor_positions",
    "numerator_denominator_right",
    "reverse_all_right",
    "reverse_left",
    "reverse_right",
    "reverse_step_right",
    "reversing_complexity",
    "search_empty",
]


@dataclass(frozen=True)
class Limits:
    max_steps: int = 100_000
    max_word_length: int = 4096
    max_frontier: int = 1_000_000

    def __post_init__(self):
        if min(self.max_steps, self.max_word_length, self.max_frontier) <= 0:
            raise ValueError("limits must be positive")

    @classmethod
    def parse(cls, text: str) -> "Limits":
        """Read ``steps=N,len=L,frontier=F`` (any subset, any order)."""
        keys = {"steps": "max_steps", "len": "max_word_length", "frontier": "max_frontier"}
        values = {}
        for item in filter(None, (x.strip() for x in text.split(","))):
            k, sep, v = item.partition("=")
            if not sep or k.strip() not in keys:
                raise ValueError(f"bad limit {item!r}")
            values[keys[k.strip()]] = int(v)
        return cls(**values)


DEFAULT_LIMITS = Limits()


class Status(str, enum.Enum):
    TERMINAL = "Terminal"
    STUCK = "Stuck"
    LIMIT_EXCEEDED = "LimitExceeded"


class NotComplementedError(ValueError):
    pass


@dataclass
class ReversalOutcome:
    status: Status
    terminal: Optional[SignedWord] = None
    numerator: Optional[Word] = None
    denominator: Optional[Word] = None
    steps: int = 0
    trace: Optional[list[SignedWord]] = None
    total_steps: int = 0
    stuck_pairs: tuple[tuple[int, int], ...] = ()
    limit: Optional[str] = None
    explored: int = 1
    # choice sequence (position, relation index or None) leading to ``terminal``
    moves: Optional[list[tuple[int, Optional[int]]]] = None

    @property
    def reaches_empty(self) -> bool:
        return self.status is Status.TERMINAL and self.terminal == ()


def factor_positions(w: Sequence[int]) -> list[int]:
    """Indices ``i`` such that ``w[i] w[i+1]`` has the shape ``s^-1 t``."""
    return [i for i in range(len(w) - 1) if w[i] < 0 and w[i + 1] > 0]


def _choices(p: Presentation, s: int, t: int) -> list[Optional[int]]:
    options: list[Optional[int]] = [None] if s == t else []
    options.extend(range(len(p.eligible(s, t))))
    return options


def _apply(p: Presentation, w: Sequence[int], i: int, choice: Optional[int]) -> tuple[int, ...]:
    s, t = -w[i], w[i + 1]
    if choice is None:
        middle: tuple[int, ...] = ()
    else:
        vp, v = p.eligible(s, t)[choice]
        middle = tuple(vp) + inverse(v)
    return tuple(w[:i]) + middle + tuple(w[i + 2 :])


def reverse_step_right(
    p: Presentation, w: Sequence[int], position: int, choice: Optional[int] = None
) -> SignedWord:
    """
    Apply one right-reversing step at ``position``.

    ``choice`` indexes ``p.eligible(s, t)``; ``None`` selects the trivial tile
    and requires ``s == t``.
    """
    if not (0 <= position < len(w) - 1 and w[position] < 0 and w[position + 1] > 0):
        raise ValueError(f"no factor s^-1 t at position {position}")
    s, t = -w[position], w[position + 1]
    if choice is None:
        if s != t:
            raise ValueError("the trivial tile needs s = t")
    elif not 0 <= choice < len(p.eligible(s, t)):
        raise ValueError(f"relation {choice} is not eligible for ({p.name(s)}, {p.name(t)})")
    return _apply(p, w, position, choice)


def _finish(out: ReversalOutcome, word: SignedWord) -> ReversalOutcome:
    out.terminal = word
    if is_positive_negative(word):
        out.numerator, out.denominator = split_positive_negative(word)
    return out


def _stuck_pairs(p: Presentation, w: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return tuple((-w[i], w[i + 1]) for i in factor_positions(w))


def _leftmost(p: Presentation, w: SignedWord, limits: Limits, trace: bool) -> ReversalOutcome:
    word = list(w)
    steps = 0
    history = [tuple(word)] if trace else None
    moves = []
    i = 0
    while i < len(word) - 1:
        a, b = word[i], word[i + 1]
        if not (a < 0 < b):
            i += 1
            continue
        s, t = -a, b
        if s == t:
            choice = None
            word[i : i + 2] = []
        else:
            rels = p.eligible(s, t)
            if not rels:
                i += 1  # stuck factor: it can never disappear, move on
                continue
            choice = 0
            vp, v = rels[0]
            word[i : i + 2] = list(vp) + [-x for x in reversed(v)]
            steps += 1
        moves.append((i, choice))
        if history is not None:
            history.append(tuple(word))
        if steps > limits.max_steps:
            return ReversalOutcome(Status.LIMIT_EXCEEDED, steps=steps, trace=history,
                                   limit="steps", terminal=tuple(word), total_steps=len(moves))
        if len(word) > limits.max_word_length:
            return ReversalOutcome(Status.LIMIT_EXCEEDED, steps=steps, trace=history,
                                   limit="length", terminal=tuple(word), total_steps=len(moves))
        i = max(i - 1, 0)
    final = tuple(word)
    stuck = _stuck_pairs(p, final)
    status = Status.STUCK if stuck else Status.TERMINAL
    out = ReversalOutcome(status, steps=steps, trace=history, stuck_pairs=stuck, moves=moves,
                          total_steps=len(moves))
    return _finish(out, final)


def _next_factor(p: Presentation, w: Sequence[int]) -> Optional[int]:
    for i in range(len(w) - 1):
        if w[i] < 0 < w[i + 1]:
            s, t = -w[i], w[i + 1]
            if s == t or p.eligible(s, t):
                return i
    return None


def _has_stuck_factor(p: Presentation, w: Sequence[int]) -> bool:
    for i in range(len(w) - 1):
        if w[i] < 0 < w[i + 1] and w[i] != -w[i + 1] and not p.eligible(-w[i], w[i + 1]):
            return True
    return False


def _exhaustive(
    p: Presentation, w: SignedWord, limits: Limits, trace: bool, goal: str = "posneg"
) -> ReversalOutcome:
    """
    Breadth-first search branching on the relation choices of the leftmost
    reversible factor.  Steps on disjoint factors commute, so this reaches
    the same terminal words as branching on every factor.

    ``goal='empty'`` looks for the empty word only and prunes words holding
    a stuck factor, which can never disappear.
    """
    start = tuple(w)
    parent: dict[SignedWord, Optional[tuple[SignedWord, int, Optional[int]]]] = {start: None}
    depth = {start: 0}
    queue = deque([start])
    first_stuck: Optional[SignedWord] = None
    truncated: Optional[str] = None
    while queue:
        word = queue.popleft()
        if goal == "empty":
            if not word:
                return _rebuild(p, word, parent, depth, trace, len(parent))
            if _has_stuck_factor(p, word):
                if first_stuck is None:
                    first_stuck = word
                continue
        i = _next_factor(p, word)
        if i is None:
            if goal == "posneg" and is_positive_negative(word):
                return _rebuild(p, word, parent, depth, trace, len(parent))
            if first_stuck is None:
                first_stuck = word
            continue
        s, t = -word[i], word[i + 1]
        for choice in _choices(p, s, t):
            nxt = _apply(p, word, i, choice)
            if nxt in parent:
                continue
            d = depth[word] + (choice is not None)
            if d > limits.max_steps:
                truncated = truncated or "steps"
                continue
            if len(nxt) > limits.max_word_length:
                truncated = truncated or "length"
                continue
            if len(parent) >= limits.max_frontier:
                truncated = truncated or "frontier"
                continue
            parent[nxt] = (word, i, choice)
            depth[nxt] = d
            queue.append(nxt)
    if truncated:
        return ReversalOutcome(Status.LIMIT_EXCEEDED, limit=truncated, explored=len(parent),
                               terminal=first_stuck)
    out = _rebuild(p, first_stuck, parent, depth, trace, len(parent))
    out.status = Status.STUCK
    out.stuck_pairs = _stuck_pairs(p, first_stuck)
    return out


def search_empty(
    p: Presentation, w: Sequence[int], limits: Limits = DEFAULT_LIMITS, trace: bool = False
) -> ReversalOutcome:
    """
    Look for a reversing sequence from ``w`` to the empty word.

    ``Terminal`` (with ``terminal == ()``) when one exists, ``Stuck`` when
    every sequence has been explored without reaching it, ``LimitExceeded``
    when the search was cut short.
    """
    if is_complemented(p):
        out = _leftmost(p, tuple(w), limits, trace)
        if out.status is Status.TERMINAL and out.terminal:
            out.status = Status.STUCK
        return out
    return _exhaustive(p, tuple(w), limits, trace, goal="empty")


def _rebuild(p, word, parent, depth, trace, explored) -> ReversalOutcome:
    path = []
    moves = []
    cur = word
    while cur is not None:
        path.append(cur)
        link = parent[cur]
        if link is None:
            break
        moves.append((link[1], link[2]))
        cur = link[0]
    path.reverse()
    moves.reverse()
    out = ReversalOutcome(Status.TERMINAL, steps=depth[word], trace=path if trace else None,
                          explored=explored, moves=moves, total_steps=len(moves))
    return _finish(out, word)


def reverse_right(
    p: Presentation,
    w: Sequence[int],
    strategy: str = "leftmost",
    limits: Limits = DEFAULT_LIMITS,
    trace: bool = False,
) -> ReversalOutcome:
    """
    Right-reverse ``w``.

    ``leftmost`` always rewrites the leftmost reversible factor with the first
    eligible relation (trivial tile first); stuck factors are left in place.
    ``exhaustive-first`` returns the first positive-negative terminal word of
    a breadth-first search, ``Stuck`` when no branch produces one.
    """
    if strategy == "leftmost":
        return _leftmost(p, tuple(w), limits, trace)
    if strategy in ("exhaustive-first", "exhaustive"):
        return _exhaustive(p, tuple(w), limits, trace)
    raise ValueError(f"unknown strategy {strategy!r}")


def _unmirror(out: ReversalOutcome) -> ReversalOutcome:
    if out.terminal is not None:
        out.terminal = mirror_signed(out.terminal)
    if out.trace is not None:
        out.trace = [mirror_signed(x) for x in out.trace]
    if out.numerator is not None:
        # mirror of v' v^-1 is v^-1 v' read backwards: denominator first
        num, den = out.numerator[::-1], out.denominator[::-1]
        out.numerator, out.denominator = num, den
    out.stuck_pairs = tuple((t, s) for s, t in out.stuck_pairs)
    out.moves = None
    return out


def reverse_left(
    p: Presentation,
    w: Sequence[int],
    strategy: str = "leftmost",
    limits: Limits = DEFAULT_LIMITS,
    trace: bool = False,
) -> ReversalOutcome:
    """
    Left-reverse ``w``: factors ``t s^-1`` become ``v^-1 v'`` for ``v t = v' s``.

    On a negative-positive result ``v^-1 v'``, ``denominator`` holds ``v`` and
    ``numerator`` holds ``v'``.
    """
    out = reverse_right(mirror(p), mirror_signed(w), strategy, limits, trace)
    return _unmirror(out)


def _require_complemented(p: Presentation):
    if not is_complemented(p):
        raise NotComplementedError("presentation is not complemented")


def complement(
    p: Presentation, u: Sequence[int], v: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> Optional[tuple[Word, Word]]:
    """``(u\\v, v\\u)``, or None when reversing ``u^-1 v`` gets stuck or hits a limit."""
    _require_complemented(p)
    out = _leftmost(p, inverse(u) + tuple(v), limits, False)
    if out.status is not Status.TERMINAL:
        return None
    return out.numerator, out.denominator


def numerator_denominator_right(
    p: Presentation, w: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> Optional[tuple[Word, Word]]:
    """``(N_R(w), D_R(w))`` with ``w => N D^-1``."""
    _require_complemented(p)
    out = _leftmost(p, tuple(w), limits, False)
    if out.status is not Status.TERMINAL:
        return None
    return out.numerator, out.denominator


@dataclass
class ReverseAllResult:
    terminals: set
    truncated: bool
    explored: int

    @property
    def positive_negative(self) -> set:
        return {w for w in self.terminals if is_positive_negative(w)}


def reverse_all_right(
    p: Presentation, w: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> ReverseAllResult:
    """
    Every terminal word reachable from ``w`` (positive-negative or stuck).

    Only the leftmost reversible factor is branched on: steps on disjoint
    factors commute, so the terminal set is the same as when every factor
    and every eligible relation is tried.
    """
    start = tuple(w)
    seen = {start}
    queue = deque([start])
    terminals = set()
    truncated = False
    while queue:
        word = queue.popleft()
        i = _next_factor(p, word)
        if i is None:
            terminals.add(word)
            continue
        s, t = -word[i], word[i + 1]
        for choice in _choices(p, s, t):
            nxt = _apply(p, word, i, choice)
            if nxt in seen:
                continue
            if len(nxt) > limits.max_word_length or len(seen) >= limits.max_frontier:
                truncated = True
                continue
            seen.add(nxt)
            queue.append(nxt)
    return ReverseAllResult(terminals, truncated, len(seen))


# -- grids ---------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    row: int
    col: int
    left: Word
    top: Word
    bottom: Word
    right: Word
    steps: int


class GridError(RuntimeError):
    def __init__(self, message, row=None, col=None, pair=None, status=Status.STUCK):
        super().__init__(message)
        self.row, self.col, self.pair, self.status = row, col, pair, status


@dataclass
class ReversingGrid:
    """
    Row-major grid for ``u^-1 v``: ``u`` runs down the left side and ``v``
    along the top.  ``cells[i][j]`` stores the edge words around one cell.
    """

    presentation: Presentation
    u: Word
    v: Word
    cells: list[list[Cell]] = field(default_factory=list)

    @property
    def rows(self) -> int:
        return len(self.u)

    @property
    def cols(self) -> int:
        return len(self.v)

    @property
    def bottom(self) -> Word:
        if not self.u:
            return self.v
        return tuple(x for c in self.cells[-1] for x in c.bottom)

    @property
    def right(self) -> Word:
        if not self.v:
            return self.u
        return tuple(x for row in self.cells for x in row[-1].right)

    @property
    def steps(self) -> int:
        return sum(c.steps for row in self.cells for c in row)


def build_grid(
    p: Presentation, u: Sequence[int], v: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> ReversingGrid:
    _require_complemented(p)
    u, v = tuple(u), tuple(v)
    grid = ReversingGrid(p, u, v)
    tops: list[Word] = [(x,) for x in v]
    budget = limits.max_steps
    for i, s in enumerate(u):
        left: Word = (s,)
        row = []
        for j in range(len(v)):
            top = tops[j]
            out = _leftmost(p, inverse(left) + top, Limits(budget, limits.max_word_length, limits.max_frontier), False)
            if out.status is Status.LIMIT_EXCEEDED:
                raise GridError(f"limit exceeded at cell ({i}, {j})", i, j, status=Status.LIMIT_EXCEEDED)
            if out.status is Status.STUCK:
                a, b = out.stuck_pairs[0]
                raise GridError(
                    f"stuck at cell ({i}, {j}) on pair ({p.name(a)}, {p.name(b)})", i, j, (a, b)
                )
            budget -= out.steps
            if budget < 0:
                raise GridError("limit exceeded", i, j, status=Status.LIMIT_EXCEEDED)
            row.append(Cell(i, j, left, top, out.numerator, out.denominator, out.steps))
            tops[j] = out.numerator
            left = out.denominator
        grid.cells.append(row)
    return grid


def reversing_complexity(
    p: Presentation, u: Sequence[int], v: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> Optional[int]:
    """Number of nontrivial steps reversing ``u^-1 v``; None if stuck or limited."""
    _require_complemented(p)
    out = _leftmost(p, inverse(u) + tuple(v), limits, False)
    if out.status is not Status.TERMINAL:
        return None
    return out.steps
