"""
Garside structure: discovery of a Garside element, its divisor lattice,
and right-normal (greedy) decompositions computed by reversing.

Words are kept as canonical class representatives (shortlex least).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import rewriting
from .completeness import PreconditionError
from .decision import completeness_of, left_cancellative, left_gcd, right_cancellative
from .presentation import Presentation, Word, inverse, is_complemented, mirror
from .reversing import DEFAULT_LIMITS, Limits, Status, complement, reverse_right

__all__ = [
    "DivisorLattice",
    "NormalSequence",
    "NotGarsideError",
    "divisors",
    "find_garside_candidate",
    "is_normal",
    "left_divide_normal",
    "normal_form",
]

CLOSURE_CAP = 4096


class NotGarsideError(RuntimeError):
    pass


def _canon(p: Presentation, w: Sequence[int], limits: Limits) -> Word:
    c = rewriting.canonical(p, w, limits.max_frontier)
    if c is None:
        raise NotGarsideError(f"equivalence class of {p.format(w)} is too large")
    return c


def _check_structure(p: Presentation, cancellative: bool = True):
    if not is_complemented(p) or not is_complemented(mirror(p)):
        raise PreconditionError("presentation must be complemented on both sides")
    for q in (p, mirror(p)):
        if not completeness_of(q).complete:
            raise PreconditionError("presentation must be complete on both sides")
    if cancellative and not (left_cancellative(p).yes and right_cancellative(p).yes):
        raise PreconditionError("cancellativity not established")


def find_garside_candidate(
    p: Presentation, limits: Limits = DEFAULT_LIMITS, max_size: int = CLOSURE_CAP
) -> Optional[Word]:
    """
    Close the generators under complement and right-lcm (up to equivalence)
    and return the right-lcm of the whole closure; None when the closure
    exceeds ``max_size`` or two elements have no common multiple.
    """
    _check_structure(p)
    elements = {_canon(p, (s,), limits) for s in p.letters}
    queue = deque(sorted(elements))
    done: list[Word] = []
    while queue:
        x = queue.popleft()
        for y in [*done, x]:
            for a, b in ((x, y), (y, x)):
                c = complement(p, a, b, limits)
                if c is None:
                    return None
                for new in (_canon(p, c[0], limits), _canon(p, a + c[0], limits)):
                    if new not in elements:
                        elements.add(new)
                        if len(elements) > max_size:
                            return None
                        queue.append(new)
        done.append(x)
    delta: Word = ()
    for x in sorted(elements, key=rewriting.shortlex_key):
        c = complement(p, delta, x, limits)
        if c is None:
            return None
        delta = _canon(p, delta + c[0], limits)
    return delta


@dataclass
class DivisorLattice:
    presentation: Presentation
    delta: Word
    elements: list[Word]
    # cover relations (i, j, letter): elements[i] * letter = elements[j]
    edges: list[tuple[int, int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, w) -> bool:
        return tuple(w) in self._index

    @property
    def _index(self) -> dict[Word, int]:
        return {w: i for i, w in enumerate(self.elements)}

    def to_dot(self) -> str:
        from .export import lattice_to_dot

        return lattice_to_dot(self)

    def to_json(self) -> str:
        from .export import lattice_to_json

        return lattice_to_json(self)


def _divisor_walk(p: Presentation, delta: Word, limits: Limits, max_size: int):
    """Left-divisors of ``delta`` reached one letter at a time, with cover edges."""
    start: Word = ()
    found = {start: delta}  # divisor -> a quotient word
    order = [start]
    edges = []
    queue = deque([start])
    while queue:
        d = queue.popleft()
        q = found[d]
        for s in p.letters:
            c = complement(p, (s,), q, limits)
            if c is None or c[1]:
                continue
            nd = _canon(p, d + (s,), limits)
            if nd not in found:
                if len(found) >= max_size:
                    raise NotGarsideError("too many divisors")
                found[nd] = c[0]
                order.append(nd)
                queue.append(nd)
            edges.append((d, nd, s))
    return order, edges


def divisors(
    p: Presentation, delta: Sequence[int], limits: Limits = DEFAULT_LIMITS, max_size: int = CLOSURE_CAP,
    check_right: bool = True,
) -> DivisorLattice:
    """
    Left-divisors of ``delta`` with their covering relations.  With
    ``check_right`` the right-divisors (computed on the mirror presentation)
    must give the same set, otherwise NotGarsideError is raised.
    """
    _check_structure(p, cancellative=False)
    delta = _canon(p, delta, limits)
    order, edges = _divisor_walk(p, delta, limits, max_size)
    order.sort(key=rewriting.shortlex_key)
    index = {w: i for i, w in enumerate(order)}
    lattice = DivisorLattice(p, delta, order, sorted({(index[a], index[b], s) for a, b, s in edges}))
    if check_right:
        mp = mirror(p)
        right, _ = _divisor_walk(mp, _canon(mp, delta[::-1], limits), limits, max_size)
        right_set = {_canon(p, w[::-1], limits) for w in right}
        if right_set != set(order):
            raise NotGarsideError("left and right divisors of the candidate differ")
    return lattice


# -- normal forms ------------------------------------------------------------


@dataclass(frozen=True)
class NormalSequence:
    factors: tuple[Word, ...]
    delta: Word

    def format(self, p: Presentation) -> str:
        return "".join(f"[{p.format(f)}]" for f in self.factors)

    def word(self) -> Word:
        return tuple(x for f in self.factors for x in f)


def _right_divides(p: Presentation, d: Word, w: Word, limits: Limits) -> bool:
    c = complement(mirror(p), d[::-1], w[::-1], limits)
    return c is not None and not c[1]


def _max_right_divisor(p: Presentation, lattice: DivisorLattice, w: Word, limits: Limits) -> Word:
    best: Word = ()
    for d in lattice.elements:
        if len(d) > len(best) and _right_divides(p, d, w, limits):
            best = d
    return best


def is_normal(
    p: Presentation, delta: Sequence[int], seq: Sequence[Sequence[int]], limits: Limits = DEFAULT_LIMITS,
    lattice: Optional[DivisorLattice] = None,
) -> bool:
    """Each factor is the largest divisor of delta right-dividing the product so far."""
    seq = [tuple(f) for f in seq]
    if not seq:
        return False
    lattice = lattice or divisors(p, delta, limits)
    prefix: Word = ()
    for i, f in enumerate(seq):
        cf = _canon(p, f, limits)
        if cf not in lattice:
            return False
        if i == 0 and not cf:
            return False
        prefix += f
        if _canon(p, _max_right_divisor(p, lattice, prefix, limits), limits) != cf:
            return False
    return True


def normal_form(
    p: Presentation, delta: Sequence[int], w: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> NormalSequence:
    """
    Right-normal decomposition of ``w``: on the mirror presentation the head
    ``left_gcd(rev w, rev delta)`` is split off repeatedly; un-mirrored it is
    the last factor.
    """
    _check_structure(p, cancellative=False)
    delta = _canon(p, delta, limits)
    mp = mirror(p)
    rest = tuple(w)[::-1]
    mdelta = delta[::-1]
    tail: list[Word] = []
    while rest:
        head = left_gcd(mp, rest, mdelta, limits)
        if head is None or not head:
            raise NotGarsideError(f"no nontrivial head for {mp.format(rest)}")
        c = complement(mp, head, rest, limits)
        if c is None or c[1]:
            raise NotGarsideError("head does not divide the word")
        tail.append(_canon(p, head[::-1], limits))
        rest = c[0]
    if not tail:
        raise ValueError("the empty word has no normal decomposition")
    return NormalSequence(tuple(reversed(tail)), delta)


def left_divide_normal(
    p: Presentation, delta: Sequence[int], seq: NormalSequence | Sequence[Sequence[int]],
    y: Sequence[int], limits: Limits = DEFAULT_LIMITS,
) -> NormalSequence:
    """
    Normal form of ``y^-1 x`` from the normal form of ``x``: reverse
    ``v_{i-1}^-1 u_i`` to ``u'_i v_i^-1`` with ``v_0 = y``.  Factors that
    become empty, all at the front, are dropped.
    """
    factors = seq.factors if isinstance(seq, NormalSequence) else tuple(tuple(f) for f in seq)
    v = tuple(y)
    out: list[Word] = []
    for u in factors:
        res = reverse_right(p, inverse(v) + tuple(u), "leftmost", limits)
        if res.status is not Status.TERMINAL:
            raise ValueError(f"reversing {p.format(inverse(v) + tuple(u))} failed ({res.status.value})")
        out.append(_canon(p, res.numerator, limits))
        v = res.denominator
    if v:
        raise ValueError(f"{p.format(y)} does not left-divide the sequence (remainder {p.format(v)})")
    while out and not out[0]:
        out.pop(0)
    return NormalSequence(tuple(out), _canon(p, delta, limits))
