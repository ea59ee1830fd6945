"""
Decision procedures built on reversing: cancellativity, monoid and group
word problems, lcm, gcd, fraction reduction, divisibility, mixed reversing
and orbits of the map Phi(u, v) = (v\\u, u\\v).

Every Yes/No verdict records the prerequisite verdicts it relied on.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Optional, Sequence

from . import rewriting
from .completeness import (
    CHECK_LIMITS,
    CompletenessVerdict,
    CompletionStatus,
    PreconditionError,
    check_completeness,
    complete_presentation,
)
from .presentation import (
    Presentation,
    SignedWord,
    Word,
    homogeneity_witness,
    inverse,
    is_complemented,
    is_positive_negative,
    mirror,
    mirror_signed,
)
from .reversing import (
    DEFAULT_LIMITS,
    Limits,
    Status,
    complement,
    numerator_denominator_right,
    reverse_all_right,
    reverse_left,
    reverse_right,
    search_empty,
)

__all__ = [
    "Answer",
    "Cycle",
    "OrbitReport",
    "Verdict",
    "bfs_equivalence_oracle",
    "complete_version",
    "completeness_of",
    "equivalent_group",
    "equivalent_monoid",
    "left_cancellative",
    "left_divides",
    "left_gcd",
    "mixed_neighbors",
    "mixed_reverse_to_empty",
    "phi",
    "phi_orbit",
    "reduce_fraction",
    "right_cancellative",
    "right_lcm",
]


class Answer(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass
class Verdict:
    status: Answer
    evidence: dict[str, Any] = field(default_factory=dict)
    prerequisites: dict[str, str] = field(default_factory=dict)

    @property
    def yes(self) -> bool:
        return self.status is Answer.YES

    @property
    def no(self) -> bool:
        return self.status is Answer.NO

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "evidence": self.evidence,
            "prerequisites": self.prerequisites,
        }


@lru_cache(maxsize=128)
def completeness_of(p: Presentation, limits: Limits = CHECK_LIMITS) -> CompletenessVerdict:
    """Cached ``check_completeness`` in automatic mode."""
    return check_completeness(p, "auto", limits)


def _completeness(p: Presentation, given: Optional[CompletenessVerdict]) -> CompletenessVerdict:
    return given if given is not None else completeness_of(p)


def _label(v: CompletenessVerdict) -> str:
    return v.status.value if v.method is None else f"{v.status.value} ({v.method})"


def bfs_equivalence_oracle(
    p: Presentation, u: Sequence[int], v: Sequence[int], limits: Limits = DEFAULT_LIMITS,
    max_depth: Optional[int] = None,
) -> Optional[int]:
    """Combinatorial distance between ``u`` and ``v`` by plain rewriting, None if not found."""
    return rewriting.distance(p, u, v, max_words=limits.max_frontier, max_depth=max_depth)


# -- cancellativity ----------------------------------------------------------


@lru_cache(maxsize=128)
def complete_version(p: Presentation) -> tuple[Optional[Presentation], str]:
    """
    A complete presentation of the same monoid: ``p`` itself when complete,
    else the output of completion when ``p`` is homogeneous and completion
    terminates.  The label describes how completeness was obtained.
    """
    comp = completeness_of(p)
    if comp.complete:
        return p, _label(comp)
    if homogeneity_witness(p) is None:
        return None, _label(comp)
    res = complete_presentation(p)
    if res.status is not CompletionStatus.COMPLETED or not completeness_of(res.final).complete:
        return None, f"{_label(comp)}, completion {res.status.value}"
    added = ", ".join(p.format(r.lhs) + " = " + p.format(r.rhs) for r in res.added)
    return res.final, f"Complete after adding {added}"


def left_cancellative(p: Presentation, limits: Limits = CHECK_LIMITS) -> Verdict:
    """
    On a complete presentation the monoid is left-cancellative iff every
    relation ``s v = s v'`` satisfies ``v^-1 v' => e``.  An incomplete
    homogeneous presentation is completed first (same monoid).
    """
    q, label = complete_version(p)
    prereq = {"completeness": label}
    if q is None:
        return Verdict(Answer.UNKNOWN, {"reason": "completeness not established"}, prereq)
    same_head = [r for r in q.relations if r.lhs[0] == r.rhs[0]]
    unknown = None
    for r in same_head:
        v, vp = r.lhs[1:], r.rhs[1:]
        out = search_empty(q, inverse(v) + vp, limits)
        if out.reaches_empty:
            continue
        if out.status is Status.STUCK:
            return Verdict(Answer.NO, {"relation": q.format(r.lhs) + " = " + q.format(r.rhs)}, prereq)
        unknown = unknown or r
    if unknown is not None:
        return Verdict(Answer.UNKNOWN, {"reason": "limit reached",
                                        "relation": q.format(unknown.lhs) + " = " + q.format(unknown.rhs)}, prereq)
    return Verdict(Answer.YES, {"checked_relations": len(same_head)}, prereq)


def right_cancellative(p: Presentation, limits: Limits = CHECK_LIMITS) -> Verdict:
    """Left-cancellativity of the mirror presentation."""
    out = left_cancellative(mirror(p), limits)
    out.prerequisites = {"left completeness": out.prerequisites["completeness"]}
    return out


# -- word problems -----------------------------------------------------------


def equivalent_monoid(
    p: Presentation, u: Sequence[int], v: Sequence[int], limits: Limits = DEFAULT_LIMITS,
    completeness: Optional[CompletenessVerdict] = None,
) -> Verdict:
    """
    Yes when some reversing of ``u^-1 v`` reaches the empty word (sound on
    any presentation); No when none does and the presentation is complete.
    """
    out = search_empty(p, inverse(u) + tuple(v), limits)
    evidence: dict[str, Any] = {"steps": out.steps, "explored": out.explored}
    if out.reaches_empty:
        return Verdict(Answer.YES, evidence)
    if out.status is Status.LIMIT_EXCEEDED:
        evidence["limit"] = out.limit
        return Verdict(Answer.UNKNOWN, evidence)
    comp = _completeness(p, completeness)
    prereq = {"completeness": _label(comp)}
    if out.stuck_pairs:
        evidence["stuck_pair"] = [p.name(x) for x in out.stuck_pairs[0]]
    if comp.complete:
        return Verdict(Answer.NO, evidence, prereq)
    evidence["reason"] = "no reversing to the empty word, but completeness not established"
    return Verdict(Answer.UNKNOWN, evidence, prereq)


def _group_prerequisites(p: Presentation, variant: str):
    """Complete presentations for both sides plus cancellativity, or the missing item."""
    q, label = complete_version(p)
    prereq = {"completeness": label}
    if q is None:
        return prereq, "completeness not established", None, None
    left = left_cancellative(p)
    prereq["left cancellative"] = left.status.value
    right = right_cancellative(p)
    prereq["right cancellative"] = right.status.value
    if not (left.yes and right.yes):
        return prereq, "cancellativity not established", None, None
    mq = None
    if variant == "right-left":
        mq, mlabel = complete_version(mirror(p))
        prereq["left completeness"] = mlabel
        if mq is None:
            return prereq, "left completeness not established", None, None
    return prereq, None, q, mq


def equivalent_group(
    p: Presentation, w: Sequence[int], variant: str = "right-right", limits: Limits = DEFAULT_LIMITS
) -> Verdict:
    """
    Does ``w`` represent 1 in the group?  Reverse ``w`` to ``v' v^-1``, then
    either right-reverse ``v^-1 v'`` (right-right) or left-reverse ``v' v^-1``
    (right-left) and test for the empty word.
    """
    if variant not in ("right-right", "right-left"):
        raise ValueError(f"unknown variant {variant!r}")
    w = tuple(w)
    if not w:
        return Verdict(Answer.YES, {"reason": "empty word"})
    prereq, missing, q, mq = _group_prerequisites(p, variant)
    if missing:
        return Verdict(Answer.UNKNOWN, {"reason": missing}, prereq)
    first = reverse_right(q, w, "leftmost" if is_complemented(q) else "exhaustive-first", limits)
    if first.status is not Status.TERMINAL or not is_positive_negative(first.terminal):
        reason = "limit reached" if first.status is Status.LIMIT_EXCEEDED else "no common right-multiple"
        return Verdict(Answer.UNKNOWN, {"reason": reason, "stage": "first reversing"}, prereq)
    num, den = first.numerator, first.denominator
    if variant == "right-right":
        second = search_empty(q, inverse(den) + num, limits)
    else:
        second = search_empty(mq, mirror_signed(num + inverse(den)), limits)
    evidence = {
        "numerator": p.format(num),
        "denominator": p.format(den),
        "steps": first.steps + second.steps,
    }
    if second.reaches_empty:
        return Verdict(Answer.YES, evidence, prereq)
    if second.status is Status.STUCK:
        return Verdict(Answer.NO, evidence, prereq)
    evidence["limit"] = second.limit
    return Verdict(Answer.UNKNOWN, evidence, prereq)


# -- lcm, gcd, fractions -----------------------------------------------------


def _require(p: Presentation, *, left: bool = False):
    """Check complemented + complete (and the mirror counterparts when ``left``)."""
    targets = [("", p)] + ([("left ", mirror(p))] if left else [])
    for tag, q in targets:
        if not is_complemented(q):
            raise PreconditionError(f"presentation is not {tag}complemented")
        comp = completeness_of(q)
        if not comp.complete:
            raise PreconditionError(f"{tag}completeness not established ({comp.status.value})")


def right_lcm(
    p: Presentation, u: Sequence[int], v: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> Optional[Word]:
    """``u (u\\v)``, a word for the right-lcm; None when there is no common right-multiple."""
    _require(p)
    c = complement(p, u, v, limits)
    if c is None:
        return None
    return tuple(u) + c[0]


def reduce_fraction(
    p: Presentation, w: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> Optional[tuple[Word, Word]]:
    """
    ``(D, N)`` with ``w = D^-1 N`` in the group, obtained by right-reversing
    ``w`` and left-reversing the result.  Both words depend only on the
    group element up to monoid equivalence.
    """
    _require(p, left=True)
    nd = numerator_denominator_right(p, w, limits)
    if nd is None:
        return None
    num, den = nd
    out = reverse_left(p, num + inverse(den), "leftmost", limits)
    if out.status is not Status.TERMINAL:
        return None
    return out.denominator, out.numerator


class HypothesisError(RuntimeError):
    pass


def left_gcd(
    p: Presentation, u: Sequence[int], v: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> Optional[Word]:
    """
    Triple reversing: ``u^-1 v => v' v^-1``, ``v' v^-1 <= w^-1 w'``,
    ``u w^-1 <= w*^-1 u*``; then ``w*`` is empty and ``u*`` is the gcd.
    """
    _require(p, left=True)
    u, v = tuple(u), tuple(v)
    fraction = reduce_fraction(p, inverse(u) + v, limits)
    if fraction is None:
        return None
    w, _ = fraction
    out = reverse_left(p, u + inverse(w), "leftmost", limits)
    if out.status is not Status.TERMINAL:
        return None
    if out.denominator:
        raise HypothesisError(f"nonempty obstruction {p.format(out.denominator)} in gcd computation")
    return out.numerator


def left_divides(
    p: Presentation, u: Sequence[int], w: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> Verdict:
    """
    Is ``u`` a left-divisor of ``w``?  Yes when some reversing of ``u^-1 w``
    ends with an empty denominator; No from reversing needs a complete
    presentation (possibly obtained by completion), otherwise the equivalence class of ``w`` is enumerated when it is finite.
    """
    u, w = tuple(u), tuple(w)
    q, label = complete_version(p)
    prereq = {"completeness": label}
    res = reverse_all_right(q or p, inverse(u) + w, limits)
    evidence: dict[str, Any] = {"method": "reversing", "explored": res.explored}
    for t in sorted(res.positive_negative, key=len):
        if all(x > 0 for x in t):
            evidence["quotient"] = p.format(t)
            return Verdict(Answer.YES, evidence, prereq)
    if q is not None and not res.truncated:
        return Verdict(Answer.NO, evidence, prereq)
    # fall back on the exact class of w, finite for homogeneous presentations
    if homogeneity_witness(p) is not None:
        cls = rewriting.equivalence_class(p, w, limits.max_frontier)
        ucls = rewriting.equivalence_class(p, u, limits.max_frontier)
        if cls is not None and ucls is not None:
            evidence = {"method": "class-enumeration", "class_size": len(cls)}
            for x in sorted(cls, key=rewriting.shortlex_key):
                if x[: len(u)] in ucls:
                    evidence["quotient"] = p.format(x[len(u):])
                    return Verdict(Answer.YES, evidence, prereq)
            return Verdict(Answer.NO, evidence, prereq)
    evidence["reason"] = "completeness not established and class enumeration unavailable"
    return Verdict(Answer.UNKNOWN, evidence, prereq)


# -- mixed reversing ---------------------------------------------------------


@lru_cache(maxsize=64)
def _mixed_tables(p: Presentation):
    sides = [(r.lhs, r.rhs) for r in p.relations] + [(r.rhs, r.lhs) for r in p.relations]
    return tuple(sides), mirror(p)


def mixed_neighbors(p: Presentation, w: SignedWord) -> set[SignedWord]:
    """Words reachable from ``w`` by one mixed-reversing step."""
    sides, mp = _mixed_tables(p)
    out = set()
    n = len(w)
    for i in range(n - 1):
        a, b = w[i], w[i + 1]
        if a < 0 < b:
            s, t = -a, b
            if s == t:
                out.add(w[:i] + w[i + 2:])
            for vp, v in p.eligible(s, t):
                out.add(w[:i] + vp + inverse(v) + w[i + 2:])
        elif b < 0 < a:
            # t s^-1 => v^-1 v' for a relation v' s = v t
            t, s = a, -b
            if s == t:
                out.add(w[:i] + w[i + 2:])
            for vp_rev, v_rev in mp.eligible(s, t):
                vp, v = vp_rev[::-1], v_rev[::-1]
                out.add(w[:i] + inverse(v) + vp + w[i + 2:])
    for lhs, rhs in sides:
        k = len(lhs)
        neg = inverse(lhs)
        neg_rhs = inverse(rhs)
        for i in range(n - k + 1):
            seg = w[i: i + k]
            if seg == lhs:
                out.add(w[:i] + rhs + w[i + k:])
            elif seg == neg:
                out.add(w[:i] + neg_rhs + w[i + k:])
    out.discard(w)
    return out


def mixed_reverse_to_empty(
    p: Presentation, w: Sequence[int], limits: Limits = DEFAULT_LIMITS
) -> Verdict:
    """
    Breadth-first search for a mixed-reversing path from ``w`` to the empty
    word.  No means the whole reachable set was explored.
    """
    start = tuple(w)
    parent: dict[SignedWord, Optional[SignedWord]] = {start: None}
    queue = deque([start])
    truncated = None
    while queue:
        x = queue.popleft()
        if not x:
            path = []
            while x is not None:
                path.append(x)
                x = parent[x]
            path.reverse()
            return Verdict(Answer.YES, {"steps": len(path) - 1, "path": [p.format(y) for y in path],
                                        "explored": len(parent)})
        for y in sorted(mixed_neighbors(p, x)):
            if y in parent:
                continue
            if len(y) > limits.max_word_length:
                truncated = truncated or "length"
                continue
            if len(parent) >= limits.max_frontier:
                truncated = truncated or "frontier"
                continue
            parent[y] = x
            queue.append(y)
    if truncated:
        return Verdict(Answer.UNKNOWN, {"limit": truncated, "explored": len(parent)})
    return Verdict(Answer.NO, {"explored": len(parent)})


# -- Phi orbits --------------------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    length: int
    entry: int


@dataclass
class OrbitReport:
    pairs: list[tuple[Word, Word]]
    status: str  # "Cycle", "LimitExceeded" or "Stuck"
    cycle: Optional[Cycle] = None
    compared: str = "word"

    def to_dict(self, p: Presentation) -> dict:
        out = {
            "status": self.status,
            "pairs": [[p.format(a), p.format(b)] for a, b in self.pairs],
            "compared": self.compared,
        }
        if self.cycle is not None:
            out["cycle"] = {"length": self.cycle.length, "entry": self.cycle.entry}
        return out


def phi(p: Presentation, u: Sequence[int], v: Sequence[int], limits: Limits = DEFAULT_LIMITS):
    """``(D_R(u^-1 v), N_R(u^-1 v))``, None when reversing fails."""
    nd = numerator_denominator_right(p, inverse(u) + tuple(v), limits)
    if nd is None:
        return None
    num, den = nd
    return den, num


def phi_orbit(
    p: Presentation, u: Sequence[int], v: Sequence[int], limits: Limits = DEFAULT_LIMITS,
    max_iterations: int = 64,
) -> OrbitReport:
    """
    Iterate Phi until a pair repeats.  Pairs are compared through canonical
    class representatives when the presentation is complete and classes are
    small, by word equality otherwise.
    """
    if not is_complemented(p):
        raise PreconditionError("Phi needs a complemented presentation")
    by_class = completeness_of(p).complete and homogeneity_witness(p) is not None

    def key(pair):
        if by_class:
            a = rewriting.canonical(p, pair[0], 10_000)
            b = rewriting.canonical(p, pair[1], 10_000)
            if a is not None and b is not None:
                return (a, b)
        return pair

    pair = (tuple(u), tuple(v))
    pairs = [pair]
    seen = {key(pair): 0}
    for _ in range(max_iterations):
        nxt = phi(p, *pair, limits=limits)
        if nxt is None:
            return OrbitReport(pairs, "Stuck", compared="class" if by_class else "word")
        k = key(nxt)
        if k in seen:
            entry = seen[k]
            return OrbitReport(pairs, "Cycle", Cycle(len(pairs) - entry, entry),
                               "class" if by_class else "word")
        seen[k] = len(pairs)
        pairs.append(nxt)
        pair = nxt
    return OrbitReport(pairs, "LimitExceeded", compared="class" if by_class else "word")
