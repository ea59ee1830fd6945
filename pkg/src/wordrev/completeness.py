"""
Cube condition, completeness verdicts, closure under complement, and the
completion procedure that adds redundant relations until the cube condition
holds on letters.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .presentation import (
    Presentation,
    Relation,
    Word,
    homogeneity_witness,
    inverse,
    is_complemented,
)
from .reversing import (
    Limits,
    NotComplementedError,
    Status,
    _leftmost,
    reverse_all_right,
    search_empty,
)

__all__ = [
    "CompletenessVerdict",
    "CompletionResult",
    "CubeReport",
    "CubeStatus",
    "PreconditionError",
    "check_completeness",
    "closure_under_complement",
    "complete_presentation",
    "cube_condition",
    "cube_condition_complemented",
]


class PreconditionError(ValueError):
    pass


# Cube checks branch over every reversing sequence; on presentations where
# reversing does not terminate the full default budget costs tens of seconds
# per triple, so checks use a tighter one unless told otherwise.
CHECK_LIMITS = Limits(max_steps=10_000, max_word_length=256, max_frontier=20_000)


class CubeStatus(str, enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    VACUOUS = "VacuouslyHolds"
    UNKNOWN = "Unknown"

    @property
    def ok(self) -> bool:
        return self in (CubeStatus.HOLDS, CubeStatus.VACUOUS)


@dataclass
class CubeReport:
    triple: tuple[Word, Word, Word]
    status: CubeStatus
    # positive-negative results (v', v) of reversing u^-1 u'' u''^-1 u'
    results: list[tuple[Word, Word]] = field(default_factory=list)
    # on Fails: the offending (v', v) and the residual (u v')^-1 (u' v)
    witness: Optional[tuple[Word, Word]] = None
    residual: Optional[tuple[int, ...]] = None
    residual_terminal: Optional[tuple[int, ...]] = None
    # complemented form: the permutation and the nonempty complement found
    permutation: Optional[tuple[Word, Word, Word]] = None
    limit: Optional[str] = None

    def new_relation(self) -> Relation:
        """The relation ``u v' = u' v`` that repairs a failure."""
        if self.witness is None:
            raise ValueError("no failure witness")
        u, u1, _ = self.triple
        vp, v = self.witness
        return Relation(tuple(u) + vp, tuple(u1) + v)


def _sorted_results(words: Iterable) -> list:
    return sorted(words, key=lambda w: (len(w), w))


def cube_condition(
    p: Presentation, u: Sequence[int], u1: Sequence[int], u2: Sequence[int],
    limits: Limits = CHECK_LIMITS,
) -> CubeReport:
    """Check the cube condition for the triple ``(u, u', u'')``."""
    u, u1, u2 = tuple(u), tuple(u1), tuple(u2)
    report = CubeReport((u, u1, u2), CubeStatus.HOLDS)
    start = inverse(u) + u2 + inverse(u2) + u1
    reached = reverse_all_right(p, start, limits)
    pairs = []
    for w in _sorted_results(reached.positive_negative):
        k = 0
        while k < len(w) and w[k] > 0:
            k += 1
        pairs.append((w[:k], inverse(w[k:])))
    report.results = pairs
    unknown = "frontier" if reached.truncated else None
    for vp, v in pairs:
        residual = inverse(u + vp) + u1 + v
        out = search_empty(p, residual, limits)
        if out.status is Status.TERMINAL:
            continue
        if out.status is Status.STUCK:
            report.status = CubeStatus.FAILS
            report.witness = (vp, v)
            report.residual = residual
            report.residual_terminal = out.terminal
            return report
        unknown = unknown or out.limit or "limit"
    if unknown:
        report.status = CubeStatus.UNKNOWN
        report.limit = unknown
    elif not pairs:
        report.status = CubeStatus.VACUOUS
    return report


def _compl(p: Presentation, x: Word, y: Word, limits: Limits):
    """Return (status, x\\y).  status is True, None (undefined) or 'limit'."""
    out = _leftmost(p, inverse(x) + y, limits, False)
    if out.status is Status.TERMINAL:
        return True, out.numerator
    if out.status is Status.STUCK:
        return None, None
    return "limit", None


def _cube_expression(p, x, y, z, limits):
    """((x\\y)\\(x\\z)) \\ ((y\\x)\\(y\\z)); returns (state, word)."""
    parts = []
    for a, b in ((x, y), (x, z), (y, x), (y, z)):
        ok, w = _compl(p, a, b, limits)
        if ok is not True:
            return ok, None
        parts.append(w)
    ok, left = _compl(p, parts[0], parts[1], limits)
    if ok is not True:
        return ok, None
    ok, right = _compl(p, parts[2], parts[3], limits)
    if ok is not True:
        return ok, None
    return _compl(p, left, right, limits)


def cube_condition_complemented(
    p: Presentation, u: Sequence[int], u1: Sequence[int], u2: Sequence[int],
    limits: Limits = CHECK_LIMITS,
) -> CubeReport:
    """
    Complement form of the cube condition on ``{u, u', u''}``: the iterated
    complement must be empty or undefined for every ordering of the triple.
    """
    if not is_complemented(p):
        raise NotComplementedError("presentation is not complemented")
    triple = (tuple(u), tuple(u1), tuple(u2))
    report = CubeReport(triple, CubeStatus.HOLDS)
    seen = set()
    for perm in itertools.permutations(triple):
        if perm in seen:
            continue
        seen.add(perm)
        state, word = _cube_expression(p, *perm, limits)
        if state == "limit":
            report.status = CubeStatus.UNKNOWN
            report.limit = "steps"
        elif state is True and word:
            report.status = CubeStatus.FAILS
            report.permutation = perm
            report.residual = word
            return report
    return report


# -- closure ---------------------------------------------------------------


def _split(w):
    k = 0
    while k < len(w) and w[k] > 0:
        k += 1
    return w[:k], inverse(w[k:])


def closure_under_complement(
    p: Presentation,
    seed: Optional[Iterable[Sequence[int]]] = None,
    limits: Limits = CHECK_LIMITS,
    max_size: int = 4096,
) -> Optional[frozenset]:
    """
    A finite set of words containing the letters and ``seed`` such that for
    all ``u, u'`` in the set, whenever ``u^-1 u'`` reverses to some
    positive-negative word, it reverses to some ``v' v^-1`` with ``v, v'`` in
    the set.  For a complemented presentation this is exactly the least set
    closed under ``(u, v) -> u\\v``.  Otherwise, when no result already lies
    in the set, the one adding the fewest and shortest new words is taken.
    None when the set outgrows ``max_size`` or a reversal hits a limit.
    """
    complemented = is_complemented(p)
    words = [(s,) for s in p.letters]
    for w in seed or ():
        w = tuple(w)
        if w not in words:
            words.append(w)
    members = set(words)
    results: dict[tuple, list] = {}

    def outcomes(a, b):
        key = (a, b)
        if key not in results:
            if complemented:
                out = _leftmost(p, inverse(a) + b, limits, False)
                if out.status is Status.LIMIT_EXCEEDED:
                    raise _Overflow
                found = [(out.numerator, out.denominator)] if out.status is Status.TERMINAL else []
            else:
                reached = reverse_all_right(p, inverse(a) + b, limits)
                if reached.truncated:
                    raise _Overflow
                found = sorted((_split(w) for w in reached.positive_negative),
                               key=lambda vv: (len(vv[0]) + len(vv[1]), vv))
            results[key] = found
        return results[key]

    try:
        changed = True
        while changed:
            changed = False
            for x in list(words):
                for y in list(words):
                    found = outcomes(x, y)
                    if not found or any(a in members and b in members for a, b in found):
                        continue
                    best = min(found, key=lambda vv: sum(z not in members for z in vv))
                    for z in best:
                        if z not in members:
                            members.add(z)
                            words.append(z)
                            changed = True
                    if len(words) > max_size:
                        return None
    except _Overflow:
        return None
    return frozenset(members)


class _Overflow(Exception):
    pass


# -- completeness ------------------------------------------------------------


class Completeness(str, enum.Enum):
    COMPLETE = "Complete"
    INCOMPLETE = "Incomplete"
    UNKNOWN = "Unknown"


@dataclass
class CompletenessVerdict:
    status: Completeness
    method: Optional[str]
    failing: list[CubeReport] = field(default_factory=list)
    weights: Optional[tuple[int, ...]] = None
    closed_set: Optional[frozenset] = None
    reason: Optional[str] = None
    checked: int = 0

    @property
    def complete(self) -> bool:
        return self.status is Completeness.COMPLETE


def _letter_triples(p: Presentation):
    letters = list(p.letters)
    return itertools.product(letters, repeat=3)


def _verdict_from(reports, method, checked, **extra) -> CompletenessVerdict:
    failing = [r for r in reports if r.status is CubeStatus.FAILS]
    if failing:
        status = Completeness.INCOMPLETE
    elif any(r.status is CubeStatus.UNKNOWN for r in reports):
        status = Completeness.UNKNOWN
        extra.setdefault("reason", "limit reached in a cube check")
    else:
        status = Completeness.COMPLETE
    return CompletenessVerdict(status, method, failing, checked=checked, **extra)


def check_completeness(
    p: Presentation,
    mode: str = "auto",
    limits: Limits = CHECK_LIMITS,
    closed_set: Optional[Iterable[Sequence[int]]] = None,
    stop_at_first: bool = False,
) -> CompletenessVerdict:
    """
    Decide completeness by the cube condition.

    ``homogeneous-letters`` checks every letter triple and needs a weight
    witness; ``closed-set`` needs a complemented presentation and checks
    the complement form on a finite set closed under complement (computed
    when not supplied).  ``auto`` tries them in that order.
    """
    if mode == "auto":
        if homogeneity_witness(p) is not None:
            mode = "homogeneous-letters"
        elif is_complemented(p):
            mode = "closed-set"
        else:
            return CompletenessVerdict(
                Completeness.UNKNOWN, None,
                reason="neither homogeneous nor complemented: no finite criterion applies",
            )
    if mode == "homogeneous-letters":
        weights = homogeneity_witness(p)
        if weights is None:
            raise PreconditionError("presentation is not homogeneous")
        reports = []
        for s, t, r in _letter_triples(p):
            rep = cube_condition(p, (s,), (t,), (r,), limits)
            reports.append(rep)
            if stop_at_first and rep.status is CubeStatus.FAILS:
                break
        return _verdict_from(reports, mode, len(reports), weights=weights)
    if mode == "closed-set":
        if not is_complemented(p):
            raise PreconditionError("closed-set criterion needs a complemented presentation")
        if closed_set is None:
            closure = closure_under_complement(p, limits=limits)
            if closure is None:
                return CompletenessVerdict(Completeness.UNKNOWN, mode,
                                           reason="closure under complement exceeded limits")
        else:
            closure = frozenset(tuple(w) for w in closed_set)
            if closure_under_complement(p, closure, limits, max_size=len(closure)) != closure | {
                (s,) for s in p.letters
            }:
                raise PreconditionError("supplied set is not closed under complement")
        ordered = sorted(closure, key=lambda w: (len(w), w))
        reports = []
        for x, y, z in itertools.combinations_with_replacement(ordered, 3):
            rep = cube_condition_complemented(p, x, y, z, limits)
            reports.append(rep)
            if stop_at_first and rep.status is CubeStatus.FAILS:
                break
        return _verdict_from(reports, mode, len(reports), closed_set=closure)
    raise ValueError(f"unknown mode {mode!r}")


# -- completion --------------------------------------------------------------


class CompletionStatus(str, enum.Enum):
    COMPLETED = "Completed"
    DIVERGED = "Diverged"


@dataclass
class CompletionResult:
    final: Presentation
    added: list[Relation]
    rounds: int
    status: CompletionStatus
    reason: Optional[str] = None


def complete_presentation(
    p: Presentation,
    limits: Limits = CHECK_LIMITS,
    max_relations: int = 64,
    max_side: int = 32,
    require_homogeneous: bool = True,
) -> CompletionResult:
    """
    Scan letter triples in lexicographic order; on the first failing one
    add ``s v' = s' v`` from its witness and restart the scan.
    """
    if require_homogeneous and homogeneity_witness(p) is None:
        raise PreconditionError("completion needs a homogeneous presentation")
    current = p
    added: list[Relation] = []
    rounds = 0
    while True:
        rounds += 1
        failure = None
        for s, t, r in _letter_triples(current):
            rep = cube_condition(current, (s,), (t,), (r,), limits)
            if rep.status is CubeStatus.UNKNOWN:
                return CompletionResult(current, added, rounds, CompletionStatus.DIVERGED,
                                        reason=f"limit reached on triple {rep.triple}")
            if rep.status is CubeStatus.FAILS:
                failure = rep
                break
        if failure is None:
            return CompletionResult(current, added, rounds, CompletionStatus.COMPLETED)
        rel = failure.new_relation()
        if len(added) >= max_relations:
            return CompletionResult(current, added, rounds, CompletionStatus.DIVERGED,
                                    reason="too many added relations")
        if max(len(rel.lhs), len(rel.rhs)) > max_side:
            return CompletionResult(current, added, rounds, CompletionStatus.DIVERGED,
                                    reason="relation side too long")
        added.append(rel)
        current = current.with_relations([rel])
