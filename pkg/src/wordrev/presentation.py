"""
Semigroup presentations, words and signed words.

Letters are 1-based integers: generator ``k`` of a presentation with names
``gens`` is displayed as ``gens[k - 1]``.  A positive word is a tuple of
positive integers; a signed word is a tuple of nonzero integers where ``-k``
stands for the formal inverse of generator ``k``.  The empty tuple is the
empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Word = tuple[int, ...]
SignedWord = tuple[int, ...]

EMPTY: Word = ()

__all__ = [
    "EMPTY",
    "Presentation",
    "PresentationSyntaxError",
    "Relation",
    "SignedWord",
    "Word",
    "homogeneity_witness",
    "inverse",
    "is_complemented",
    "is_negative_positive",
    "is_positive_negative",
    "mirror",
    "mirror_signed",
    "negative",
    "parse_presentation",
    "split_positive_negative",
]


class PresentationSyntaxError(ValueError):
    """Malformed presentation text or word; carries 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


def inverse(w: Sequence[int]) -> SignedWord:
    """Formal inverse of a signed word: reverse the order and flip every sign."""
    return tuple(-x for x in reversed(w))


def negative(w: Sequence[int]) -> SignedWord:
    """The signed word ``w^-1`` for a positive word ``w``."""
    return inverse(w)


def mirror_signed(w: Sequence[int]) -> SignedWord:
    """Letter-reversal keeping signs (the mirror image of a signed word)."""
    return tuple(reversed(w))


def is_positive_negative(w: Sequence[int]) -> bool:
    """True when ``w`` has the shape ``v' v^-1`` with ``v, v'`` positive."""
    seen_negative = False
    for x in w:
        if x < 0:
            seen_negative = True
        elif seen_negative:
            return False
    return True


def is_negative_positive(w: Sequence[int]) -> bool:
    seen_positive = False
    for x in w:
        if x > 0:
            seen_positive = True
        elif seen_positive:
            return False
    return True


def split_positive_negative(w: Sequence[int]) -> tuple[Word, Word]:
    """Split ``v' v^-1`` into ``(v', v)``.  Raises ValueError on other shapes."""
    if not is_positive_negative(w):
        raise ValueError("signed word is not positive-negative")
    k = 0
    while k < len(w) and w[k] > 0:
        k += 1
    return tuple(w[:k]), inverse(w[k:])


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        if not self.lhs or not self.rhs:
            raise ValueError("relation sides must be nonempty")
        if self.lhs == self.rhs:
            raise ValueError("relation sides must differ")

    def key(self) -> frozenset:
        return frozenset((self.lhs, self.rhs))

    def reversed_letters(self) -> "Relation":
        return Relation(self.lhs[::-1], self.rhs[::-1])

    def sides(self) -> tuple[Word, Word]:
        return self.lhs, self.rhs


@dataclass(frozen=True, eq=False)
class Presentation:
    """
    An immutable finite semigroup presentation.

    ``relations`` keeps insertion order and never holds the same unordered
    pair twice.  ``eligible(s, t)`` lists the pairs ``(v', v)`` such that
    ``s v' = t v`` is a relation (read in either orientation).
    """

    gens: tuple[str, ...]
    relations: tuple[Relation, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False)
    _names: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.gens:
            raise ValueError("a presentation needs at least one generator")
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("generator names must be unique")
        n = len(self.gens)
        seen = set()
        rels = []
        for r in self.relations:
            if not isinstance(r, Relation):
                r = Relation(tuple(r[0]), tuple(r[1]))
            for x in r.lhs + r.rhs:
                if not 1 <= x <= n:
                    raise ValueError(f"letter {x} outside alphabet of size {n}")
            if r.key() in seen:
                continue
            seen.add(r.key())
            rels.append(r)
        object.__setattr__(self, "relations", tuple(rels))
        index: dict[tuple[int, int], list[tuple[Word, Word]]] = {}
        for r in rels:
            for x, y in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
                index.setdefault((x[0], y[0]), []).append((x[1:], y[1:]))
        object.__setattr__(self, "_index", {k: tuple(v) for k, v in index.items()})
        object.__setattr__(self, "_names", {name: k + 1 for k, name in enumerate(self.gens)})

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return self.gens == other.gens and self.relations == other.relations

    def __hash__(self):
        return hash((self.gens, self.relations))

    def same_relations(self, other: "Presentation") -> bool:
        """Equality up to relation order and orientation."""
        return self.gens == other.gens and {r.key() for r in self.relations} == {
            r.key() for r in other.relations
        }

    # -- alphabet ---------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.gens)

    @property
    def letters(self) -> range:
        return range(1, len(self.gens) + 1)

    def letter(self, name: str) -> int:
        try:
            return self._names[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def name(self, x: int) -> str:
        return self.gens[abs(x) - 1]

    @property
    def single_char(self) -> bool:
        return all(len(g) == 1 for g in self.gens)

    # -- relations --------------------------------------------------------
    def eligible(self, s: int, t: int) -> tuple[tuple[Word, Word], ...]:
        return self._index.get((s, t), ())

    def with_relations(self, extra: Iterable) -> "Presentation":
        return Presentation(self.gens, self.relations + tuple(extra))

    def weight_balanced(self, weights: Sequence[int]) -> bool:
        def total(w):
            return sum(weights[x - 1] for x in w)

        return all(total(r.lhs) == total(r.rhs) for r in self.relations)

    # -- text -------------------------------------------------------------
    def word(self, text: str) -> Word:
        w = self.signed(text)
        if any(x < 0 for x in w):
            raise PresentationSyntaxError(f"positive word expected, got {text!r}")
        return w

    def signed(self, text: str) -> SignedWord:
        """
        Parse a signed word.  Inverse letters are written with a leading ``-``
        or, when that is unambiguous, in upper case (``A`` for ``a^-1``).
        Juxtaposed letters are accepted when every generator name is a single
        character.
        """
        out = []
        for token in _tokens(text, self.single_char):
            out.append(self._signed_letter(token))
        return tuple(out)

    def _signed_letter(self, token: str) -> int:
        if token in self._names:
            return self._names[token]
        if token.startswith("-") and token[1:] in self._names:
            return -self._names[token[1:]]
        low = token.lower()
        if low != token and low in self._names and token not in self._names:
            return -self._names[low]
        raise PresentationSyntaxError(f"unknown generator {token!r}")

    def format(self, w: Sequence[int], style: str = "auto") -> str:
        """
        Render a (signed) word.  ``style='minus'`` writes inverses as ``-name``;
        ``'case'`` uses upper case; ``'auto'`` picks case when every name is
        a single lowercase letter.  The empty word renders as ``""``.
        """
        if style == "auto":
            style = "case" if all(len(g) == 1 and g.islower() for g in self.gens) else "minus"
        parts = []
        for x in w:
            name = self.name(x)
            if x > 0:
                parts.append(name)
            elif style == "case":
                parts.append(name.upper())
            else:
                parts.append("-" + name)
        return " ".join(parts)

    def serialize(self) -> str:
        lines = ["gens: " + " ".join(self.gens)]
        for r in self.relations:
            lines.append(f"rel: {self.format(r.lhs)} = {self.format(r.rhs)}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        rels = ", ".join(
            f"{self.format(r.lhs)} = {self.format(r.rhs)}" for r in self.relations
        )
        return f"< {' '.join(self.gens)} | {rels} >"


_TOKEN = re.compile(r"\S+")


def _tokens(text: str, single_char: bool) -> list[str]:
    out = []
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if single_char:
            i = 0
            while i < len(tok):
                if tok[i] == "-" and i + 1 < len(tok):
                    out.append(tok[i : i + 2])
                    i += 2
                else:
                    out.append(tok[i])
                    i += 1
        else:
            out.append(tok)
    return out


def parse_presentation(text: str) -> Presentation:
    """
    Parse the line-oriented presentation format::

        # comment
        gens: a b c d
        rel: a b = b c = c a
        rel: ba = db = ad

    A chain ``u = v = w`` contributes every unordered pair of its members.
    """
    gens: list[str] | None = None
    pending: list[tuple[int, int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        col = len(head) - len(head.lstrip()) + 1
        key = head.strip()
        if not sep or key not in ("gens", "rel"):
            raise PresentationSyntaxError("expected 'gens:' or 'rel:'", lineno, col)
        if key == "gens":
            if gens is not None:
                raise PresentationSyntaxError("duplicate 'gens:' line", lineno, col)
            gens = rest.split()
            if not gens:
                raise PresentationSyntaxError("no generators given", lineno, col)
            if len(set(gens)) != len(gens):
                raise PresentationSyntaxError("duplicate generator name", lineno, col)
            for g in gens:
                if g.startswith("-") or "=" in g:
                    raise PresentationSyntaxError(f"bad generator name {g!r}", lineno, col)
        else:
            start = len(head) + 1
            sides = rest.split("=")
            if len(sides) < 2:
                raise PresentationSyntaxError("relation needs '='", lineno, start + 1)
            pending.append((lineno, start, sides))
    if gens is None:
        raise PresentationSyntaxError("missing 'gens:' line", 1, 1)

    probe = Presentation(tuple(gens))
    relations: list[Relation] = []
    for lineno, start, sides in pending:
        words = []
        offset = start
        for side in sides:
            col = offset + len(side) - len(side.lstrip()) + 1
            if not side.strip():
                raise PresentationSyntaxError("empty relation side", lineno, col)
            try:
                w = probe.signed(side)
            except PresentationSyntaxError as exc:
                raise PresentationSyntaxError(str(exc), lineno, col) from None
            if any(x < 0 for x in w):
                raise PresentationSyntaxError("inverse letters are not allowed in relations", lineno, col)
            words.append(w)
            offset += len(side) + 1
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                if words[i] == words[j]:
                    raise PresentationSyntaxError("trivial relation u = u", lineno, start + 1)
                relations.append(Relation(words[i], words[j]))
    return Presentation(tuple(gens), tuple(relations))


@lru_cache(maxsize=512)
def mirror(p: Presentation) -> Presentation:
    """Reverse both sides of every relation; an involution."""
    return Presentation(p.gens, tuple(r.reversed_letters() for r in p.relations))


@lru_cache(maxsize=512)
def is_complemented(p: Presentation) -> bool:
    """No relation ``s... = s...`` and at most one ``s... = t...`` per pair."""
    seen = set()
    for r in p.relations:
        s, t = r.lhs[0], r.rhs[0]
        if s == t:
            return False
        pair = frozenset((s, t))
        if pair in seen:
            return False
        seen.add(pair)
    return True


def homogeneity_witness(p: Presentation) -> tuple[int, ...] | None:
    """
    Positive integer weights balancing every relation, or None.

    Solves ``A w = 0, w >= 1`` as a linear program, then recovers an exact
    integer vector and checks it.
    """
    n = p.rank
    if not p.relations:
        return (1,) * n
    if all(len(r.lhs) == len(r.rhs) for r in p.relations):
        return (1,) * n
    rows = []
    for r in p.relations:
        row = [0] * n
        for x in r.lhs:
            row[x - 1] += 1
        for x in r.rhs:
            row[x - 1] -= 1
        rows.append(row)

    from scipy.optimize import linprog

    res = linprog(
        c=[1.0] * n,
        A_eq=rows,
        b_eq=[0.0] * len(rows),
        bounds=[(1, None)] * n,
        method="highs",
    )
    if res.status != 0:
        return None
    fracs = [Fraction(float(x)).limit_denominator(10**6) for x in res.x]
    scale = lcm(*(f.denominator for f in fracs))
    ints = [int(f * scale) for f in fracs]
    g = gcd(*ints)
    weights = tuple(x // g for x in ints)
    if min(weights) < 1 or not p.weight_balanced(weights):
        return None
    return weights
