"""Independent oracles used by several test modules."""

from __future__ import annotations

from functools import lru_cache

from wordrev import rewriting


def same_class(p, u, v, max_size=100_000):
    cls = rewriting.equivalence_class(p, tuple(u), max_size)
    assert cls is not None, "class too large for the oracle"
    return tuple(v) in cls


def left_divisors(p, w):
    """Canonical representatives of every left-divisor of ``w``, from its class."""
    return _left_divisors(p, tuple(w))


@lru_cache(maxsize=None)
def _left_divisors(p, w):
    out = set()
    for x in rewriting.equivalence_class(p, tuple(w)):
        for k in range(len(x) + 1):
            out.add(rewriting.canonical(p, x[:k]))
    return frozenset(out)


def right_divisors(p, w):
    out = set()
    for x in rewriting.equivalence_class(p, tuple(w)):
        for k in range(len(x) + 1):
            out.add(rewriting.canonical(p, x[k:]))
    return out


def left_divides(p, u, w):
    return _canonical(p, tuple(u)) in left_divisors(p, w)


@lru_cache(maxsize=None)
def _canonical(p, w):
    return rewriting.canonical(p, w)
