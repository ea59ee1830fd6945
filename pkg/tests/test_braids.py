"""Braid presentations, crossing names, named diagrams and optimality."""

from __future__ import annotations

import itertools

import pytest

from wordrev.braids import (
    Name,
    assign_names,
    braid_presentation,
    check_optimality,
    combinatorial_distance,
    is_sparse,
    name_grid,
    named_diagram,
)
from wordrev.diagram import reversing_diagram
from wordrev.presentation import Relation, inverse
from wordrev.reversing import build_grid, reversing_complexity, search_empty

from conftest import all_words


def test_presentations():
    assert braid_presentation(2).relations == ()
    assert braid_presentation(3).relations == (Relation((1, 2, 1), (2, 1, 2)),)
    rels = braid_presentation(4).relations
    assert sorted(len(r.lhs) for r in rels) == [2, 3, 3]
    with pytest.raises(ValueError):
        braid_presentation(1)


def test_names():
    assert assign_names(3, (1,)) == [Name(1, 2, 1)]
    assert assign_names(3, (1, 1)) == [Name(1, 2, 1), Name(1, 2, 2)]
    # strands 2 and 3 cross for the fourth time on the last letter
    assert assign_names(3, (1, 2, 1, 1, 1, 1))[-1] == Name(2, 3, 4)
    assert str(Name(1, 3, 2)) == "[1,3,2]"
    with pytest.raises(ValueError):
        assign_names(3, (3,))
    with pytest.raises(ValueError):
        Name(2, 1, 1)


def test_names_stable_under_extension():
    for w in all_words(braid_presentation(4), 4):
        base = assign_names(4, w)
        for s in (1, 2, 3):
            assert assign_names(4, w + (s, s))[: len(w)] == base


def test_hexagon_names():
    p = braid_presentation(3)
    g = name_grid(3, build_grid(p, (1,), (2,)))
    assert g.kinds == ["hexagon"]
    assert {nm.pair for nm in g.names_on(0)} == {(1, 2), (1, 3), (2, 3)}
    left, right = g.face_names[0]
    assert left == tuple(reversed(right))


def test_square_names():
    p = braid_presentation(4)
    g = name_grid(4, build_grid(p, (1,), (3,)))
    assert g.kinds == ["square"]
    pairs = [nm.pair for nm in g.face_names[0][0]]
    assert len(pairs) == 2 and not set(pairs[0]) & set(pairs[1])


def test_empty_grid_has_no_names():
    p = braid_presentation(3)
    g = name_grid(3, build_grid(p, (), ()))
    assert g.names == [] and g.faces == 0


def test_face_law_on_many_diagrams():
    p = braid_presentation(4)
    words = all_words(p, 3)
    for u, v in itertools.product(words, repeat=2):
        g = named_diagram(4, reversing_diagram(p, inverse(u) + v))
        assert len(g.kinds) == g.faces


def test_sparse():
    assert is_sparse([Name(1, 2, 1), Name(2, 3, 1)])
    assert not is_sparse([Name(1, 2, 1), Name(2, 3, 1), Name(1, 3, 1)])
    assert is_sparse([Name(1, 2, 1), Name(1, 3, 1)])
    assert is_sparse([])


def _example_pair(m):
    return (2, 1, 1, 2) * m + (1,) * (2 * m), (1,) * (2 * m) + (2, 1, 1, 2) * m


@pytest.mark.parametrize("m", [1, 2, 3])
def test_optimality_family(m):
    u, v = _example_pair(m)
    verdict = check_optimality(3, u, v, family=[(1, 2), (2, 3)])
    assert verdict.optimal and verdict.distance == 4 * m * m
    assert verdict.inversions == verdict.faces


def test_optimality_search_over_families():
    verdict = check_optimality(3, *_example_pair(1))
    assert verdict.optimal and verdict.distance == 4


def test_trivial_and_inconclusive():
    v = check_optimality(3, (1, 2), (1, 2))
    assert v.optimal and v.distance == 0
    delta = ((1, 2, 1, 3, 2, 1), (3, 2, 3, 1, 2, 3))
    v = check_optimality(4, *delta)
    assert v.status == "Inconclusive" and v.faces == 8 and v.distance is None
    with pytest.raises(ValueError):
        check_optimality(3, (1,), (2,))


def test_distances():
    p = braid_presentation(4)
    assert combinatorial_distance(4, (1, 2, 1, 3, 2, 1), (3, 2, 3, 1, 2, 3)) == 6
    assert combinatorial_distance(4, (1, 3), (1, 3)) == 0
    assert combinatorial_distance(3, *_example_pair(1)) == 4
    assert reversing_complexity(p, (1, 2, 1, 3, 2, 1), (3, 2, 3, 1, 2, 3)) == 8


def test_certificates_are_sound():
    """Optimal verdicts agree with breadth-first distance on small B3 pairs."""
    p = braid_presentation(3)
    seen = 0
    for u, v in itertools.combinations(all_words(p, 5), 2):
        if not search_empty(p, inverse(u) + v).reaches_empty:
            continue
        verdict = check_optimality(3, u, v)
        dist = combinatorial_distance(3, u, v)
        assert dist <= verdict.faces
        if verdict.optimal:
            assert verdict.distance == dist
            seen += 1
    assert seen > 0
