"""Cube condition, completeness verdicts, closure and completion."""

from __future__ import annotations

import itertools

import pytest

from wordrev import corpus
from wordrev.completeness import (
    Completeness,
    CompletionStatus,
    CubeStatus,
    PreconditionError,
    check_completeness,
    closure_under_complement,
    complete_presentation,
    cube_condition,
    cube_condition_complemented,
)
from wordrev.presentation import Relation, inverse, is_complemented, parse_presentation
from wordrev.reversing import complement, search_empty

from conftest import all_words
from helpers import same_class

COMPLEMENTED = ["b3", "b4", "raag", "counter", "nonhomogeneous", "flag_braid"]


def test_cube_holds_on_abc(ex12):
    a, b, c, _ = ex12.letters
    rep = cube_condition(ex12, (a,), (b,), (c,))
    assert rep.status is CubeStatus.HOLDS
    # the two words of the worked example reverse to the empty word
    for w in ("B A c a", "B D A c a a"):
        assert search_empty(ex12, ex12.signed(w)).reaches_empty


def test_cube_results_for_a_c_b(ex12):
    a, b, c, _ = ex12.letters
    rep = cube_condition(ex12, (a,), (c,), (b,))
    assert rep.status is CubeStatus.HOLDS
    results = {vp + inverse(v) for vp, v in rep.results}
    assert {ex12.signed("b A"), ex12.signed("d b A A")} <= results


def test_flag_cube_intermediate(flag):
    rep = cube_condition(flag, (1,), (2,), (3,))
    assert rep.status is CubeStatus.FAILS
    assert flag.signed("c a c a") + inverse(flag.word("c a c")) in {
        vp + inverse(v) for vp, v in rep.results
    }


def test_complemented_form(b3, nonhom):
    assert cube_condition_complemented(b3, (1,), (2,), (1,)).status is CubeStatus.HOLDS
    for u, w in itertools.product(all_words(b3, 2), repeat=2):
        assert cube_condition_complemented(b3, u, u, w).status.ok
    rep = cube_condition_complemented(nonhom, (1,), (2, 3), (3,))
    assert rep.status is CubeStatus.FAILS
    assert rep.residual


@pytest.mark.parametrize("name", COMPLEMENTED)
def test_cube_forms_agree_on_letters(name):
    p = corpus.load(name)
    assert is_complemented(p)
    # the complemented form covers every ordering of the triple at once
    for triple in itertools.combinations_with_replacement(p.letters, 3):
        generic = [cube_condition(p, (s,), (t,), (r,)).status for s, t, r in itertools.permutations(triple)]
        special = cube_condition_complemented(p, *((x,) for x in triple)).status
        if CubeStatus.UNKNOWN in generic or special is CubeStatus.UNKNOWN:
            continue
        assert all(x.ok for x in generic) == special.ok, triple


def test_completeness_verdicts(ex12, ex12c, b3, b4):
    v = check_completeness(ex12)
    assert v.status is Completeness.INCOMPLETE
    assert ((3,), (4,), (1,)) in [r.triple for r in v.failing]
    assert check_completeness(ex12c).complete
    v = check_completeness(b3)
    assert v.complete and v.method == "homogeneous-letters" and v.checked == 8
    assert check_completeness(b4).complete


def test_completeness_closed_set(nonhom):
    counter = corpus.load("counter")
    v = check_completeness(counter)
    assert v.complete and v.method == "closed-set"
    v = check_completeness(nonhom)
    assert v.status is Completeness.INCOMPLETE and v.method == "closed-set"
    with pytest.raises(PreconditionError):
        check_completeness(nonhom, "homogeneous-letters")


def test_completeness_unknown_without_finite_criterion():
    p = parse_presentation("gens: a b\nrel: aab = ba\nrel: ab = abb")
    v = check_completeness(p)
    assert v.status is Completeness.UNKNOWN and v.reason


@pytest.mark.parametrize("name", ["example_1_2_completed", "b3", "raag"])
def test_complete_means_equivalent_iff_reversible(name):
    p = corpus.load(name)
    words = all_words(p, 3)
    for u, v in itertools.product(words, repeat=2):
        assert same_class(p, u, v) == search_empty(p, inverse(u) + v).reaches_empty


def test_complement_compatible_with_equivalence(b3):
    words = all_words(b3, 3)
    for u, u2, v in itertools.product(words, repeat=3):
        if not same_class(b3, u, u2):
            continue
        x, y = complement(b3, u, v), complement(b3, u2, v)
        assert same_class(b3, x[0], y[0])


def test_closures(ex12c, nonhom):
    closure = closure_under_complement(nonhom)
    assert closure == {(), (1,), (2,), (3,), (2, 3)}
    free = parse_presentation("gens: a b c")
    assert closure_under_complement(free) == {(), (1,), (2,), (3,)}
    assert closure_under_complement(ex12c) is not None


def test_closure_is_minimal(nonhom):
    closure = closure_under_complement(nonhom)
    letters = {(s,) for s in nonhom.letters}
    for x in closure - letters:
        smaller = closure - {x}
        broken = False
        for u, v in itertools.product(smaller, repeat=2):
            c = complement(nonhom, u, v)
            if c is not None and not (c[0] in smaller and c[1] in smaller):
                broken = True
                break
        assert broken, x


def test_closure_gives_up_on_baumslag_solitar():
    assert closure_under_complement(corpus.load("baumslag_solitar")) is None


def test_completion(ex12, b3):
    res = complete_presentation(ex12)
    assert res.status is CompletionStatus.COMPLETED
    assert res.added == [Relation((3, 1, 1), (4, 2, 2))]
    res = complete_presentation(b3)
    assert res.added == [] and res.rounds == 1


def test_completion_preserves_equivalence(ex12):
    for rel in complete_presentation(ex12).added:
        assert same_class(ex12, rel.lhs, rel.rhs)


def test_completion_heisenberg():
    p = corpus.load("heisenberg")
    with pytest.raises(PreconditionError):
        complete_presentation(p)
    res = complete_presentation(p, require_homogeneous=False, max_relations=1)
    assert res.added == [Relation(p.word("ab"), p.word("cba"))]
    assert not is_complemented(res.final)


def test_completion_diverges_on_flag(flag):
    res = complete_presentation(flag)
    assert res.status is CompletionStatus.DIVERGED
    assert res.reason
