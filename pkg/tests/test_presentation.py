"""Parsing, mirroring, complementedness and homogeneity."""

from __future__ import annotations

import pytest

from wordrev import corpus
from wordrev.presentation import (
    Presentation,
    PresentationSyntaxError,
    Relation,
    homogeneity_witness,
    inverse,
    is_complemented,
    mirror,
    parse_presentation,
)


def test_parse_chains_give_all_pairs():
    p = parse_presentation("gens: a b c d\nrel: a b = b c = c a\nrel: b a = d b = a d")
    assert p.gens == ("a", "b", "c", "d")
    assert len(p.relations) == 6
    assert Relation(p.word("ab"), p.word("ca")) in p.relations


def test_parse_free_and_single_relation():
    free = parse_presentation("gens: a\n")
    assert free.relations == ()
    bs = parse_presentation("gens: a b\nrel: a a b = b a")
    assert bs.relations == (Relation((1, 1, 2), (2, 1)),)


def test_juxtaposed_and_spaced_letters_agree():
    p = parse_presentation("gens: a b\nrel: aab = ba  # comment\n")
    q = parse_presentation("# header\ngens: a b\nrel: a a b = b a\n")
    assert p == q


def test_multi_character_names():
    p = parse_presentation("gens: s1 s2\nrel: s1 s2 s1 = s2 s1 s2\n")
    assert p.signed("-s1 s2") == (-1, 2)
    assert p.format((-1, 2)) == "-s1 s2"


@pytest.mark.parametrize(
    "text, line",
    [
        ("rel: a = b\n", 1),
        ("gens: a b\nrel: a = c\n", 2),
        ("gens: a b\nrel: a b\n", 2),
        ("gens: a b\nrel: a = a\n", 2),
        ("gens: a b\nrel: A = b\n", 2),
        ("gens: a a\n", 1),
        ("gens: a\nfoo: a\n", 2),
    ],
)
def test_syntax_errors_carry_positions(text, line):
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation(text)
    assert info.value.line == line


def test_round_trip_corpus():
    for name in corpus.NAMES:
        p = corpus.load(name)
        assert parse_presentation(p.serialize()) == p


def test_mirror():
    bs = corpus.load("baumslag_solitar")
    assert mirror(bs).relations == (Relation((2, 1, 1), (1, 2)),)
    p = parse_presentation("gens: a b c\nrel: ab = bc")
    assert mirror(p).relations == (Relation((2, 1), (3, 2)),)
    ex = corpus.load("example_1_2")
    assert mirror(mirror(ex)).same_relations(ex)


def test_eligible_follows_insertion_order():
    p = corpus.load("example_1_2")
    a, b, c, d = p.letters
    # relations with one side starting a and the other b: ab = bc, ad = ba
    assert p.eligible(a, b) == (((b,), (c,)), ((d,), (a,)))
    assert p.eligible(b, a) == (((c,), (b,)), ((a,), (d,)))
    assert p.eligible(c, d) == ()


def test_complemented():
    assert not is_complemented(corpus.load("example_1_2"))
    assert is_complemented(corpus.load("b3"))
    assert is_complemented(parse_presentation("gens: a b\nrel: aa = b"))


def test_homogeneity():
    assert homogeneity_witness(corpus.load("example_1_2")) == (1, 1, 1, 1)
    assert homogeneity_witness(corpus.load("nonhomogeneous")) is None
    assert homogeneity_witness(parse_presentation("gens: a b\nrel: ab = ba")) == (1, 1)


def test_homogeneity_with_unequal_lengths():
    p = parse_presentation("gens: a b c\nrel: a = bc\nrel: ab = ca")
    w = homogeneity_witness(p)
    assert w is not None and min(w) >= 1
    assert p.weight_balanced(w)
    assert homogeneity_witness(corpus.load("baumslag_solitar")) is None


def test_weights_of_corpus_balance():
    for name in corpus.NAMES:
        p = corpus.load(name)
        w = homogeneity_witness(p)
        if w is not None:
            assert min(w) >= 1 and p.weight_balanced(w)


def test_presentation_rejects_bad_relations():
    with pytest.raises(ValueError):
        Presentation(("a",), (((2,), (1,)),))
    with pytest.raises(ValueError):
        Relation((1,), (1,))


def test_inverse():
    assert inverse((1, -2, 3)) == (-3, 2, -1)
    assert inverse(()) == ()
