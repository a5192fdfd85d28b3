from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monvar.words import (
    EMPTY,
    Identity,
    ParseError,
    Substitution,
    Word,
    content,
    is_square_free,
    letter,
    letter_index,
    match_instances,
    occ_vector,
    parse_identity,
    parse_word,
    simple_letters,
    words_up_to,
)

words = st.text(alphabet="xyz", max_size=8).map(Word)
small_words = st.text(alphabet="xyz", max_size=3).map(Word)
subs = st.dictionaries(st.sampled_from("xyz"), small_words, max_size=3).map(Substitution)


def brute_matches(pattern: Word, target: Word) -> set:
    """Every (prefix, images, suffix) by trying all factor assignments."""
    t = target.letters
    letters = sorted(content(pattern))
    factors = sorted({t[i:j] for i in range(len(t) + 1) for j in range(i, len(t) + 1)})
    found = set()
    for imgs in product(factors, repeat=len(letters)):
        sub = dict(zip(letters, imgs))
        middle = "".join(sub[c] for c in pattern.letters)
        for start in range(len(t) - len(middle) + 1):
            if t[start:start + len(middle)] == middle:
                found.add((t[:start], tuple(sorted(sub.items())), t[start + len(middle):]))
    return found


def as_set(ms) -> set:
    return {
        (m.prefix.letters, tuple(sorted((k, v.letters) for k, v in m.sub.items())), m.suffix.letters)
        for m in ms
    }


# parsing and printing


def test_parse_powers_and_unit():
    assert parse_word("x^2y").letters == "xxy"
    assert parse_word("1") == EMPTY
    assert str(EMPTY) == "1"
    assert parse_word("x^0") == EMPTY
    assert parse_word("x y^3").letters == "xyyy"


@pytest.mark.parametrize("bad", ["X", "x^", "x^y", "2", "x-y", "^2"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_word(bad)


def test_identity_parsing():
    i = parse_identity("x^2 = x^3")
    assert i.lhs.letters == "xx" and i.rhs.letters == "xxx"
    assert parse_identity("xy ≈ yx") == Identity(Word("xy"), Word("yx"))
    assert str(i) == "xx = xxx"
    assert parse_identity("x = x").trivial
    with pytest.raises(ParseError):
        parse_identity("x = y = z")
    with pytest.raises(ParseError):
        parse_identity("xy")


def test_pretty_folds_runs():
    assert parse_word("x^2y").pretty() == "x^2y"
    assert Word("xyyyx").pretty() == "xy^3x"
    assert EMPTY.pretty() == "1"


def test_extended_alphabet_order():
    assert [letter(i) for i in range(3)] == ["a", "b", "c"]
    assert letter(26) > "z"
    for i in range(40):
        assert letter_index(letter(i)) == i


@given(words)
def test_print_parse_fixpoint(w):
    assert parse_word(str(w)) == w
    assert parse_word(w.pretty()) == w


# monoid structure


def test_unit_and_associativity_exhaustive():
    ws = list(words_up_to("xyz", 4))
    for u in ws:
        assert u + EMPTY == u == EMPTY + u
    for u, v, w in product(ws[:40], repeat=3):
        assert (u + v) + w == u + (v + w)


def test_shortlex_order():
    ws = list(words_up_to("xy", 3))
    assert ws == sorted(ws)
    assert ws[:4] == [EMPTY, Word("x"), Word("y"), Word("xx")]
    assert len(ws) == 1 + 2 + 4 + 8


def test_content_occurrences_simple():
    t = Word("yxzxyxz")
    assert occ_vector(t) == {"x": 3, "y": 2, "z": 2}
    assert content(t) == frozenset("xyz")
    assert simple_letters(Word("xyxz")) == frozenset("yz")
    assert simple_letters(EMPTY) == frozenset()


@given(words, words)
def test_content_of_product(u, v):
    assert content(u + v) == content(u) | content(v)


def test_square_free():
    assert is_square_free(Word("yxyzxz"))
    assert is_square_free(Word("yxzxyxz"))
    assert is_square_free(Word("xyx"))
    assert not is_square_free(Word("xx"))
    assert not is_square_free(Word("xyzyz"))


# substitutions


def test_substitution_basics():
    s = Substitution({"x": "yz", "y": ""})
    assert s(Word("xyx")).letters == "yzyz"
    assert s.image("z").letters == "z"
    assert Substitution({"x": "x"}) == Substitution({})
    assert s.support == frozenset("xy")


@given(subs, subs, words)
def test_composition_is_function_composition(f, g, w):
    assert f.compose(g)(w) == f(g(w))


@given(subs, words)
def test_substitution_is_homomorphism(f, w):
    for i in range(len(w) + 1):
        assert f(w[:i] + w[i:]) == f(w[:i]) + f(w[i:])


@given(subs, words)
def test_content_under_substitution(f, w):
    image = set()
    for c in content(w):
        image |= content(f.image(c))
    assert content(f(w)) == image


# instance matching


def test_square_in_xyx_only_kills_x():
    ms = match_instances(Word("xx"), Word("xyx"))
    assert len(ms) == 4
    assert all(m.sub.image("x") == EMPTY for m in ms)


def test_q_left_side_in_x_squared():
    ms = as_set(match_instances(Word("yxyzxz"), parse_word("x^2")))
    assert ("", (("x", "x"), ("y", ""), ("z", "")), "") in ms
    collapsed = {m for m in ms if all(v == "" for _, v in m[1])}
    assert collapsed == {("", (("x", ""), ("y", ""), ("z", "")), "xx"),
                         ("x", (("x", ""), ("y", ""), ("z", "")), "x"),
                         ("xx", (("x", ""), ("y", ""), ("z", "")), "")}


def test_matches_reconstruct_target():
    p, t = Word("xyx"), Word("xyxyxx")
    for m in match_instances(p, t):
        assert m.apply(p) == t


@pytest.mark.parametrize("pattern", ["x", "xx", "xy", "xyx", "xyyx", "xyzx"])
def test_matcher_complete_against_brute_force(pattern):
    p = Word(pattern)
    for t in words_up_to("xy", 5):
        got = match_instances(p, t)
        assert len(got) == len(as_set(got)), "duplicates"
        assert as_set(got) == brute_matches(p, t)


@given(st.text(alphabet="xyz", min_size=1, max_size=3), st.text(alphabet="xy", max_size=5))
def test_matcher_complete_random(pattern, target):
    p, t = Word(pattern), Word(target)
    assert as_set(match_instances(p, t)) == brute_matches(p, t)
