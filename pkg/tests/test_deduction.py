import warnings

import pytest

from monvar import monoids as mon
from monvar.deduction import (
    SQUARE_FREE_LEFT,
    SQUARE_FREE_RIGHT,
    Basis,
    Deduction,
    builtin_basis,
    deduction_search,
    derives_basis,
    format_basis,
    is_isoterm,
    iter_steps,
    load_basis,
    parse_basis,
    reachable,
    step_successors,
    verify_deduction,
)
from monvar.words import Identity, ParseError, Word, content, is_square_free, parse_word, words_up_to

Q = builtin_basis("Q")
B23 = builtin_basis("B23")
D = builtin_basis("D")
SHORT = list(words_up_to("xyz", 6))


def test_q_successors_swap_sides():
    assert step_successors(SQUARE_FREE_LEFT, Q) - {SQUARE_FREE_LEFT} == {SQUARE_FREE_RIGHT}
    assert step_successors(SQUARE_FREE_RIGHT, Q) - {SQUARE_FREE_RIGHT} == {SQUARE_FREE_LEFT}


def test_q_derives_square_cube_in_one_step():
    d = deduction_search(parse_word("x^2"), parse_word("x^3"), Q)
    assert d is not None and len(d) == 1
    assert verify_deduction(d, Q)
    assert d.steps[0].matching.sub.image("x") == Word("x")


def test_exponent_shortcut():
    B = Basis(["x = x^3", "x = x^4"])
    d = deduction_search(Word("x"), parse_word("x^7"), B, max_steps=3)
    assert d is not None and len(d) <= 3 and verify_deduction(d, B)
    # shortest: nothing within one step
    assert deduction_search(Word("x"), parse_word("x^7"), B, max_steps=1) is None


def test_not_within_bounds_for_isoterm():
    assert deduction_search(Word("xyx"), parse_word("x^2y"), B23) is None


def test_zero_steps_and_bad_bounds():
    w = Word("xy")
    d = deduction_search(w, w, B23, max_steps=0)
    assert d is not None and len(d) == 0 and verify_deduction(d, B23)
    with pytest.raises(ValueError):
        deduction_search(w, w, B23, max_steps=-1)
    with pytest.raises(ValueError):
        deduction_search(Word("xxx"), Word("xx"), B23, max_len=2)


def test_verify_rejects_tampering():
    d = deduction_search(parse_word("x^2"), parse_word("x^3"), Q)
    bad_words = Deduction((d.words[0], Word("xxxx")), d.steps)
    assert not verify_deduction(bad_words, Q)
    assert not verify_deduction(d, B23)  # identity not in basis
    assert not verify_deduction(Deduction((), ()), Q)


def test_isoterms_for_square_cube():
    for w in ("yxyzxz", "yxzxyxz", "xyx", "x", "1"):
        assert is_isoterm(parse_word(w), B23)
    assert not is_isoterm(parse_word("x^2"), B23)
    assert not is_isoterm(parse_word("xyy"), B23)


def test_square_free_words_are_isoterms():
    for w in words_up_to("xyz", 6):
        assert is_isoterm(w, B23) == is_square_free(w)


@pytest.mark.parametrize("name", ["Q", "B23"])
def test_step_relation_symmetric(name):
    basis = builtin_basis(name)
    succ = {w: {v for v in step_successors(w, basis) if len(v) <= 6} for w in SHORT}
    for w, vs in succ.items():
        for v in vs:
            assert w in succ[v], (w, v)


@pytest.mark.parametrize("name", ["D", "C2", "E"])
def test_steps_preserve_content(name):
    basis = builtin_basis(name)
    for w in SHORT[:400]:
        for v in step_successors(w, basis):
            assert content(v) == content(w)


def test_iter_steps_check():
    for w in (Word("xxyx"), parse_word("x^3")):
        for s in iter_steps(w, D):
            assert s.check() and s.source == w
        assert {s.target for s in iter_steps(w, D)} == step_successors(w, D)


def test_reachable_distances():
    dist = reachable(parse_word("x^2"), B23, max_len=4)
    assert dist[parse_word("x^2")] == 0
    assert dist[parse_word("x^3")] == 1
    assert dist[parse_word("x^4")] == 2


def test_derivations_sound_in_small_models():
    """Whatever is deduced from D holds in every monoid of order <= 4 satisfying D."""
    models = [M for n in range(1, 5) for M in mon.all_monoids(n) if all(mon.satisfies(M, b) for b in D)]
    assert models
    pairs = [("x^2y", "yx^2"), ("xyx", "x^2y"), ("x^2y^2", "y^2x^2"), ("xyxy", "x^2y^2"), ("x^3", "x^2")]
    for a, b in pairs:
        d = deduction_search(parse_word(a), parse_word(b), D)
        assert d is not None and verify_deduction(d, D)
        ident = Identity(parse_word(a), parse_word(b))
        assert all(mon.satisfies(M, ident) for M in models)


def test_derives_basis_report():
    reports = derives_basis(builtin_basis("E"), Basis(["xyx = xyx^2"]))
    assert [r.status for r in reports] == ["Proved"]
    assert len(reports[0].deduction) == 4


def test_basis_parsing_and_trivial_drop():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        b = parse_basis("x^2 = x^3  # comment\n\nx = x\nx^2 = x^3\n")
    assert len(b) == 1 and caught
    assert parse_basis(format_basis(b)) == b
    with pytest.raises(ParseError):
        parse_basis("x^2 = \n")
    with pytest.raises(ParseError):
        builtin_basis("@NOPE")


def test_load_basis_file(tmp_path):
    p = tmp_path / "mine.txt"
    p.write_text("xy = yx\n")
    b = load_basis(str(p))
    assert b.name == "mine" and len(b) == 1
    assert load_basis("@D") == builtin_basis("D")
