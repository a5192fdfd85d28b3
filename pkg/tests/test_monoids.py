from itertools import permutations, product

import numpy as np
import pytest

from monvar import monoids as mon
from monvar.deduction import builtin_basis
from monvar.words import ParseError, Word, parse_identity, words_up_to


def brute_force_tables(n: int) -> list:
    """Every unit-0 associative table, by trying all fillings of the non-unit cells."""
    free = [(i, j) for i in range(1, n) for j in range(1, n)]
    if not free:
        return [[[0]]]
    fills = np.array(list(product(range(n), repeat=len(free))), dtype=np.int64).reshape(-1, len(free))
    tabs = np.empty((len(fills), n, n), dtype=np.int64)
    tabs[:, 0, :] = np.arange(n)
    tabs[:, :, 0] = np.arange(n)
    for k, (i, j) in enumerate(free):
        tabs[:, i, j] = fills[:, k]
    ok = np.ones(len(tabs), dtype=bool)
    rows = np.arange(len(tabs))[:, None]
    for a, b, c in product(range(n), repeat=3):
        ab = tabs[:, a, b]
        bc = tabs[:, b, c]
        ok &= tabs[rows[:, 0], ab, c] == tabs[rows[:, 0], a, bc]
    return [t.tolist() for t in tabs[ok]]


def iso_classes(tables, n) -> int:
    keys = set()
    for t in tables:
        best = None
        for perm in permutations(range(1, n)):
            p = (0,) + perm
            inv = [0] * n
            for i, v in enumerate(p):
                inv[v] = i
            # relabel element i as p[i]
            key = tuple(p[t[inv[a]][inv[b]]] for a in range(n) for b in range(n))
            if best is None or key < best:
                best = key
        keys.add(best)
    return len(keys)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_labeled_enumeration_matches_brute_force(n):
    got = sorted(M.table.tolist() for M in mon.enumerate_monoids(n))
    assert got == sorted(brute_force_tables(n))


@pytest.mark.parametrize("n, iso", [(1, 1), (2, 2), (3, 7), (4, 35)])
def test_iso_counts_against_independent_canonical_form(n, iso):
    assert iso_classes(brute_force_tables(n), n) == iso
    assert len(mon.all_monoids(n, up_to_iso=True)) == iso


@pytest.mark.slow
def test_order_five_counts():
    # regression anchors: 4122 labeled, 228 up to isomorphism (a known sequence value)
    assert len(mon.all_monoids(5)) == 4122
    assert len(mon.all_monoids(5, up_to_iso=True)) == 228


def test_enumeration_is_lexicographic():
    tables = [M.table.tolist() for M in mon.all_monoids(4)]
    assert tables == sorted(tables)


def test_rejects_bad_tables():
    with pytest.raises(mon.MonoidError):
        mon.FiniteMonoid([[0, 1], [1, 2]])  # out of range
    with pytest.raises(mon.MonoidError):
        mon.FiniteMonoid([[1, 0], [0, 1]])  # no unit at 0
    with pytest.raises(mon.MonoidError, match="associative"):
        mon.FiniteMonoid([[0, 1, 2], [1, 2, 1], [2, 2, 2]])
    with pytest.raises(mon.MonoidError):
        mon.FiniteMonoid([[0, 1, 2]])


def test_single_cell_mutations_rejected_or_valid(rng):
    M = mon.cyclic_aperiodic(3)
    for _ in range(50):
        t = M.table.copy()
        i, j = rng.randrange(1, 4), rng.randrange(1, 4)
        t[i, j] = (t[i, j] + rng.randrange(1, 4)) % 4
        valid = any(np.array_equal(t, N.table) for N in mon.all_monoids(4))
        if valid:
            mon.FiniteMonoid(t)
        else:
            with pytest.raises(mon.MonoidError):
                mon.FiniteMonoid(t)


def test_builtins_and_identities():
    assert mon.satisfies(mon.cyclic_group(3), parse_identity("x = x^4"))
    assert not mon.satisfies(mon.cyclic_group(3), parse_identity("x = x^3"))
    assert mon.satisfies(mon.cyclic_aperiodic(2), parse_identity("x^2 = x^3"))
    assert not mon.satisfies(mon.cyclic_aperiodic(2), parse_identity("x = x^2"))
    assert mon.satisfies(mon.semilattice_2(), parse_identity("xy = yx^2"))
    assert mon.satisfies(mon.left_zero_unit(), parse_identity("xyx = xy"))
    assert not mon.satisfies(mon.left_zero_unit(), parse_identity("xy = yx"))
    assert mon.satisfies(mon.right_zero_unit(), parse_identity("xyx = yx"))
    assert mon.builtin("cyclic_group(2)") == mon.cyclic_group(2)
    with pytest.raises(mon.MonoidError):
        mon.builtin("nope")


def test_violation_is_genuine():
    M = mon.left_zero_unit()
    ident = parse_identity("xy = yx")
    bad = mon.violation(M, ident)
    vals = {k: np.array([v]) for k, v in bad.items()}
    assert M.evaluate(ident.lhs, vals)[0] != M.evaluate(ident.rhs, vals)[0]
    assert mon.violation(M, parse_identity("x = x")) is None


def test_evaluate_matches_naive_product():
    M = mon.direct_product(mon.cyclic_group(2), mon.left_zero_unit())
    for w in words_up_to("xy", 5):
        for x, y in product(range(M.order), repeat=2):
            acc = 0
            for c in w.letters:
                acc = M.mul(acc, x if c == "x" else y)
            got = M.evaluate(w, {"x": np.array(x), "y": np.array(y)})
            assert int(got) == acc


def test_direct_product_satisfies_common_identities():
    A, B = mon.cyclic_group(2), mon.semilattice_2()
    P = mon.direct_product(A, B)
    assert P.order == 4
    for text in ("xy = yx", "x = x^3", "x^2 = x^4", "x = x^2", "xy = yx^2"):
        ident = parse_identity(text)
        both = mon.satisfies(A, ident) and mon.satisfies(B, ident)
        assert mon.satisfies(P, ident) == both


def test_file_round_trip(tmp_path):
    M = mon.direct_product(mon.semilattice_2(), mon.cyclic_group(2))
    p = tmp_path / "m.txt"
    p.write_text(mon.format_monoid(M))
    assert mon.load_monoid(str(p)) == M
    assert mon.parse_monoid("# comment\n2\n0 1\n1 0\n") == mon.cyclic_group(2)
    with pytest.raises(ParseError):
        mon.parse_monoid("2\n0 1\n")


def test_countermodels():
    D = builtin_basis("D")
    ident = parse_identity("xy = yx")
    assert mon.find_countermodel(D, ident, max_order=4) is None
    M = mon.find_countermodel(D, ident, max_order=5)
    assert M.order == 5
    assert all(mon.satisfies(M, b) for b in D) and not mon.satisfies(M, ident)
    assert mon.find_countermodel(D, parse_identity("x = x"), 5) is None
    C2 = builtin_basis("C2")
    M = mon.find_countermodel(C2, parse_identity("x^2 = x"), 3)
    assert M.order == 3 and not mon.satisfies(M, parse_identity("x^2 = x"))


def test_power_map():
    M = mon.cyclic_group(5)
    assert M.power_map(0).tolist() == [0] * 5
    assert M.power_map(3).tolist() == [(3 * a) % 5 for a in range(5)]
    assert M.evaluate(Word(""), {}).item() == 0
