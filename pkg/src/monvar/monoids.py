"""Finite monoids given by Cayley tables, used as satisfaction oracles.

Element 0 is always the unit.  Tables are validated on construction.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from .words import Identity, ParseError, Word

__all__ = [
    "FiniteMonoid",
    "MonoidError",
    "all_monoids",
    "builtin",
    "canonical_table",
    "cyclic_aperiodic",
    "cyclic_group",
    "direct_product",
    "enumerate_monoids",
    "find_countermodel",
    "format_monoid",
    "left_zero_unit",
    "load_monoid",
    "parse_monoid",
    "right_zero_unit",
    "satisfies",
    "semilattice_2",
    "violation",
]

MAX_ORDER = 5


class MonoidError(ValueError):
    pass


class FiniteMonoid:
    """A monoid on ``{0, ..., order-1}`` with unit ``0``."""

    def __init__(self, table, name: Optional[str] = None):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
            raise MonoidError("table must be a non-empty square array")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise MonoidError("table entries out of range")
        idx = np.arange(n)
        for a in range(n):
            if t[0, a] != a or t[a, 0] != a:
                raise MonoidError(f"element 0 is not a unit: fails at {a}")
        # (ab)c vs a(bc) for all triples at once
        left = t[t[:, :, None], idx[None, None, :]]
        right = t[idx[:, None, None], t[None, :, :]]
        bad = np.argwhere(left != right)
        if len(bad):
            a, b, c = map(int, bad[0])
            raise MonoidError(f"not associative at ({a}, {b}, {c})")
        t.setflags(write=False)
        self.table = t
        self.name = name
        self._powers = {1: idx}

    @property
    def order(self) -> int:
        return self.table.shape[0]

    unit = 0

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power_map(self, k: int) -> np.ndarray:
        """``p[a] = a^k`` for every element ``a``."""
        if k == 0:
            return np.zeros(self.order, dtype=np.int64)
        if k not in self._powers:
            half = self.power_map(k // 2)
            p = self.table[half, half]
            if k % 2:
                p = self.table[p, np.arange(self.order)]
            self._powers[k] = p
        return self._powers[k]

    def evaluate(self, w: Word, values: dict) -> np.ndarray:
        """Value of ``w`` under ``values`` (letter -> element array), elementwise."""
        shape = np.shape(next(iter(values.values()))) if values else ()
        acc = np.zeros(shape, dtype=np.int64)
        s = w.letters
        i = 0
        while i < len(s):
            j = i
            while j < len(s) and s[j] == s[i]:
                j += 1
            acc = self.table[acc, self.power_map(j - i)[values[s[i]]]]
            i = j
        return acc

    def assignments(self, letters) -> dict:
        """All assignments of elements to ``letters``, as parallel arrays."""
        letters = sorted(letters)
        if not letters:
            return {}
        grids = np.indices((self.order,) * len(letters)).reshape(len(letters), -1)
        return dict(zip(letters, grids))

    def __eq__(self, other):
        return isinstance(other, FiniteMonoid) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteMonoid{label} order={self.order}>"


def _pair_values(M: FiniteMonoid, ident: Identity):
    values = M.assignments(ident.content())
    return values, M.evaluate(ident.lhs, values), M.evaluate(ident.rhs, values)


def satisfies(M: FiniteMonoid, ident: Identity) -> bool:
    _, lv, rv = _pair_values(M, ident)
    return bool(np.array_equal(lv, rv))


def violation(M: FiniteMonoid, ident: Identity) -> Optional[dict]:
    """First assignment (in index order) separating the two sides, if any."""
    values, lv, rv = _pair_values(M, ident)
    bad = np.flatnonzero(np.atleast_1d(lv != rv))
    if not len(bad):
        return None
    k = int(bad[0])
    return {c: int(v[k]) for c, v in values.items()}


# The named constructors are cached: monoids are immutable and the deciders
# build witness monoids on every failing identity.


def _from_op(elements, op, name):
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[op(a, b)] for b in elements] for a in elements]
    return FiniteMonoid(table, name=name)


@lru_cache(maxsize=None)
def cyclic_group(n: int) -> FiniteMonoid:
    if n < 1:
        raise MonoidError("cyclic_group needs n >= 1")
    return _from_op(range(n), lambda a, b: (a + b) % n, f"cyclic_group({n})")


@lru_cache(maxsize=None)
def cyclic_aperiodic(n: int) -> FiniteMonoid:
    """``{1, a, ..., a^n}`` with ``a^(n+1) = a^n``; element ``i`` is ``a^i``."""
    if n < 1:
        raise MonoidError("cyclic_aperiodic needs n >= 1")
    return _from_op(range(n + 1), lambda a, b: min(a + b, n), f"cyclic_aperiodic({n})")


@lru_cache(maxsize=None)
def semilattice_2() -> FiniteMonoid:
    return FiniteMonoid([[0, 1], [1, 1]], name="semilattice_2")


@lru_cache(maxsize=None)
def left_zero_unit() -> FiniteMonoid:
    # 0 = unit, 1 = a, 2 = b; xy = x for x, y in {a, b}
    return FiniteMonoid([[0, 1, 2], [1, 1, 1], [2, 2, 2]], name="left_zero_unit")


@lru_cache(maxsize=None)
def right_zero_unit() -> FiniteMonoid:
    return FiniteMonoid([[0, 1, 2], [1, 1, 2], [2, 1, 2]], name="right_zero_unit")


def direct_product(M: FiniteMonoid, N: FiniteMonoid) -> FiniteMonoid:
    """Pairs ``(a, b)`` indexed ``a * |N| + b``, so the unit stays at 0."""
    m, n = M.order, N.order
    table = [
        [M.mul(i // n, j // n) * n + N.mul(i % n, j % n) for j in range(m * n)]
        for i in range(m * n)
    ]
    return FiniteMonoid(table, name=f"{M.name or 'M'} x {N.name or 'N'}")


_BUILTINS = {
    "cyclic_group": cyclic_group,
    "cyclic_aperiodic": cyclic_aperiodic,
    "semilattice_2": semilattice_2,
    "left_zero_unit": left_zero_unit,
    "right_zero_unit": right_zero_unit,
}


def builtin(name: str, *params) -> FiniteMonoid:
    """Built-in monoid by name, e.g. ``builtin("cyclic_group", 3)``.

    Also accepts call syntax as a single string: ``"cyclic_group(3)"``,
    and ``"direct_product(semilattice_2, cyclic_group(2))"``.
    """
    if not params and "(" in name:
        return _parse_builtin(name)
    if name == "direct_product":
        if len(params) != 2:
            raise MonoidError("direct_product takes two monoids")
        return direct_product(*params)
    if name not in _BUILTINS:
        raise MonoidError(f"unknown built-in monoid {name!r}")
    try:
        return _BUILTINS[name](*params)
    except TypeError as e:
        raise MonoidError(f"bad parameters for {name}: {e}") from None


def _parse_builtin(text: str) -> FiniteMonoid:
    text = text.strip()
    if "(" not in text:
        return builtin(text)
    head, rest = text.split("(", 1)
    if not rest.endswith(")"):
        raise MonoidError(f"unbalanced parentheses in {text!r}")
    inner = rest[:-1]
    args, depth, cur = [], 0, ""
    for ch in inner:
        if ch == "," and depth == 0:
            args.append(cur.strip())
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    if cur.strip():
        args.append(cur.strip())
    head = head.strip()
    if head == "direct_product":
        return direct_product(*(_parse_builtin(a) for a in args))
    return builtin(head, *(int(a) for a in args))


def parse_monoid(text: str, name: Optional[str] = None) -> FiniteMonoid:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty monoid file")
    try:
        n = int(lines[0])
        rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except ValueError as e:
        raise ParseError(f"bad monoid file: {e}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"expected {n} rows of {n} entries")
    return FiniteMonoid(rows, name=name)


def load_monoid(spec: str) -> FiniteMonoid:
    """A path to a monoid file, or a built-in like ``cyclic_group(2)``."""
    p = Path(spec)
    if p.exists():
        return parse_monoid(p.read_text(encoding="utf-8"), name=p.stem)
    return _parse_builtin(spec)


def format_monoid(M: FiniteMonoid) -> str:
    rows = [" ".join(str(int(x)) for x in row) for row in M.table]
    return "\n".join([str(M.order)] + rows) + "\n"


def _labeled_tables(n: int) -> Iterator[list]:
    # Backtracking over the non-unit cells in row-major order; values ascending,
    # so tables come out in lexicographic order.
    t = [[-1] * n for _ in range(n)]
    for a in range(n):
        t[0][a] = t[a][0] = a
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    rng = range(n)

    def consistent(i, j, v):
        # every triple that just became fully defined through cell (i, j)
        for c in rng:
            jc = t[j][c]
            vc = t[v][c]
            if jc >= 0 and vc >= 0:
                r = t[i][jc]
                if r >= 0 and r != vc:
                    return False
            ai = t[c][i]
            if ai >= 0:
                lhs = t[ai][j]
                r = t[c][v]
                if lhs >= 0 and r >= 0 and lhs != r:
                    return False
        for a in rng:
            for b in rng:
                if t[a][b] == i:
                    bj = t[b][j]
                    if bj >= 0:
                        r = t[a][bj]
                        if r >= 0 and r != v:
                            return False
                if t[a][b] == j:
                    ia = t[i][a]
                    if ia >= 0:
                        lhs = t[ia][b]
                        if lhs >= 0 and lhs != v:
                            return False
        return True

    def rec(k):
        if k == len(cells):
            yield [row[:] for row in t]
            return
        i, j = cells[k]
        for v in rng:
            t[i][j] = v
            if consistent(i, j, v):
                yield from rec(k + 1)
        t[i][j] = -1

    yield from rec(0)


def canonical_table(table) -> tuple:
    """Lexicographically least relabeling over permutations fixing 0."""
    t = np.asarray(table)
    n = t.shape[0]
    best = None
    for rest in itertools.permutations(range(1, n)):
        p = np.array((0,) + rest)  # p[old] = new
        inv = np.argsort(p)
        relabeled = p[t[np.ix_(inv, inv)]]
        key = tuple(relabeled.ravel().tolist())
        if best is None or key < best:
            best = key
    return best


def enumerate_monoids(n: int, up_to_iso: bool = False) -> Iterator[FiniteMonoid]:
    """All monoids on ``{0..n-1}`` with unit 0, in lexicographic table order."""
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}")
    seen = set()
    for table in _labeled_tables(n):
        if up_to_iso:
            key = canonical_table(table)
            if key in seen:
                continue
            seen.add(key)
        yield FiniteMonoid(table)


@lru_cache(maxsize=None)
def all_monoids(n: int, up_to_iso: bool = False) -> tuple:
    return tuple(enumerate_monoids(n, up_to_iso))


def find_countermodel(basis, ident: Identity, max_order: int = MAX_ORDER) -> Optional[FiniteMonoid]:
    """First monoid, by order then table order, satisfying ``basis`` but not ``ident``."""
    ids = list(basis)
    if ident.lhs == ident.rhs:
        return None
    for n in range(1, min(max_order, MAX_ORDER) + 1):
        for M in all_monoids(n):
            if all(satisfies(M, b) for b in ids) and not satisfies(M, ident):
                return M
    return None
