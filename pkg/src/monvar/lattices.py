"""Finite lattices and special elements.

A lattice is given by its order relation; meets and joins are derived on
construction.  Each element predicate comes with a witness finder that
returns the lexicographically least violating pair ``(y, z)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from .words import ParseError

__all__ = [
    "PREDICATES",
    "ElementReport",
    "FiniteLattice",
    "LatticeError",
    "M3",
    "N5",
    "LAWS",
    "analyze",
    "check_laws",
    "law_census",
    "boolean",
    "chain",
    "enumerate_lattices",
    "format_lattice",
    "grid",
    "is_codistributive",
    "is_costandard",
    "is_distributive",
    "is_lower_modular",
    "is_modular",
    "is_neutral",
    "is_upper_modular",
    "jezek_pair",
    "lattice_count",
    "load_lattice",
    "modular_via_pairs",
    "named",
    "neutral_via_triples",
    "parse_lattice",
    "report",
    "witness",
]

MAX_ENUM_SIZE = 7


class LatticeError(ValueError):
    pass


class FiniteLattice:
    def __init__(self, leq, labels=None):
        r = np.asarray(leq, dtype=bool)
        if r.ndim != 2 or r.shape[0] != r.shape[1] or r.shape[0] < 1:
            raise LatticeError("order must be a non-empty square 0/1 matrix")
        n = r.shape[0]
        for i in range(n):
            if not r[i, i]:
                raise LatticeError(f"not reflexive at {i}")
        for i, j in itertools.combinations(range(n), 2):
            if r[i, j] and r[j, i]:
                raise LatticeError(f"not antisymmetric at ({i}, {j})")
        for i, j, k in itertools.product(range(n), repeat=3):
            if r[i, j] and r[j, k] and not r[i, k]:
                raise LatticeError(f"not transitive at ({i}, {j}, {k})")
        self.leq = r
        self.size = n
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.join = self._bounds(r, "join")
        self.meet = self._bounds(r.T, "meet")
        for a, b in itertools.product(range(n), repeat=2):
            if self.join[a][self.meet[a][b]] != a or self.meet[a][self.join[a][b]] != a:
                raise LatticeError(f"absorption fails at ({a}, {b})")
        self._le = [[bool(r[i, j]) for j in range(n)] for i in range(n)]

    @staticmethod
    def _bounds(r, what):
        # least upper bounds with respect to r (meets come from the transpose)
        n = r.shape[0]
        out = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                ub = np.flatnonzero(r[a] & r[b])
                least = [k for k in ub if r[k, ub].all()]
                if len(least) != 1:
                    raise LatticeError(f"no {what} for ({a}, {b})")
                out[a][b] = out[b][a] = int(least[0])
        return out

    def le(self, a: int, b: int) -> bool:
        return self._le[a][b]

    @property
    def bottom(self) -> int:
        return self.meet_all(range(self.size))

    @property
    def top(self) -> int:
        return self.join_all(range(self.size))

    def meet_all(self, xs) -> int:
        xs = list(xs)
        out = xs[0]
        for x in xs[1:]:
            out = self.meet[out][x]
        return out

    def join_all(self, xs) -> int:
        xs = list(xs)
        out = xs[0]
        for x in xs[1:]:
            out = self.join[out][x]
        return out

    def __repr__(self):
        return f"<FiniteLattice size={self.size}>"


# Each law(L, x, y, z) is True when the defining condition holds (or is vacuous).

def _neutral(L, x, y, z):
    m, j = L.meet, L.join
    lhs = m[m[j[x][y]][j[y][z]]][j[z][x]]
    rhs = j[j[m[x][y]][m[y][z]]][m[z][x]]
    return lhs == rhs


def _costandard(L, x, y, z):
    m, j = L.meet, L.join
    return j[m[x][y]][z] == m[j[x][z]][j[y][z]]


def _codistributive(L, x, y, z):
    m, j = L.meet, L.join
    return m[x][j[y][z]] == j[m[x][y]][m[x][z]]


def _modular(L, x, y, z):
    if not L.le(y, z):
        return True
    m, j = L.meet, L.join
    return m[j[x][y]][z] == j[m[x][z]][y]


def _upper_modular(L, x, y, z):
    if not L.le(y, x):
        return True
    m, j = L.meet, L.join
    return m[x][j[y][z]] == j[y][m[x][z]]


def _lower_modular(L, x, y, z):
    if not L.le(x, y):
        return True
    m, j = L.meet, L.join
    return j[x][m[y][z]] == m[y][j[x][z]]


PREDICATES: dict = {
    "neutral": _neutral,
    "costandard": _costandard,
    "codistributive": _codistributive,
    "modular": _modular,
    "upper_modular": _upper_modular,
    "lower_modular": _lower_modular,
}


def witness(L: FiniteLattice, x: int, name: str) -> Optional[tuple]:
    """Least ``(y, z)`` violating predicate ``name`` at ``x``, or ``None``."""
    law = PREDICATES[name]
    for y in range(L.size):
        for z in range(L.size):
            if not law(L, x, y, z):
                return (y, z)
    return None


def is_neutral(L, x):
    return witness(L, x, "neutral") is None


def is_costandard(L, x):
    return witness(L, x, "costandard") is None


def is_codistributive(L, x):
    return witness(L, x, "codistributive") is None


def is_modular(L, x):
    return witness(L, x, "modular") is None


def is_upper_modular(L, x):
    return witness(L, x, "upper_modular") is None


def is_lower_modular(L, x):
    return witness(L, x, "lower_modular") is None


@dataclass
class ElementReport:
    element: int
    flags: dict
    witnesses: dict = field(default_factory=dict)

    def to_dict(self, L: Optional[FiniteLattice] = None) -> dict:
        lab = (lambda i: L.labels[i]) if L is not None else (lambda i: i)
        return {
            "element": lab(self.element),
            "flags": dict(self.flags),
            "witnesses": {k: [lab(y), lab(z)] for k, (y, z) in self.witnesses.items()},
        }


def report(L: FiniteLattice, x: int) -> ElementReport:
    flags, wits = {}, {}
    for name in PREDICATES:
        w = witness(L, x, name)
        flags[name] = w is None
        if w is not None:
            wits[name] = w
    return ElementReport(x, flags, wits)


def analyze(L: FiniteLattice) -> list:
    return [report(L, x) for x in range(L.size)]


def _sublattice(L: FiniteLattice, gens) -> list:
    s = set(gens)
    while True:
        new = {L.meet[a][b] for a in s for b in s} | {L.join[a][b] for a in s for b in s}
        if new <= s:
            return sorted(s)
        s |= new


def _distributive_on(L: FiniteLattice, elems) -> bool:
    m, j = L.meet, L.join
    for a, b, c in itertools.product(elems, repeat=3):
        if m[a][j[b][c]] != j[m[a][b]][m[a][c]]:
            return False
    return True


def is_distributive(L: FiniteLattice) -> bool:
    return _distributive_on(L, range(L.size))


def neutral_via_triples(L: FiniteLattice, x: int) -> bool:
    """``x`` is neutral iff every ``{x, y, z}`` generates a distributive sublattice."""
    for y in range(L.size):
        for z in range(y, L.size):
            if not _distributive_on(L, _sublattice(L, (x, y, z))):
                return False
    return True


def jezek_pair(L: FiniteLattice, x: int) -> Optional[tuple]:
    """Least ``u < w`` with equal meets and joins against ``x``, if any."""
    m, j = L.meet, L.join
    for u in range(L.size):
        for w in range(L.size):
            if u != w and L.le(u, w) and m[u][x] == m[w][x] and j[u][x] == j[w][x]:
                return (u, w)
    return None


def modular_via_pairs(L: FiniteLattice, x: int) -> bool:
    return jezek_pair(L, x) is None


# --- constructions ---------------------------------------------------------

def _from_relation(n, le, labels=None) -> FiniteLattice:
    return FiniteLattice([[le(i, j) for j in range(n)] for i in range(n)], labels)


def chain(n: int) -> FiniteLattice:
    if n < 1:
        raise LatticeError("chain needs n >= 1")
    return _from_relation(n, lambda i, j: i <= j)


def boolean(k: int) -> FiniteLattice:
    """Subsets of a ``k``-set; element ``i`` is the bitmask ``i``."""
    if k < 0:
        raise LatticeError("boolean needs k >= 0")
    return _from_relation(1 << k, lambda i, j: i & j == i)


def M3() -> FiniteLattice:
    rel = {(0, i) for i in range(5)} | {(i, 4) for i in range(5)} | {(i, i) for i in range(5)}
    return _from_relation(5, lambda i, j: (i, j) in rel, ["0", "a", "b", "c", "1"])


def N5() -> FiniteLattice:
    # 0 < a < c < 1 and 0 < b < 1
    rel = {(0, i) for i in range(5)} | {(i, 4) for i in range(5)} | {(i, i) for i in range(5)}
    rel.add((1, 3))
    return _from_relation(5, lambda i, j: (i, j) in rel, ["0", "a", "b", "c", "1"])


def grid(N: int, H: int) -> FiniteLattice:
    """Pairs ``(d, h)``, ``d | N``, ``0 <= h <= H``, ordered by divisibility and ``<=``.

    ``(d, h)`` models the join of the Abelian group variety of exponent
    ``d`` with the ``h``-th member of the chain T, SL, C2, C3, ...  Meets
    are taken componentwise, which is a modelling assumption.
    """
    if N < 1 or H < 0:
        raise LatticeError("grid needs N >= 1 and H >= 0")
    divs = [d for d in range(1, N + 1) if N % d == 0]
    elems = [(d, h) for d in divs for h in range(H + 1)]
    labels = [f"{d},{h}" for d, h in elems]
    lat = _from_relation(
        len(elems),
        lambda i, j: elems[j][0] % elems[i][0] == 0 and elems[i][1] <= elems[j][1],
        labels,
    )
    lat.pairs = elems
    return lat


_NAMED: dict = {"chain": chain, "boolean": boolean, "M3": M3, "N5": N5, "grid": grid}


def named(name: str, *params) -> FiniteLattice:
    """Named lattice; ``named("grid(12, 4)")`` call syntax also works."""
    if not params and "(" in name:
        head, rest = name.split("(", 1)
        args = [int(a) for a in rest.rstrip(")").split(",") if a.strip()]
        return named(head.strip(), *args)
    if name not in _NAMED:
        raise LatticeError(f"unknown lattice {name!r}")
    try:
        return _NAMED[name](*params)
    except TypeError as e:
        raise LatticeError(f"bad parameters for {name}: {e}") from None


def parse_lattice(text: str) -> FiniteLattice:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty lattice file")
    try:
        n = int(lines[0])
        rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except ValueError as e:
        raise ParseError(f"bad lattice file: {e}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"expected {n} rows of {n} entries")
    if any(v not in (0, 1) for r in rows for v in r):
        raise ParseError("entries must be 0 or 1")
    return FiniteLattice(rows)


def load_lattice(spec: str) -> FiniteLattice:
    p = Path(spec)
    if p.exists():
        return parse_lattice(p.read_text(encoding="utf-8"))
    return named(spec)


def format_lattice(L: FiniteLattice) -> str:
    rows = [" ".join("1" if v else "0" for v in row) for row in L.leq]
    return "\n".join([str(L.size)] + rows) + "\n"


def _labeled_posets(m: int) -> Iterator[np.ndarray]:
    pairs = list(itertools.combinations(range(m), 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        r = np.eye(m, dtype=bool)
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                r[i, j] = True
            elif c == 2:
                r[j, i] = True
        # transitive iff r∘r ⊆ r
        if not ((r.astype(np.uint8) @ r.astype(np.uint8)) > 0)[~r].any():
            yield r


def enumerate_lattices(n: int) -> Iterator[FiniteLattice]:
    """All lattices on ``{0..n-1}`` with bottom 0 and top ``n-1``."""
    if not 1 <= n <= MAX_ENUM_SIZE:
        raise ValueError(f"size must be in 1..{MAX_ENUM_SIZE}")
    if n == 1:
        yield chain(1)
        return
    for mid in _labeled_posets(n - 2):
        r = np.zeros((n, n), dtype=bool)
        r[0, :] = True
        r[:, n - 1] = True
        r[1:n - 1, 1:n - 1] = mid
        try:
            yield FiniteLattice(r)
        except LatticeError:
            continue


@lru_cache(maxsize=None)
def lattice_count(n: int) -> int:
    return sum(1 for _ in enumerate_lattices(n))


# Implications between the predicates, each as (name, premises, conclusion).
LAWS = (
    ("neutral => costandard", ("neutral",), "costandard"),
    ("neutral => lower_modular", ("neutral",), "lower_modular"),
    ("costandard => modular", ("costandard",), "modular"),
    ("costandard => codistributive", ("costandard",), "codistributive"),
    ("codistributive => upper_modular", ("codistributive",), "upper_modular"),
    ("modular & codistributive => costandard", ("modular", "codistributive"), "costandard"),
)


def check_laws(L: FiniteLattice) -> list:
    """Counterexamples in ``L`` to the implications and to both equivalences."""
    bad = []
    for x in range(L.size):
        r = report(L, x)
        f = r.flags
        for name, prem, concl in LAWS:
            if all(f[p] for p in prem) and not f[concl]:
                bad.append({"law": name, "element": x})
        if f["neutral"] != neutral_via_triples(L, x):
            bad.append({"law": "neutral <=> triples distributive", "element": x})
        pair = jezek_pair(L, x)
        if f["modular"] != (pair is None):
            bad.append({"law": "modular <=> no Jezek pair", "element": x})
        if not f["modular"]:
            y, z = r.witnesses["modular"]
            u = L.join[L.meet[x][z]][y]
            w = L.meet[L.join[x][y]][z]
            ok = (
                u != w and L.le(u, w)
                and L.meet[u][x] == L.meet[w][x]
                and L.join[u][x] == L.join[w][x]
            )
            if not ok:
                bad.append({"law": "modular witness yields Jezek pair", "element": x})
    return bad


def law_census(max_size: int) -> dict:
    """Run :func:`check_laws` on every enumerated lattice up to ``max_size``."""
    lattices = elements = 0
    counterexamples = []
    per_size = {}
    for n in range(1, max_size + 1):
        count = 0
        for L in enumerate_lattices(n):
            count += 1
            elements += L.size
            for c in check_laws(L):
                counterexamples.append({"size": n, "leq": L.leq.astype(int).tolist(), **c})
        per_size[n] = count
        lattices += count
    return {
        "max_size": max_size,
        "lattices": lattices,
        "elements": elements,
        "per_size": per_size,
        "counterexamples": counterexamples,
    }
