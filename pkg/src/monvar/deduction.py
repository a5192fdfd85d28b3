"""Equational deduction from a finite basis of monoid identities.

A deduction step rewrites ``a·ξ(u)·b`` into ``a·ξ(v)·b`` for some
identity ``u = v`` of the basis, used in either direction.  Successor
sets are exact because :func:`~monvar.words.match_instances` is complete.
"""

from __future__ import annotations

import warnings
from functools import lru_cache
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .words import (
    Identity,
    Matching,
    ParseError,
    Word,
    _match_all,
    match_instances,
    parse_identity,
)

__all__ = [
    "BUILTIN_BASES",
    "Basis",
    "Deduction",
    "DeductionStep",
    "DerivationReport",
    "builtin_basis",
    "deduction_search",
    "derives_basis",
    "format_basis",
    "is_isoterm",
    "load_basis",
    "parse_basis",
    "reachable",
    "step_successors",
    "verify_deduction",
    "SQUARE_FREE_LEFT",
    "SQUARE_FREE_RIGHT",
]

DEFAULT_MAX_STEPS = 8
LENGTH_SLACK = 4

SQUARE_FREE_LEFT = Word("yxyzxz")
SQUARE_FREE_RIGHT = Word("yxzxyxz")


@dataclass(frozen=True)
class Basis:
    identities: tuple
    name: Optional[str] = None

    def __init__(self, identities=(), name=None):
        kept = []
        for ident in identities:
            if isinstance(ident, str):
                ident = parse_identity(ident)
            if ident.trivial:
                warnings.warn(f"dropping trivial identity {ident}", stacklevel=2)
                continue
            if ident not in kept:
                kept.append(ident)
        object.__setattr__(self, "identities", tuple(kept))
        object.__setattr__(self, "name", name)

    def __iter__(self):
        return iter(self.identities)

    def __len__(self):
        return len(self.identities)

    def __contains__(self, ident) -> bool:
        return ident in self.identities

    def __str__(self):
        return "{" + ", ".join(map(str, self.identities)) + "}"


BUILTIN_BASES = {
    "C2": ("x^2 = x^3", "xy = yx"),
    "D": ("x^2 = x^3", "x^2y = xyx", "xyx = yx^2"),
    "B23": ("x^2 = x^3",),
    "Q": (f"{SQUARE_FREE_LEFT} = {SQUARE_FREE_RIGHT}",),
    "E": ("x^2 = x^3", "x^2y = xyx", "x^2y^2 = y^2x^2"),
    "F": ("xyx = xyx^2", "x^2y^2 = y^2x^2", "x^2y = x^2yx", "xytxy = yxtxy"),
}


def builtin_basis(name: str) -> Basis:
    key = name.lstrip("@")
    if key not in BUILTIN_BASES:
        raise ParseError(f"unknown built-in basis @{key}; known: {sorted(BUILTIN_BASES)}")
    return Basis([parse_identity(t) for t in BUILTIN_BASES[key]], name=key)


def parse_basis(text: str, name: Optional[str] = None) -> Basis:
    """One identity per line, ``#`` starts a comment."""
    if text.strip().startswith("@") and "\n" not in text.strip():
        return builtin_basis(text.strip())
    ids = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            ids.append(parse_identity(line))
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from None
    return Basis(ids, name=name)


def load_basis(spec: str) -> Basis:
    """``@NAME`` for a built-in basis, otherwise a path to a basis file."""
    if spec.startswith("@"):
        return builtin_basis(spec)
    p = Path(spec)
    return parse_basis(p.read_text(encoding="utf-8"), name=p.stem)


def format_basis(basis: Basis) -> str:
    return "".join(f"{i}\n" for i in basis.identities)


@dataclass(frozen=True)
class DeductionStep:
    used: Identity
    direction: str  # "forward" rewrites lhs -> rhs
    matching: Matching
    source: Word
    target: Word

    def oriented(self) -> tuple:
        u, v = self.used.lhs, self.used.rhs
        return (u, v) if self.direction == "forward" else (v, u)

    def check(self) -> bool:
        u, v = self.oriented()
        return self.matching.apply(u) == self.source and self.matching.apply(v) == self.target

    def to_dict(self) -> dict:
        m = self.matching
        return {
            "used": str(self.used),
            "direction": self.direction,
            "prefix": str(m.prefix),
            "sub": {k: str(v) for k, v in m.sub.items()},
            "suffix": str(m.suffix),
            "from": str(self.source),
            "to": str(self.target),
        }


@dataclass(frozen=True)
class Deduction:
    words: tuple
    steps: tuple = field(default=())

    def __len__(self):
        return len(self.steps)

    def __str__(self):
        return " -> ".join(str(w) for w in self.words)

    def to_dict(self) -> dict:
        return {
            "length": len(self.steps),
            "words": [str(w) for w in self.words],
            "steps": [s.to_dict() for s in self.steps],
        }


def _orientations(basis: Basis):
    for ident in basis.identities:
        yield ident, "forward", ident.lhs, ident.rhs
        yield ident, "backward", ident.rhs, ident.lhs


def iter_steps(w: Word, basis: Basis) -> Iterator[DeductionStep]:
    """All one-step rewrites of ``w``, in (identity, direction, matching) order."""
    for ident, direction, u, v in _orientations(basis):
        for m in match_instances(u, w):
            yield DeductionStep(ident, direction, m, w, m.apply(v))


def _successor_strings(w: str, oriented: Sequence[tuple]) -> Iterator[str]:
    # Fast path for search: same order as iter_steps, no Matching objects.
    for u, v in oriented:
        for start, end, assign in _match_all(u, w):
            yield w[:start] + "".join([assign.get(c, c) for c in v]) + w[end:]


def _oriented_strings(basis: Basis) -> tuple:
    return tuple((u.letters, v.letters) for _, _, u, v in _orientations(basis))


@lru_cache(maxsize=1 << 18)
def _distinct_successors(w: str, oriented: tuple) -> tuple:
    # first-occurrence order is kept, so searches stay deterministic
    return tuple(dict.fromkeys(_successor_strings(w, oriented)))


def step_successors(w: Word, basis: Basis) -> set:
    return {Word._raw(s) for s in _successor_strings(w.letters, _oriented_strings(basis))}


def is_isoterm(w: Word, basis: Basis) -> bool:
    """Exact: ``w`` is an isoterm iff every one-step rewrite of it is ``w``."""
    s = w.letters
    return all(r == s for r in _successor_strings(s, _oriented_strings(basis)))


def _bfs(start: str, basis: Basis, max_len: int, max_steps: Optional[int], goal: Optional[str] = None):
    oriented = _oriented_strings(basis)
    parent = {start: None}
    depth = 0
    frontier = [start]
    if goal == start:
        return parent
    while frontier and (max_steps is None or depth < max_steps):
        depth += 1
        nxt = []
        for w in frontier:
            for r in _distinct_successors(w, oriented):
                if len(r) > max_len or r in parent:
                    continue
                parent[r] = w
                if r == goal:
                    return parent
                nxt.append(r)
        frontier = nxt
    return parent


def reachable(w: Word, basis: Basis, max_len: int, max_steps: Optional[int] = None) -> dict:
    """Words reachable from ``w`` through words of length ``<= max_len``, with distances."""
    parent = _bfs(w.letters, basis, max_len, max_steps)
    dist = {}
    for s in parent:  # insertion order is BFS order
        p = parent[s]
        dist[Word._raw(s)] = 0 if p is None else dist[Word._raw(p)] + 1
    return dist


def _step_between(a: Word, b: Word, basis: Basis) -> DeductionStep:
    for step in iter_steps(a, basis):
        if step.target == b:
            return step
    raise AssertionError(f"no step from {a} to {b}")


def default_max_len(source: Word, target: Word) -> int:
    return len(source) + len(target) + LENGTH_SLACK


def deduction_search(
    source: Word,
    target: Word,
    basis: Basis,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_len: Optional[int] = None,
) -> Optional[Deduction]:
    """Shortest deduction of ``source = target`` from ``basis`` within bounds.

    Breadth first; words longer than ``max_len`` are pruned.  ``None``
    means nothing was found within the bounds, not that none exists.
    """
    if max_len is None:
        max_len = default_max_len(source, target)
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    if max_len < max(len(source), len(target)):
        raise ValueError("max_len is shorter than an endpoint")
    parent = _bfs(source.letters, basis, max_len, max_steps, goal=target.letters)
    if target.letters not in parent:
        return None
    path = [target.letters]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    words = tuple(Word._raw(s) for s in reversed(path))
    steps = tuple(_step_between(a, b, basis) for a, b in zip(words, words[1:]))
    return Deduction(words, steps)


def verify_deduction(d: Deduction, basis: Basis) -> bool:
    words = d.words
    if not words or len(d.steps) != len(words) - 1:
        return False
    if len(set(words)) != len(words):
        return False
    for i, step in enumerate(d.steps):
        if step.used not in basis:
            return False
        if step.direction not in ("forward", "backward"):
            return False
        if step.source != words[i] or step.target != words[i + 1]:
            return False
        if not step.check():
            return False
    return True


@dataclass(frozen=True)
class DerivationReport:
    identity: Identity
    deduction: Optional[Deduction]

    @property
    def proved(self) -> bool:
        return self.deduction is not None

    @property
    def status(self) -> str:
        return "Proved" if self.proved else "NotWithinBounds"


def derives_basis(
    source: Basis,
    target: Basis,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_len: Optional[int] = None,
) -> list:
    out = []
    for ident in target.identities:
        d = deduction_search(ident.lhs, ident.rhs, source, max_steps, max_len)
        out.append(DerivationReport(ident, d))
    return out
