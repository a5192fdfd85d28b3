"""Words of the free monoid, substitutions and instance matching.

Letters are single characters. The canonical alphabet is ``a``..``z``;
:func:`letter` extends it by index past ``z`` with code points from
U+0100 on, so the letter order is always the code point order.

The empty word prints as ``1``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import total_ordering
from itertools import product
from typing import Iterable, Iterator, Mapping

__all__ = [
    "EMPTY",
    "Identity",
    "Matching",
    "ParseError",
    "Substitution",
    "Word",
    "content",
    "is_square_free",
    "letter",
    "letter_index",
    "match_instances",
    "occ_vector",
    "parse_identity",
    "parse_word",
    "simple_letters",
    "substitute",
    "words_up_to",
]

_EXT_BASE = 0x100


class ParseError(ValueError):
    """Malformed word, identity or file."""


def letter(i: int) -> str:
    """The ``i``-th letter of the canonical alphabet (0 -> ``a``)."""
    if i < 0:
        raise ValueError("letter index must be non-negative")
    if i < 26:
        return chr(ord("a") + i)
    return chr(_EXT_BASE + i - 26)


def letter_index(c: str) -> int:
    o = ord(c)
    if ord("a") <= o <= ord("z"):
        return o - ord("a")
    if o >= _EXT_BASE:
        return o - _EXT_BASE + 26
    raise ValueError(f"{c!r} is not a letter")


@total_ordering
class Word:
    """An immutable word; concatenation is ``+``."""

    __slots__ = ("_s",)

    def __init__(self, letters: "str | Iterable[str] | Word" = ""):
        if isinstance(letters, Word):
            s = letters._s
        elif isinstance(letters, str):
            s = letters
        else:
            s = "".join(letters)
        for c in set(s):
            letter_index(c)
        object.__setattr__(self, "_s", s)

    @classmethod
    def _raw(cls, s: str) -> "Word":
        w = object.__new__(cls)
        object.__setattr__(w, "_s", s)
        return w

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @property
    def letters(self) -> str:
        return self._s

    def __len__(self) -> int:
        return len(self._s)

    def __iter__(self) -> Iterator[str]:
        return iter(self._s)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word._raw(self._s[i])
        return self._s[i]

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word._raw(self._s + other._s)

    def __pow__(self, n: int) -> "Word":
        return Word._raw(self._s * n)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self._s == other._s

    def __hash__(self) -> int:
        return hash(("Word", self._s))

    def __lt__(self, other: "Word") -> bool:
        # shortlex
        return (len(self._s), self._s) < (len(other._s), other._s)

    def __str__(self) -> str:
        return self._s or "1"

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def pretty(self) -> str:
        """Text form with runs folded into powers, e.g. ``x^2y``."""
        if not self._s:
            return "1"
        out = []
        for m in re.finditer(r"(.)\1*", self._s):
            run = m.group(0)
            out.append(run[0] if len(run) == 1 else f"{run[0]}^{len(run)}")
        return "".join(out)


EMPTY = Word("")

_TOKEN = re.compile(r"\s*(?:([a-z])(?:\^([0-9]+))?|(1))")


def parse_word(text: str) -> Word:
    """Parse ``x^2yx``-style syntax; ``1`` is the empty word."""
    text = text.strip()
    if not text:
        raise ParseError("empty input; write 1 for the empty word")
    pos, parts = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        if m.group(1):
            parts.append(m.group(1) * int(m.group(2) or 1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return Word("".join(parts))


@dataclass(frozen=True)
class Identity:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        for side in ("lhs", "rhs"):
            v = getattr(self, side)
            if not isinstance(v, Word):
                object.__setattr__(self, side, parse_word(v) if isinstance(v, str) else Word(v))

    @property
    def trivial(self) -> bool:
        return self.lhs == self.rhs

    def reversed(self) -> "Identity":
        return Identity(self.rhs, self.lhs)

    def content(self) -> frozenset:
        return content(self.lhs) | content(self.rhs)

    def same_as(self, other: "Identity") -> bool:
        """Equality up to swapping sides."""
        return {self.lhs, self.rhs} == {other.lhs, other.rhs}

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


def parse_identity(text: str) -> Identity:
    parts = re.split(r"=|≈", text)
    if len(parts) != 2:
        raise ParseError(f"expected exactly one '=' in {text!r}")
    return Identity(parse_word(parts[0]), parse_word(parts[1]))


def content(w: Word) -> frozenset:
    return frozenset(w.letters)


def occ_vector(w: Word) -> dict:
    return dict(Counter(w.letters))


def simple_letters(w: Word) -> frozenset:
    return frozenset(c for c, k in Counter(w.letters).items() if k == 1)


class Substitution:
    """Finitely supported letter -> word map, extended to an endomorphism.

    Letters outside the support are fixed.
    """

    __slots__ = ("_map",)

    def __init__(self, assignment: Mapping[str, "Word | str"] = ()):
        m = {}
        for k, v in dict(assignment).items():
            if isinstance(v, str):
                v = parse_word(v) if v.strip() and not v.isalpha() else Word(v)
            m[k] = v
        object.__setattr__(self, "_map", m)

    def __setattr__(self, name, value):
        raise AttributeError("Substitution is immutable")

    def __call__(self, w: Word) -> Word:
        m = self._map
        return Word._raw("".join(m[c].letters if c in m else c for c in w.letters))

    def image(self, a: str) -> Word:
        return self._map.get(a, Word._raw(a))

    @property
    def support(self) -> frozenset:
        return frozenset(k for k, v in self._map.items() if v.letters != k)

    def _key(self) -> frozenset:
        return frozenset((k, v) for k, v in self._map.items() if v.letters != k)

    def compose(self, inner: "Substitution") -> "Substitution":
        """``self ∘ inner``: apply ``inner`` first."""
        keys = set(self._map) | set(inner._map)
        return Substitution({k: self(inner.image(k)) for k in keys})

    def restrict(self, letters: Iterable[str]) -> "Substitution":
        return Substitution({k: v for k, v in self._map.items() if k in set(letters)})

    def items(self):
        return sorted(self._map.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, Substitution) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        body = ", ".join(f"{k}->{v}" for k, v in self.items())
        return "{" + body + "}"


def substitute(s: Substitution, w: Word) -> Word:
    return s(w)


def is_square_free(w: Word) -> bool:
    s = w.letters
    n = len(s)
    for half in range(1, n // 2 + 1):
        for i in range(n - 2 * half + 1):
            if s[i:i + half] == s[i + half:i + 2 * half]:
                return False
    return True


@dataclass(frozen=True)
class Matching:
    """A decomposition ``target = prefix · sub(pattern) · suffix``."""

    prefix: Word
    sub: Substitution
    suffix: Word

    def apply(self, w: Word) -> Word:
        return self.prefix + self.sub(w) + self.suffix


def _match_all(pat: str, tgt: str) -> list:
    """``(start, end, assignment)`` for every match of ``pat`` inside ``tgt``.

    Ordered by start, then by image lengths (shortest first) of the
    pattern letters in order of first occurrence.
    """
    n, m = len(tgt), len(pat)
    # tail[i][c]: occurrences of c in pat[i:]
    tail = [None] * (m + 1)
    tail[m] = {}
    for i in range(m - 1, -1, -1):
        d = dict(tail[i + 1])
        d[pat[i]] = d.get(pat[i], 0) + 1
        tail[i] = d
    out = []
    assign: dict = {}

    def rec(i, pos, start):
        if i == m:
            out.append((start, pos, dict(assign)))
            return
        c = pat[i]
        img = assign.get(c)
        if img is not None:
            if tgt.startswith(img, pos):
                rec(i + 1, pos + len(img), start)
            return
        room = n - pos
        for d, cnt in tail[i].items():
            if d != c and d in assign:
                room -= cnt * len(assign[d])
        k = tail[i][c]
        for length in range(room // k + 1):
            assign[c] = tgt[pos:pos + length]
            rec(i + 1, pos + length, start)
        del assign[c]

    for start in range(n + 1):
        rec(0, start, start)
    return out


def match_instances(pattern: Word, target: Word) -> list[Matching]:
    """Every ``(a, ξ, b)`` with ``a · ξ(pattern) · b == target``.

    ``ξ`` is given on the letters of ``pattern`` only (identity elsewhere).
    The list is duplicate free and ordered by prefix length, then by image
    lengths in order of first occurrence in the pattern.
    """
    pat, tgt = pattern.letters, target.letters
    return [
        Matching(
            Word._raw(tgt[:start]),
            Substitution({k: Word._raw(v) for k, v in assign.items()}),
            Word._raw(tgt[end:]),
        )
        for start, end, assign in _match_all(pat, tgt)
    ]


def words_up_to(letters: Iterable[str], max_len: int, min_len: int = 0) -> Iterator[Word]:
    """All words over ``letters`` with ``min_len <= length <= max_len``, shortlex order."""
    letters = sorted(letters)
    for n in range(min_len, max_len + 1):
        for t in product(letters, repeat=n):
            yield Word._raw("".join(t))
