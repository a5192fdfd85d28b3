"""Equational theories of concrete monoid varieties.

Atoms with a known normal form get exact deciders; varieties given only
by a basis get a three-valued one (deduction, isoterms, countermodels).
Every ``Fails`` carries a witness that :func:`check_witness` re-verifies.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from . import monoids as mon
from .deduction import (
    DEFAULT_MAX_STEPS,
    Basis,
    Deduction,
    builtin_basis,
    deduction_search,
    default_max_len,
    is_isoterm,
    load_basis,
)
from .words import (
    Identity,
    ParseError,
    Substitution,
    Word,
    content,
    occ_vector,
    simple_letters,
)

__all__ = [
    "Atom",
    "BasisVariety",
    "Join",
    "Verdict",
    "Witness",
    "check_witness",
    "d_normal_form",
    "decide",
    "decide_A",
    "decide_C",
    "decide_COM",
    "decide_D",
    "decide_SL",
    "decide_basis",
    "is_completely_regular",
    "is_group_basis",
    "parse_variety",
    "star_basis",
]

HOLDS, FAILS, UNKNOWN = "Holds", "Fails", "Unknown"


@dataclass(frozen=True)
class Atom:
    kind: str  # T, SL, MON, COM, A, C, D
    n: Optional[int] = None

    def __post_init__(self):
        if self.kind in ("A", "C"):
            if self.n is None or self.n < 1:
                raise ValueError(f"{self.kind}(n) needs n >= 1")
        elif self.kind not in ("T", "SL", "MON", "COM", "D"):
            raise ValueError(f"unknown variety {self.kind!r}")

    def __str__(self):
        return f"{self.kind}({self.n})" if self.n is not None else self.kind


@dataclass(frozen=True)
class BasisVariety:
    basis: Basis

    def __str__(self):
        return f"@{self.basis.name}" if self.basis.name else f"var{self.basis}"


@dataclass(frozen=True)
class Join:
    left: "VarietyExpr"
    right: "VarietyExpr"

    def __str__(self):
        return f"{self.left} v {self.right}"


VarietyExpr = Union[Atom, BasisVariety, Join]


def normalize(v: VarietyExpr) -> VarietyExpr:
    """``A(1)`` is ``T``; ``C(1)`` is ``SL``."""
    if isinstance(v, Atom):
        if v.kind == "A" and v.n == 1:
            return Atom("T")
        if v.kind == "C" and v.n == 1:
            return Atom("SL")
    if isinstance(v, Join):
        return Join(normalize(v.left), normalize(v.right))
    return v


_ATOM = re.compile(r"^(T|SL|MON|COM|D)$|^(A|C)\(\s*([0-9]+)\s*\)$")

# named bases that have a full decider are mapped onto it
_NAMED_ATOMS = {"C2": Atom("C", 2), "D": Atom("D")}


def parse_variety(text: str) -> VarietyExpr:
    """``T | SL | MON | COM | A(n) | C(n) | D | @name | basis:<file>``, joined by ``v``."""
    parts = re.split(r"\s+v\s+", text.strip())
    if not parts or not parts[0]:
        raise ParseError("empty variety expression")
    exprs = [_parse_one(p.strip()) for p in parts]
    out = exprs[0]
    for e in exprs[1:]:
        out = Join(out, e)
    return out


def _parse_one(tok: str) -> VarietyExpr:
    m = _ATOM.match(tok)
    if m:
        if m.group(1):
            return Atom(m.group(1))
        return normalize(Atom(m.group(2), int(m.group(3))))
    if tok.startswith("@"):
        key = tok[1:]
        if key in _NAMED_ATOMS:
            return _NAMED_ATOMS[key]
        return BasisVariety(builtin_basis(key))
    if tok.startswith("basis:"):
        return BasisVariety(load_basis(tok[len("basis:"):]))
    raise ParseError(f"cannot parse variety {tok!r}")


@dataclass(frozen=True)
class Witness:
    """Evidence for a failed identity.

    ``kind`` is one of ``monoid`` (a finite monoid plus a separating
    assignment), ``isoterm`` (a side that is an isoterm for ``basis``),
    ``normal-form`` (differing normal-form data of a full decider) or
    ``free-monoid`` (distinct words).
    """

    kind: str
    detail: str
    monoid: Optional[mon.FiniteMonoid] = None
    assignment: Optional[dict] = None
    word: Optional[Word] = None
    basis: Optional[Basis] = None
    decider: Optional[str] = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "detail": self.detail}
        if self.monoid is not None:
            d["monoid"] = self.monoid.table.tolist()
            d["monoid_name"] = self.monoid.name
            d["assignment"] = self.assignment
        if self.word is not None:
            d["word"] = str(self.word)
        if self.decider is not None:
            d["decider"] = self.decider
        return d


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Optional[Witness] = None
    certificate: Optional[Deduction] = None
    bounds: Optional[dict] = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS

    def to_dict(self) -> dict:
        d = {"status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_dict()
        if self.bounds is not None:
            d["bounds"] = self.bounds
        if self.note:
            d["note"] = self.note
        return d


def _holds(note: str = "") -> Verdict:
    return Verdict(HOLDS, note=note)


def _monoid_fail(M: mon.FiniteMonoid, letter_value: dict, ident: Identity, detail: str) -> Verdict:
    assignment = {c: letter_value.get(c, 0) for c in sorted(ident.content())}
    return Verdict(FAILS, Witness("monoid", detail, monoid=M, assignment=assignment))


def _first_letter(u: Word, v: Word, differs) -> Optional[str]:
    for c in sorted(content(u) | content(v)):
        if differs(c):
            return c
    return None


def decide_SL(ident: Identity) -> Verdict:
    u, v = ident.lhs, ident.rhs
    a = _first_letter(u, v, lambda c: (c in u.letters) != (c in v.letters))
    if a is None:
        return _holds()
    return _monoid_fail(mon.semilattice_2(), {a: 1}, ident, f"letter {a} occurs on one side only")


def decide_A(n: int, ident: Identity) -> Verdict:
    if n == 1:
        return _holds()
    ou, ov = occ_vector(ident.lhs), occ_vector(ident.rhs)
    a = _first_letter(ident.lhs, ident.rhs, lambda c: (ou.get(c, 0) - ov.get(c, 0)) % n)
    if a is None:
        return _holds()
    return _monoid_fail(
        mon.cyclic_group(n), {a: 1}, ident,
        f"occurrences of {a}: {ou.get(a, 0)} vs {ov.get(a, 0)}, not congruent mod {n}",
    )


def decide_C(n: int, ident: Identity) -> Verdict:
    ou, ov = occ_vector(ident.lhs), occ_vector(ident.rhs)
    a = _first_letter(ident.lhs, ident.rhs, lambda c: min(ou.get(c, 0), n) != min(ov.get(c, 0), n))
    if a is None:
        return _holds()
    return _monoid_fail(
        mon.cyclic_aperiodic(n), {a: 1}, ident,
        f"occurrences of {a} capped at {n}: {min(ou.get(a, 0), n)} vs {min(ov.get(a, 0), n)}",
    )


def decide_COM(ident: Identity) -> Verdict:
    ou, ov = occ_vector(ident.lhs), occ_vector(ident.rhs)
    a = _first_letter(ident.lhs, ident.rhs, lambda c: ou.get(c, 0) != ov.get(c, 0))
    if a is None:
        return _holds()
    top = max(ou.get(a, 0), ov.get(a, 0))
    return _monoid_fail(
        mon.cyclic_aperiodic(top), {a: 1}, ident,
        f"occurrences of {a}: {ou.get(a, 0)} vs {ov.get(a, 0)}",
    )


def d_normal_form(w: Word) -> tuple:
    """(sequence of simple letters in order, set of non-simple letters)."""
    simple = simple_letters(w)
    return "".join(c for c in w.letters if c in simple), frozenset(content(w) - simple)


def decide_D(ident: Identity) -> Verdict:
    fu, fv = d_normal_form(ident.lhs), d_normal_form(ident.rhs)
    if fu == fv:
        return _holds()
    detail = (
        f"simple letters {fu[0] or '1'} vs {fv[0] or '1'}; "
        f"non-simple {''.join(sorted(fu[1])) or '-'} vs {''.join(sorted(fv[1])) or '-'}"
    )
    return Verdict(FAILS, Witness("normal-form", detail, decider="D"))


def _builtin_candidates():
    out = [mon.semilattice_2(), mon.left_zero_unit(), mon.right_zero_unit()]
    out += [mon.cyclic_group(n) for n in (2, 3, 4)]
    out += [mon.cyclic_aperiodic(n) for n in (1, 2, 3, 4)]
    return out


def decide_basis(
    basis: Basis,
    ident: Identity,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_len: Optional[int] = None,
    max_order: int = mon.MAX_ORDER,
) -> Verdict:
    u, v = ident.lhs, ident.rhs
    if u == v:
        return Verdict(HOLDS, certificate=Deduction((u,), ()))
    for side in (u, v):
        if is_isoterm(side, basis):
            return Verdict(FAILS, Witness(
                "isoterm", f"{side} is an isoterm for the basis", word=side, basis=basis,
            ))
    if max_len is None:
        max_len = default_max_len(u, v)
    d = deduction_search(u, v, basis, max_steps, max_len)
    if d is not None:
        return Verdict(HOLDS, certificate=d)
    for M in _builtin_candidates():
        if all(mon.satisfies(M, b) for b in basis) and not mon.satisfies(M, ident):
            return _monoid_fail(M, mon.violation(M, ident), ident, f"{M.name} satisfies the basis")
    M = mon.find_countermodel(basis, ident, max_order)
    if M is not None:
        return _monoid_fail(M, mon.violation(M, ident), ident, f"order-{M.order} model of the basis")
    return Verdict(UNKNOWN, bounds={"max_steps": max_steps, "max_len": max_len, "max_order": max_order})


def decide(v: VarietyExpr, ident: Identity) -> Verdict:
    v = normalize(v)
    if isinstance(v, Join):
        left, right = decide(v.left, ident), decide(v.right, ident)
        for side, r in (("left", left), ("right", right)):
            if r.fails:
                return Verdict(FAILS, r.witness, note=f"fails in {side} joinand {getattr(v, side)}")
        if left.holds and right.holds:
            return _holds()
        return Verdict(UNKNOWN, bounds=(left.bounds or right.bounds))
    if isinstance(v, BasisVariety):
        return decide_basis(v.basis, ident)
    k = v.kind
    if k == "T":
        return _holds()
    if k == "MON":
        if ident.lhs == ident.rhs:
            return _holds()
        return Verdict(FAILS, Witness("free-monoid", "distinct words of the free monoid"))
    if k == "SL":
        return decide_SL(ident)
    if k == "COM":
        return decide_COM(ident)
    if k == "A":
        return decide_A(v.n, ident)
    if k == "C":
        return decide_C(v.n, ident)
    if k == "D":
        return decide_D(ident)
    raise AssertionError(k)


def check_witness(w: Witness, ident: Identity) -> bool:
    """Re-verify a ``Fails`` witness from scratch."""
    if w.kind == "monoid":
        M = mon.FiniteMonoid(w.monoid.table)
        vals = {c: [w.assignment.get(c, 0)] for c in ident.content()}
        return int(M.evaluate(ident.lhs, vals)[0]) != int(M.evaluate(ident.rhs, vals)[0])
    if w.kind == "isoterm":
        return w.word in (ident.lhs, ident.rhs) and ident.lhs != ident.rhs and is_isoterm(w.word, w.basis)
    if w.kind == "normal-form":
        return w.decider == "D" and d_normal_form(ident.lhs) != d_normal_form(ident.rhs)
    if w.kind == "free-monoid":
        return ident.lhs != ident.rhs
    return False


def star_basis(sigma: Basis, n: int) -> Basis:
    """Image of ``sigma`` under the endomorphism sending each letter ``a`` to ``a^(n+1)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ids = []
    for ident in sigma:
        zeta = Substitution({c: Word(c * (n + 1)) for c in ident.content()})
        ids.append(Identity(zeta(ident.lhs), zeta(ident.rhs)))
    name = f"{sigma.name}*{n}" if sigma.name else None
    return Basis(ids, name=name)


def is_group_basis(basis: Basis) -> bool:
    return any(content(i.lhs) != content(i.rhs) for i in basis)


def is_completely_regular(v: VarietyExpr, max_k: int = 8) -> bool:
    """Some ``x = x^(k+1)`` with ``k <= max_k`` holds in ``v``."""
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    x = Word("x")
    return any(decide(v, Identity(x, x ** (k + 1))).holds for k in range(1, max_k + 1))
