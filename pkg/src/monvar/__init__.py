"""Workbench for equational reasoning about monoid varieties.

Modules:

* :mod:`monvar.words` -- words, substitutions, instance matching
* :mod:`monvar.deduction` -- deduction steps, search, certificates, isoterms
* :mod:`monvar.deciders` -- word-problem deciders for concrete varieties
* :mod:`monvar.monoids` -- finite monoids, satisfaction, model search
* :mod:`monvar.lattices` -- finite lattices and special elements
* :mod:`monvar.suite` -- reproduction scenarios
"""

from .deciders import Verdict, decide, parse_variety
from .deduction import Basis, Deduction, builtin_basis, deduction_search, is_isoterm, step_successors
from .words import Identity, Substitution, Word, match_instances, parse_identity, parse_word

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "Deduction",
    "Identity",
    "Substitution",
    "Verdict",
    "Word",
    "builtin_basis",
    "decide",
    "deduction_search",
    "is_isoterm",
    "match_instances",
    "parse_identity",
    "parse_variety",
    "parse_word",
    "step_successors",
]
