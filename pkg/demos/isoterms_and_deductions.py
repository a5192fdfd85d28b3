"""Walk through deductions and isoterms for a few small bases."""

from monvar import builtin_basis, deduction_search, is_isoterm, parse_word, step_successors
from monvar.words import is_square_free, words_up_to

# Two square-free words that swap under the one-identity basis Q.
Q = builtin_basis("Q")
s, t = Q.identities[0].lhs, Q.identities[0].rhs
print("Q:", Q)
print("successors of s:", sorted(map(str, step_successors(s, Q))))

# Sending y and z to the empty word turns s = t into x^2 = x^3.
d = deduction_search(parse_word("x^2"), parse_word("x^3"), Q)
print("x^2 -> x^3 under Q:", d)
for step in d.steps:
    print("   ", step.to_dict())

# Under x^2 = x^3 every square-free word is an isoterm, and nothing else is.
B = builtin_basis("B23")
words = list(words_up_to("xyz", 6))
iso = [w for w in words if is_isoterm(w, B)]
print(f"{len(iso)} isoterms among {len(words)} words of length <= 6")
print("all square-free:", all(is_square_free(w) for w in iso))
print("xyx isoterm?", is_isoterm(parse_word("xyx"), B), " x^2 isoterm?", is_isoterm(parse_word("x^2"), B))
