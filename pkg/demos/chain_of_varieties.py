"""Decide identities along T < SL < C(2) < D and find a separating monoid."""

from monvar import decide, parse_identity, parse_variety
from monvar import monoids as mon
from monvar.deduction import builtin_basis

probes = ["x = y", "x = x^2", "xy = yx", "x^2y = yx^2", "x^2 = x^3", "yxyzxz = yxzxyxz"]
varieties = ["T", "SL", "C(2)", "D", "SL v A(2)"]

print(f"{'identity':20}" + "".join(f"{v:>12}" for v in varieties))
for text in probes:
    ident = parse_identity(text)
    row = [decide(parse_variety(v), ident).status for v in varieties]
    print(f"{text:20}" + "".join(f"{r:>12}" for r in row))

# D does not satisfy xy = yx; the smallest model showing it has five elements.
D = builtin_basis("D")
M = mon.find_countermodel(D, parse_identity("xy = yx"), max_order=5)
print("\ncountermodel of order", M.order)
print(M.table)
print("violating assignment:", mon.violation(M, parse_identity("xy = yx")))
