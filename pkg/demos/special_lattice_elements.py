"""Special elements in small lattices, and a census over all of them."""

import time

from monvar import lattices as lat

for name, L in [("M3", lat.M3()), ("N5", lat.N5())]:
    print(name)
    for r in lat.analyze(L):
        d = r.to_dict(L)
        missing = [k for k, ok in d["flags"].items() if not ok]
        print(f"  {d['element']}: fails {', '.join(missing) or 'nothing'}", d["witnesses"] or "")

G = lat.grid(12, 4)
print("\ngrid(12,4):", G.size, "elements, distributive:", lat.is_distributive(G))

t0 = time.perf_counter()
census = lat.law_census(6)
print(f"\n{census['lattices']} lattices up to size 6, per size {census['per_size']}")
print(f"counterexamples: {len(census['counterexamples'])} ({time.perf_counter() - t0:.1f} s)")
