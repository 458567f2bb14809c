"""Facets become states and vertices become equivalence classes, and back.

Improper Kripke models (two states no live agent can tell apart) have no
simplicial counterpart.
"""

from simpepist import (eval3, eval3_k, gallery, kappa, parse, roundtrip_check, sigma,
                       validate_kripke)

lozenge = gallery.lozenge_kripke()
c, mapping = sigma(lozenge)
print("sigma(lozenge):", [sorted(f) for f in c.facets])
for s in lozenge.states:
    f = parse("<a> T_c")
    print(f"  state {s}: Kripke {eval3_k(lozenge, s, f)}, simplicial {eval3(c, mapping[s], f)}")

k, _ = kappa(gallery.edge_triangle())
print("kappa(edge-triangle) states:", k.states)
print("  a-classes:", [sorted(x) for x in k.relations["a"]])

for name in gallery.SIMPLICIAL:
    r = roundtrip_check(gallery.SIMPLICIAL[name]())
    print(f"  round trip {name:22} {r.message}")

for name in gallery.IMPROPER:
    print(f"  {name:24} {validate_kripke(gallery.KRIPKE[name]())}")
