"""Plain K and modus ponens are not sound here; their guarded versions are.

The K counterexample is found by exhaustive search; the modus ponens one is
the bundled four-agent model.
"""

import time

from simpepist import EnumerationSpec, eval3, gallery, parse, search_counterexample, valid_over
from simpepist.semantics import axiom_instance, check_rule

spec = EnumerationSpec(agent_count=3, max_facets=2, max_formula_depth=2)
t0 = time.perf_counter()
ce = search_counterexample("K", spec)
print(f"K search over {spec.label()}: {time.perf_counter() - t0:.2f}s")
print("  instance:", {k: str(v) for k, v in ce.to_json()["instantiation"].items()})
print("  model facets:", [sorted(f) for f in ce.witness.model.facets], "at", sorted(ce.witness.point))

# the guarded schema replaces the consequent's F by its top transform
print("K-top at the same instance valid over the family:",
      valid_over("[a](p_b -> p_c) -> [a]p_b -> [a]p_c", spec).valid, "(plain)")
print("                                                  ",
      valid_over(axiom_instance("K-top", "a", parse("p_b"), parse("p_c")), spec).valid, "(guarded)")

# modus ponens: premise and implication never false, conclusion false at both facets
m = gallery.mp_counterexample()
premise = parse("T_a & T_b & T_c")
implication = parse("T_a & T_b & T_c -> <d>((T_a & p_c) | <d>(T_b & ~p_c))")
conclusion = implication.right
for name, f in (("premise", premise), ("implication", implication), ("conclusion", conclusion)):
    row = [str(eval3(m, x, f)) for x in (gallery.MP_X, gallery.MP_Y)]
    print(f"  {name:12} X={row[0]:10} Y={row[1]}")
four = EnumerationSpec(agent_count=4, max_facets=2, max_formula_depth=0)
for rule in ("MP", "MP-top"):
    print(f"  {rule:7} over {four.label()}: {check_rule(rule, four, premise, implication).status}")
