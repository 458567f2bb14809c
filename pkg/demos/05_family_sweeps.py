"""Exhaustive sweeps over small model families.

Each suite evaluates the whole formula pool at every point of every model
in one pass per formula (sparse relation matrices, boolean vectors).
"""

import time

from simpepist import SUITES, EnumerationSpec, enumerate_simplicial, parse, run_suite
from simpepist.enumeration import count_simplicial
from simpepist.table import PointTable

spec = EnumerationSpec(agent_count=3, max_facets=2, max_formula_depth=2)
print(spec.label(), "->", count_simplicial(spec), "models")

models = list(enumerate_simplicial(spec))
table = PointTable.simplicial(models)
D, T = table.eval(parse("[a] p_c -> p_c"))
print(f"{len(table)} points; '[a] p_c -> p_c' defined at {D.sum()}, false at {(D & ~T).sum()}")

# the oracle suite runs scalar evaluators point by point, so it gets the
# two-agent family; invalid-mp needs a fourth agent
small = EnumerationSpec(agent_count=2, max_facets=2, max_formula_depth=2)
four = EnumerationSpec(agent_count=4, max_facets=2, max_formula_depth=0)
for name in SUITES:
    family = {"oracle": small, "invalid-mp": four}.get(name, spec)
    t0 = time.perf_counter()
    report = run_suite(name, family)
    print(f"{report.summary()}  ({time.perf_counter() - t0:.1f}s)")
