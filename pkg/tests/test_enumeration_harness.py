import pytest

from oracles import _invariant, _same_model, brute_force_models
from simpepist import table
from simpepist.enumeration import (EnumerationSpec, count_simplicial, enumerate_formulas,
                                   enumerate_kripke, enumerate_simplicial, kripke_key)
from simpepist.formula import Hat, Know, Neg, Var
from simpepist.harness import SUITES, run_suite, search_counterexample
from simpepist.kripke import kappa, validate_kripke


def _matches(ours, reference):
    buckets = {}
    for m in reference:
        buckets.setdefault(_invariant(m), []).append(m)
    hits = set()
    for m in ours:
        found = [id(r) for r in buckets.get(_invariant(m), []) if _same_model(m, r)]
        assert len(found) == 1, f"{m} matches {len(found)} reference models"
        hits.add(found[0])
    return len(hits) == len(reference) == len(ours)


@pytest.mark.parametrize("agents,facets,expected", [(2, 1, 8), (2, 2, 56), (3, 1, 26), (3, 2, 629)])
def test_simplicial_enumeration_against_brute_force(agents, facets, expected):
    spec = EnumerationSpec(agent_count=agents, max_facets=facets)
    ours = list(enumerate_simplicial(spec))
    assert len(ours) == count_simplicial(spec) == expected
    assert _matches(ours, brute_force_models("abcd"[:agents], facets))


@pytest.mark.parametrize("agents", [2, 3])
def test_kripke_enumeration_matches_kappa_images(agents):
    spec = EnumerationSpec(agent_count=agents, max_facets=2)
    kripke = list(enumerate_kripke(spec))
    assert all(validate_kripke(k) == [] for k in kripke)
    keys = {kripke_key(k) for k in kripke}
    assert len(keys) == len(kripke)
    images = {kripke_key(kappa(m)[0]) for m in enumerate_simplicial(spec)}
    assert images == keys


def test_enumeration_is_deterministic():
    spec = EnumerationSpec(agent_count=3, max_facets=2, sample=40, seed=7)
    a = [m.facets for m in enumerate_simplicial(spec)]
    b = [m.facets for m in enumerate_simplicial(EnumerationSpec(agent_count=3, max_facets=2,
                                                                 sample=40, seed=7))]
    assert a == b and len(a) == 40


def test_spec_bounds():
    for bad in ({"agent_count": 1}, {"agent_count": 5}, {"max_facets": 0},
                {"max_formula_depth": 4}, {"connectives": ("xor",)}):
        with pytest.raises(ValueError):
            EnumerationSpec(**bad)


def test_formula_pool():
    spec = EnumerationSpec(agent_count=2, max_formula_depth=1)
    pa = Var("p_a", "a")
    one_agent = list(enumerate_formulas(spec, agents=["a"]))
    for f in (pa, Neg(pa), Hat("a", pa), Know("a", pa)):
        assert f in one_agent
    sizes = [len(list(enumerate_formulas(spec, depth=d))) for d in range(3)]
    assert sizes == [2, 24, 1850]
    pool = list(enumerate_formulas(EnumerationSpec(agent_count=3), depth=2))
    assert len(pool) == len(set(pool)) == 8163


@pytest.mark.parametrize("name", [s for s in SUITES if s not in ("invalid-k", "invalid-mp")])
def test_suites_pass_on_small_family(name):
    report = run_suite(name, EnumerationSpec(agent_count=2, max_facets=2, max_formula_depth=1),
                       workers=1)
    assert report.passed, report.summary()
    assert report.cases > 0


def test_suite_reports_are_deterministic_across_workers():
    spec = EnumerationSpec(agent_count=2, max_facets=2, max_formula_depth=1)
    one = run_suite("lemma-3", spec, workers=1).to_json()
    two = run_suite("lemma-3", spec, workers=2).to_json()
    assert one == two


def test_invalid_k_needs_three_agents():
    assert not run_suite("invalid-k", EnumerationSpec(agent_count=2, max_formula_depth=1)).passed
    assert run_suite("invalid-k", EnumerationSpec(agent_count=3, max_formula_depth=1)).passed


def test_t_schema_has_no_counterexample():
    for agents in (2, 3):
        spec = EnumerationSpec(agent_count=agents, max_facets=2, max_formula_depth=1)
        assert search_counterexample("T", spec) is None
        assert search_counterexample("L", spec) is None


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", EnumerationSpec())


def test_suites_catch_a_broken_modality(monkeypatch):
    # a modal step that ignores the relation must be noticed
    monkeypatch.setattr(table, "_step", lambda rel, vec: vec.copy())
    spec = EnumerationSpec(agent_count=2, max_facets=2, max_formula_depth=1)
    assert not run_suite("oracle", spec, workers=1).passed
    assert not run_suite("correspondence", spec, workers=1).passed
