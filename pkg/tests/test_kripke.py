import pytest

from oracles import naive_value
from simpepist import gallery
from simpepist.complex import is_isomorphic
from simpepist.formula import parse
from simpepist.kripke import (LocalEpistemicModel, NotLocalEpistemicError, UnknownStateError,
                              denotation, eval3_k, find_kripke_isomorphism, is_defined_k, kappa,
                              roundtrip_check, sigma, validate_kripke)
from simpepist.semantics import TruthValue, eval3

PROPER = [n for n in gallery.KRIPKE if n not in gallery.IMPROPER]


@pytest.mark.parametrize("name,state,text,expected,source", gallery.KRIPKE_MANIFEST)
def test_kripke_manifest(name, state, text, expected, source):
    assert eval3_k(gallery.KRIPKE[name](), state, parse(text)).value == expected


@pytest.mark.parametrize("name", gallery.IMPROPER)
def test_improper_models_are_rejected(name):
    m = gallery.KRIPKE[name]()
    assert any(p.startswith("improper") for p in validate_kripke(m))
    with pytest.raises(NotLocalEpistemicError, match="not a local epistemic model"):
        sigma(m)
    report = roundtrip_check(m)
    assert not report.ok and "improper" in report.message


def test_locality_violation():
    m = LocalEpistemicModel(("a", "b"), {"p_a": "a", "p_b": "b"}, ("s", "t"),
                            {"s": frozenset({"p_a"}), "t": frozenset()},
                            {"a": (frozenset({"s", "t"}),), "b": (frozenset({"s"}), frozenset({"t"}))})
    assert any("local" in p for p in validate_kripke(m))


def test_partition_violation():
    m = LocalEpistemicModel(("a",), {"p_a": "a"}, ("s", "t"),
                            {"s": frozenset(), "t": frozenset()},
                            {"a": (frozenset({"s", "t"}), frozenset({"t"}))})
    assert validate_kripke(m)


@pytest.mark.parametrize("name", list(gallery.SIMPLICIAL))
def test_kappa_is_local_epistemic(name):
    k, _ = kappa(gallery.SIMPLICIAL[name]())
    assert validate_kripke(k) == []


def test_dead_agent_is_undefined():
    m = gallery.two_edges_kripke()
    assert eval3_k(m, "010", parse("p_c")) is TruthValue.UNDEFINED
    assert not is_defined_k(m, "010", parse("[c] p_a"))
    with pytest.raises(UnknownStateError):
        eval3_k(m, "nowhere", parse("p_a"))


def test_kappa_of_edge_triangle():
    et = gallery.edge_triangle()
    k, mapping = kappa(et)
    x, y = mapping[gallery.EDGE_X], mapping[gallery.TRIANGLE_Y]
    assert k.alive_agents(x) == {"a", "b"} and k.alive_agents(y) == {"a", "b", "c"}
    assert k.class_of(x, "a") == {x, y}
    assert eval3_k(k, x, parse("[a] p_c")) is TruthValue.TRUE


def test_kappa_of_two_edges_and_triangle():
    k, _ = kappa(gallery.two_edges())
    assert len(k.states) == 2
    assert sorted(sorted(k.alive_agents(s)) for s in k.states) == [["a", "b"], ["a", "c"]]
    assert len(k.relations["a"]) == 1
    k, _ = kappa(gallery.single_triangle())
    (s,) = k.states
    assert k.alive_agents(s) == {"a", "b", "c"}


def test_sigma_examples():
    c, mapping = sigma(gallery.two_edges_kripke())
    assert len(c.facets) == 2
    shared = mapping["010"] & mapping["001"]
    assert shared == {"a{001|010}"}
    assert is_isomorphic(c, gallery.two_edges())
    c, _ = sigma(gallery.lozenge_kripke())
    assert is_isomorphic(c, gallery.lozenge())
    single = LocalEpistemicModel.build("abc", {"p_a": "a", "p_b": "b", "p_c": "c"}, ["s"],
                                       {"s": frozenset({"p_b"})},
                                       {a: [["s"]] for a in "abc"})
    c, _ = sigma(single)
    assert [len(f) for f in c.facets] == [3]


def test_lozenge_top_state_agrees_with_sigma_image():
    m = gallery.lozenge_kripke()
    c, mapping = sigma(m)
    for text in ("<a> T_c", "[a] T_c", "<b> T_c", "[a] p_c", "p_c", "[b][a] p_b"):
        for s in m.states:
            f = parse(text)
            assert eval3_k(m, s, f) == eval3(c, mapping[s], f)
            assert eval3_k(m, s, f).value == naive_value(c, mapping[s], f)
    assert eval3_k(m, "t", parse("<a> T_c")) is TruthValue.TRUE


def test_denotation():
    m = gallery.lozenge_kripke()
    assert denotation(m, parse("p_c")) == {"l", "r"}
    assert denotation(m, parse("[a] p_a")) == {"l", "t", "r", "b"}


@pytest.mark.parametrize("name", list(gallery.SIMPLICIAL) + PROPER)
def test_roundtrips(name):
    build = gallery.SIMPLICIAL.get(name) or gallery.KRIPKE[name]
    report = roundtrip_check(build())
    assert report.ok, report.message


def test_kripke_isomorphism_ignores_dead_valuations():
    m = gallery.two_edges_kripke()
    other = LocalEpistemicModel(m.agents, m.variables, m.states,
                                {"010": frozenset({"p_b", "p_c"}), "001": frozenset({"p_c"})},
                                m.relations)
    assert find_kripke_isomorphism(m, other) is not None
    flipped = LocalEpistemicModel(m.agents, m.variables, m.states,
                                  {"010": frozenset(), "001": frozenset({"p_c"})}, m.relations)
    assert find_kripke_isomorphism(m, flipped) is None
