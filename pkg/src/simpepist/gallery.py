"""Bundled example models and their expected evaluations.

Vertex values are written as in the figures: ``1`` means the agent's variable
``p_<agent>`` is true at that vertex.  ``MANIFEST`` lists expected
three-valued results; entries marked ``derived`` were computed with the
all-simplices reference evaluator and frozen.
"""

from __future__ import annotations

from .complex import SimplicialModel, Vertex
from .kripke import LocalEpistemicModel


def _vars(agents):
    return {f"p_{a}": a for a in agents}


def _model(name, agents, vertices, facets):
    """``vertices`` maps id -> (agent, value)."""
    verts = {v: Vertex(v, a, frozenset([f"p_{a}"]) if val else frozenset())
             for v, (a, val) in vertices.items()}
    return SimplicialModel.build(agents, _vars(agents), verts, facets, name)


def _kripke(name, agents, states, relations):
    """``states`` maps id -> set of true variables."""
    return LocalEpistemicModel.build(agents, _vars(agents), list(states),
                                     {s: frozenset(v) for s, v in states.items()},
                                     relations, name)


ABC = ("a", "b", "c")


def crash_complex():
    """One triangle vxz with three crash edges hanging off each side: on the
    left b is dead, below c is dead, on the right a is dead."""
    return _model("crash-complex", ABC, {
        "v": ("a", 0), "x": ("c", 1), "z": ("b", 0),
        "w": ("c", 1), "a_top": ("a", 0),
        "u": ("b", 0), "a_low": ("a", 0),
        "c_right": ("c", 1), "b_top": ("b", 0),
    }, [
        {"v", "x", "z"},
        {"v", "w"}, {"w", "a_top"}, {"a_top", "x"},
        {"v", "u"}, {"u", "a_low"}, {"a_low", "z"},
        {"z", "c_right"}, {"c_right", "b_top"}, {"b_top", "x"},
    ])


def edge_triangle():
    """Edge X = {1_b, 0_a} glued at the a-vertex to triangle Y = {0_a, 0_b, 1_c}."""
    return _model("edge-triangle", ABC, {
        "b1": ("b", 1), "a0": ("a", 0), "b0": ("b", 0), "c1": ("c", 1),
    }, [{"b1", "a0"}, {"a0", "b0", "c1"}])


EDGE_X = frozenset({"b1", "a0"})
TRIANGLE_Y = frozenset({"a0", "b0", "c1"})


def stacked_knowledge():
    """Triangles X and W joined through c-edges Y, Z to a lone b-vertex v."""
    return _model("stacked-knowledge", ABC, {
        "xa": ("a", 1), "xb": ("b", 1), "xc": ("c", 1),
        "wa": ("a", 1), "wb": ("b", 0), "wc": ("c", 1),
        "v": ("b", 0),
    }, [{"xa", "xb", "xc"}, {"wa", "wb", "wc"}, {"xc", "v"}, {"wc", "v"}])


def mp_counterexample():
    """Two triangles sharing a d-vertex: X = {b, d, 1_c}, Y = {a, d, 0_c}."""
    return _model("mp-counterexample", ("a", "b", "c", "d"), {
        "b": ("b", 0), "d": ("d", 0), "c1": ("c", 1), "a": ("a", 0), "c0": ("c", 0),
    }, [{"b", "d", "c1"}, {"a", "d", "c0"}])


MP_X = frozenset({"b", "d", "c1"})
MP_Y = frozenset({"a", "d", "c0"})


def pure_share_a():
    """Pure: triangles {1_b, 0_a, 1_c} and {0_a, 0_b, 1_c} sharing only a."""
    return _model("pure-share-a", ABC, {
        "b1": ("b", 1), "a0": ("a", 0), "cl": ("c", 1), "b0": ("b", 0), "cr": ("c", 1),
    }, [{"b1", "a0", "cl"}, {"a0", "b0", "cr"}])


def pure_share_ac():
    """Pure: triangles {1_b, 0_a, 1_c} and {0_a, 0_b, 1_c} sharing a and c."""
    return _model("pure-share-ac", ABC, {
        "b1": ("b", 1), "a0": ("a", 0), "c1": ("c", 1), "b0": ("b", 0),
    }, [{"b1", "a0", "c1"}, {"a0", "b0", "c1"}])


def pure_single():
    """Pure: the single triangle {0_a, 1_b, 1_c}."""
    return _model("pure-single", ABC, {
        "a0": ("a", 0), "b1": ("b", 1), "c1": ("c", 1),
    }, [{"a0", "b1", "c1"}])


def two_triangles_share_a():
    """Triangles {1_b, 0_a, 0_c} and {0_a, 0_b, 1_c} sharing a."""
    return _model("two-triangles-share-a", ABC, {
        "b1": ("b", 1), "a0": ("a", 0), "c0": ("c", 0), "b0": ("b", 0), "c1": ("c", 1),
    }, [{"b1", "a0", "c0"}, {"a0", "b0", "c1"}])


def two_edges():
    """Edges {1_b, 0_a} and {0_a, 1_c} sharing the a-vertex."""
    return _model("two-edges", ABC, {
        "b1": ("b", 1), "a0": ("a", 0), "c1": ("c", 1),
    }, [{"b1", "a0"}, {"a0", "c1"}])


def single_triangle():
    """The single triangle {0_a, 1_b, 0_c}."""
    return _model("single-triangle", ABC, {
        "a0": ("a", 0), "b1": ("b", 1), "c0": ("c", 0),
    }, [{"a0", "b1", "c0"}])


def lozenge():
    """Two triangles (all values 1) joined by the edges {a_L, b_R} and
    {b_L, a_R}: a and b are unsure whether c is alive."""
    return _model("lozenge", ABC, {
        "aL": ("a", 1), "bL": ("b", 1), "cL": ("c", 1),
        "aR": ("a", 1), "bR": ("b", 1), "cR": ("c", 1),
    }, [{"aL", "bL", "cL"}, {"aR", "bR", "cR"}, {"aL", "bR"}, {"bL", "aR"}])


SIMPLICIAL = {
    "crash-complex": crash_complex,
    "edge-triangle": edge_triangle,
    "stacked-knowledge": stacked_knowledge,
    "mp-counterexample": mp_counterexample,
    "pure-share-a": pure_share_a,
    "pure-share-ac": pure_share_ac,
    "pure-single": pure_single,
    "two-triangles-share-a": two_triangles_share_a,
    "two-edges": two_edges,
    "single-triangle": single_triangle,
    "lozenge": lozenge,
}


# -- Kripke models ------------------------------------------------------------------


def two_edges_kripke():
    """States 010 (a, b alive) and 001 (a, c alive), linked by a."""
    return _kripke("two-edges-kripke", ABC, {"010": {"p_b"}, "001": {"p_c"}},
                   {"a": [["010", "001"]], "b": [["010"]], "c": [["001"]]})


def lozenge_kripke():
    """Four states: l, r with everyone alive; t, b with c dead."""
    all_true = {"p_a", "p_b", "p_c"}
    return _kripke("lozenge-kripke", ABC,
                   {"l": all_true, "t": {"p_a", "p_b"}, "r": all_true, "b": {"p_a", "p_b"}},
                   {"a": [["l", "b"], ["t", "r"]], "b": [["l", "t"], ["b", "r"]],
                    "c": [["l"], ["r"]]})


def _improper(name, agents, states, relations):
    # improper models cannot go through build(); keep them raw
    return LocalEpistemicModel(tuple(agents), _vars(agents), tuple(states),
                               {s: frozenset(v) for s, v in states.items()},
                               {a: tuple(frozenset(c) for c in relations.get(a, ())) for a in agents},
                               name)


def improper_middle():
    """s (a, b alive, 1_a1_b0_c) and t (all alive, 1_a1_b1_c) linked by a and b."""
    return _improper("improper-middle", ABC, {"s": {"p_a", "p_b"}, "t": {"p_a", "p_b", "p_c"}},
                     {"a": [["s", "t"]], "b": [["s", "t"]], "c": [["t"]]})


def improper_middle_variant():
    """As :func:`improper_middle` but with p_c true at the state where c is dead."""
    return _improper("improper-middle-variant", ABC,
                     {"s": {"p_a", "p_b", "p_c"}, "t": {"p_a", "p_b", "p_c"}},
                     {"a": [["s", "t"]], "b": [["s", "t"]], "c": [["t"]]})


def improper_bottom():
    """Two agents: s (only a alive) and t (both alive), linked by a."""
    return _improper("improper-bottom", ("a", "b"), {"s": {"p_a", "p_b"}, "t": {"p_a", "p_b"}},
                     {"a": [["s", "t"]], "b": [["t"]]})


KRIPKE = {
    "two-edges-kripke": two_edges_kripke,
    "lozenge-kripke": lozenge_kripke,
    "improper-middle": improper_middle,
    "improper-middle-variant": improper_middle_variant,
    "improper-bottom": improper_bottom,
}
IMPROPER = ("improper-middle", "improper-middle-variant", "improper-bottom")


# -- expected results ------------------------------------------------------------------

# (model, point, formula, expected, source)
MANIFEST = [
    ("edge-triangle", ["a0", "b1"], "p_b & ~p_a", "true", "paper"),
    ("edge-triangle", ["a0", "b1"], "p_c", "undefined", "paper"),
    ("edge-triangle", ["a0", "b1"], "~p_c", "undefined", "paper"),
    ("edge-triangle", ["a0", "b1"], "<a> p_c", "true", "paper"),
    ("edge-triangle", ["a0", "b1"], "[a] p_c", "true", "paper"),
    ("edge-triangle", ["a0", "b1"], "[a] p_c -> p_c", "undefined", "paper"),
    ("edge-triangle", ["a0", "b1"], "p_b | ~p_b", "true", "paper"),
    ("edge-triangle", ["a0", "b1"], "p_c | ~p_c", "undefined", "paper"),
    ("edge-triangle", ["a0", "b1"], "<a> p_b -> <a> p_c", "true", "paper"),
    ("edge-triangle", ["a0", "b0", "c1"], "[b] p_c", "true", "paper"),
    ("edge-triangle", ["a0"], "~p_a", "true", "paper"),
    ("edge-triangle", ["a0", "b1"], "[a](p_c -> ~p_b)", "true", "paper"),
    ("edge-triangle", ["a0", "b1"], "[a] ~p_b", "false", "paper"),
    ("edge-triangle", ["a0", "b1"], "[a](p_c -> ~p_b) -> [a] p_c -> [a] ~p_b", "false", "paper"),
    ("stacked-knowledge", ["v"], "[b][c] p_a", "true", "paper"),
    ("stacked-knowledge", ["v"], "[c] p_a", "undefined", "derived"),
    ("stacked-knowledge", ["v"], "[b] p_a", "undefined", "derived"),
    ("stacked-knowledge", ["v"], "p_a", "undefined", "derived"),
    ("crash-complex", ["v", "x", "z"], "[a] p_c", "true", "paper"),
    ("crash-complex", ["v", "x", "z"], "[a][b] p_c", "true", "paper"),
    ("crash-complex", ["v"], "[a] p_c", "true", "paper"),
    ("crash-complex", ["v", "u"], "[b] p_c", "undefined", "paper"),
    ("crash-complex", ["v", "w"], "[b] p_c", "undefined", "paper"),
    ("pure-share-a", ["a0", "b1", "cl"], "<a> ~p_b", "true", "paper"),
    ("pure-share-a", ["a0", "b1", "cl"], "[b] p_b", "true", "paper"),
    ("pure-share-a", ["a0", "b1", "cl"], "[a] p_c & [b] p_c & [c] p_c", "true", "paper"),
    ("pure-single", ["a0", "b1", "c1"], "[a] p_b <-> p_b", "true", "derived"),
    ("mp-counterexample", ["b", "c1", "d"], "T_b & ~p_c", "false", "paper"),
    ("mp-counterexample", ["a", "c0", "d"], "T_b & ~p_c", "undefined", "paper"),
    ("mp-counterexample", ["a", "c0", "d"], "<d>(T_b & ~p_c)", "false", "paper"),
    ("mp-counterexample", ["b", "c1", "d"], "T_a & p_c", "undefined", "paper"),
    ("mp-counterexample", ["a", "c0", "d"], "T_a & p_c", "false", "paper"),
    ("mp-counterexample", ["b", "c1", "d"], "(T_a & p_c) | <d>(T_b & ~p_c)", "undefined", "paper"),
    ("mp-counterexample", ["a", "c0", "d"], "(T_a & p_c) | <d>(T_b & ~p_c)", "false", "paper"),
    ("mp-counterexample", ["b", "c1", "d"], "<d>((T_a & p_c) | <d>(T_b & ~p_c))", "false", "paper"),
    ("mp-counterexample", ["a", "c0", "d"], "<d>((T_a & p_c) | <d>(T_b & ~p_c))", "false", "paper"),
    ("mp-counterexample", ["b", "c1", "d"], "T_a & T_b & T_c", "undefined", "derived"),
    ("mp-counterexample", ["a", "c0", "d"], "T_a & T_b & T_c", "undefined", "derived"),
    ("mp-counterexample", ["b", "c1", "d"],
     "T_a & T_b & T_c -> <d>((T_a & p_c) | <d>(T_b & ~p_c))", "undefined", "derived"),
    ("mp-counterexample", ["a", "c0", "d"],
     "T_a & T_b & T_c -> <d>((T_a & p_c) | <d>(T_b & ~p_c))", "undefined", "derived"),
]

# (model, state, formula, expected, source)
KRIPKE_MANIFEST = [
    ("two-edges-kripke", "010", "p_c", "undefined", "paper"),
    ("two-edges-kripke", "010", "[a] p_c", "true", "derived"),
    ("lozenge-kripke", "t", "p_c", "undefined", "paper"),
    ("lozenge-kripke", "t", "~p_c", "undefined", "paper"),
]

# enumeration sizes (isomorphism classes), checked against a brute-force generator
COUNTS = {
    "simplicial agents=2 facets<=1": 8,
    "simplicial agents=2 facets<=2": 56,
    "simplicial agents=3 facets<=1": 26,
    "simplicial agents=3 facets<=2": 629,
    "kripke agents=2 states<=2": 56,
    "kripke agents=3 states<=2": 629,
    "formulas agents=2 depth<=2": 1850,
    "formulas agents=3 depth<=2": 8163,
}
