import pytest

from simpepist.formula import (AgentTop, And, FormulaBindingError, FormulaSyntaxError, Hat, Iff,
                               Implies, Know, Neg, Or, Var, agents_of, check_binding, depth, desugar,
                               instantiate, is_primitive, metavariables, parse, parse_schema,
                               substitute, to_text, top_transform)

pa, pb, pc = Var("p_a", "a"), Var("p_b", "b"), Var("p_c", "c")

PARSE_CASES = [
    ("p_b & ~p_a", And(pb, Neg(pa))),
    ("[a] p_c -> p_c", Implies(Know("a", pc), pc)),
    ("<d>((T_a & p_c) | <d>(T_b & ~p_c))",
     Hat("d", Or(And(AgentTop("a"), pc), Hat("d", And(AgentTop("b"), Neg(pc)))))),
]


@pytest.mark.parametrize("text,tree", PARSE_CASES)
def test_parse(text, tree):
    assert parse(text) == tree
    assert parse(to_text(tree)) == tree


def test_precedence():
    assert parse("~p_a & p_b | p_c -> p_a <-> p_b") == \
        Iff(Implies(Or(And(Neg(pa), pb), pc), pa), pb)
    assert parse("p_a -> p_b -> p_c") == Implies(pa, Implies(pb, pc))
    assert parse("[a]<b>~p_c & p_a") == And(Know("a", Hat("b", Neg(pc))), pa)


def test_printer_uses_minimal_parentheses():
    assert to_text(Implies(Implies(pa, pb), pc)) == "(p_a -> p_b) -> p_c"
    assert to_text(Implies(pa, Implies(pb, pc))) == "p_a -> p_b -> p_c"
    assert to_text(Neg(And(pa, pb))) == "~(p_a & p_b)"


@pytest.mark.parametrize("text,pos", [("p_a &", 5), ("p_a ) ", 4), ("[a p_a", 3), ("p_a $ p_b", 4)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(FormulaSyntaxError) as err:
        parse(text)
    assert err.value.position == pos


def test_variable_needs_agent_suffix():
    with pytest.raises(FormulaSyntaxError):
        parse("p")


def test_binding():
    check_binding(parse("[a] p_b"), "ab", {"p_a": "a", "p_b": "b"})
    with pytest.raises(FormulaBindingError):
        check_binding(parse("[c] p_a"), "ab", {"p_a": "a", "p_b": "b"})
    with pytest.raises(FormulaBindingError):
        check_binding(parse("q_a"), "ab", {"p_a": "a", "p_b": "b"})


def test_agents_of():
    assert agents_of(pa) == {"a"}
    assert agents_of(parse("<a> p_b")) == {"a", "b"}
    assert agents_of(parse("[a] p_a | [a] ~p_a")) == {"a"}


def test_top_transform():
    assert top_transform(pa) == Or(pa, Neg(pa))
    assert top_transform(Neg(pa)) == Or(pa, Neg(pa))
    assert top_transform(parse("<a>(p_b & ~p_c)")) == \
        parse("<a>((p_b | ~p_b) & (p_c | ~p_c))")


def test_substitute():
    assert substitute(pa, "p_a", pb) == pb
    assert substitute(Hat("a", pa), "p_a", Neg(pa)) == Hat("a", Neg(pa))
    assert substitute(parse("p_a & p_b"), "p_a", parse("[b] p_c")) == parse("[b] p_c & p_b")


def test_desugar():
    assert desugar(parse("[a] p_c")) == Neg(Hat("a", Neg(pc)))
    assert desugar(parse("p_a | p_b")) == Neg(And(Neg(pa), Neg(pb)))
    f = desugar(parse("p_a <-> p_b"))
    assert f == desugar(And(Implies(pa, pb), Implies(pb, pa)))
    assert is_primitive(desugar(parse("T_a -> [b](p_a <-> ~p_b)")))
    assert desugar(AgentTop("a")) == Neg(And(Neg(pa), Neg(Neg(pa))))


def test_depth():
    assert depth(pa) == 0
    assert depth(parse("[a](p_a & ~p_b)")) == 3


def test_schemas():
    k = parse_schema("[A](F -> G) -> [A]F -> [A]G")
    assert metavariables(k) == ["F", "G"]
    inst = instantiate(k, {"A": "a", "F": pc, "G": Neg(pb)})
    assert inst == parse("[a](p_c -> ~p_b) -> [a] p_c -> [a] ~p_b")
    with pytest.raises(FormulaSyntaxError):
        parse("[A] F")
