"""Three-valued semantics on pointed simplicial models.

A formula at a simplex is either defined or not; when defined it is true or
false.  Both relations are computed on the desugared formula.  Modal clauses
quantify over the facets containing the agent's vertex, which gives the same
answers as quantifying over every simplex meeting that vertex (truth and
definedness are upward monotone).  :class:`ReferenceEvaluator` keeps the
literal all-simplices reading as an oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .complex import SimplicialModel, is_full_pure
from .formula import And, Formula, Hat, Neg, Var, desugar, parse, to_text


class TruthValue(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDEFINED = "undefined"

    @classmethod
    def of(cls, defined: bool, holds: bool) -> "TruthValue":
        if holds:
            return cls.TRUE
        return cls.FALSE if defined else cls.UNDEFINED

    @property
    def defined(self) -> bool:
        return self is not TruthValue.UNDEFINED

    def flip(self) -> "TruthValue":
        if self is TruthValue.TRUE:
            return TruthValue.FALSE
        if self is TruthValue.FALSE:
            return TruthValue.TRUE
        return self

    def __str__(self):
        return self.value


class UndefinedFormulaError(ValueError):
    pass


class PureSemanticsError(ValueError):
    pass


def as_formula(f) -> Formula:
    return parse(f) if isinstance(f, str) else f


def top_variable(model):
    """``T_a`` resolver bound to ``model``'s canonical variables."""
    return lambda a: Var(model.canonical_variable(a), a)


class Evaluator:
    """Memoizing evaluator for one simplicial model.

    ``defined(x, f)`` and ``holds(x, f)`` take a desugared formula; the
    public functions below desugar for you.
    """

    def __init__(self, model: SimplicialModel):
        self.model = model
        self._defined = {}
        self._holds = {}

    def prepare(self, f) -> Formula:
        return desugar(as_formula(f), top_variable(self.model))

    def successors(self, x, agent):
        return self.model.agent_star_facets(x, agent)

    def defined(self, x: frozenset, f: Formula) -> bool:
        key = (x, f)
        hit = self._defined.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Var):
            out = f.agent in self.model.chi(x)
        elif isinstance(f, Neg):
            out = self.defined(x, f.arg)
        elif isinstance(f, And):
            out = self.defined(x, f.left) and self.defined(x, f.right)
        elif isinstance(f, Hat):
            out = any(self.defined(y, f.arg) for y in self.successors(x, f.agent))
        else:
            raise TypeError(f"not a primitive formula: {f!r}")
        self._defined[key] = out
        return out

    def holds(self, x: frozenset, f: Formula) -> bool:
        key = (x, f)
        hit = self._holds.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Var):
            out = f.agent in self.model.chi(x) and f.name in self.model.ell(x)
        elif isinstance(f, Neg):
            out = self.defined(x, f.arg) and not self.holds(x, f.arg)
        elif isinstance(f, And):
            out = self.holds(x, f.left) and self.holds(x, f.right)
        elif isinstance(f, Hat):
            out = any(self.holds(y, f.arg) for y in self.successors(x, f.agent))
        else:
            raise TypeError(f"not a primitive formula: {f!r}")
        self._holds[key] = out
        return out

    def value(self, x, f) -> TruthValue:
        x = self.model.require_simplex(x)
        g = self.prepare(f)
        return TruthValue.of(self.defined(x, g), self.holds(x, g))


class ReferenceEvaluator(Evaluator):
    """Quantifies modal clauses over every simplex ``Y`` with ``a`` in
    ``chi(X & Y)``, exactly as the definition reads."""

    def successors(self, x, agent):
        v = self.model.vertex_of(x, agent)
        if v is None:
            return ()
        return tuple(y for y in self.model.simplices if v in y)


def is_defined(m: SimplicialModel, x, f) -> bool:
    return eval3(m, x, f).defined


def eval3(m: SimplicialModel, x, f) -> TruthValue:
    return Evaluator(m).value(x, f)


def reference_eval3(m: SimplicialModel, x, f) -> TruthValue:
    return ReferenceEvaluator(m).value(x, f)


def eval_via_facets(m: SimplicialModel, x, f) -> TruthValue:
    """Truth read off the facets above ``x``: true iff true at each of them.

    Only meaningful where ``f`` is defined; raises otherwise.
    """
    ev = Evaluator(m)
    x = m.require_simplex(x)
    g = ev.prepare(f)
    if not ev.defined(x, g):
        raise UndefinedFormulaError(f"formula undefined at point {sorted(x)}: {to_text(as_formula(f))}")
    ok = all(ev.holds(y, g) for y in m.star_facets(x))
    return TruthValue.TRUE if ok else TruthValue.FALSE


def eval_pure(m: SimplicialModel, x, f) -> bool:
    """Two-valued semantics for models whose facets all hold every agent.

    Negation is plain complement; the possibility of ``a`` ranges over facets
    sharing the ``a``-vertex of ``x``.
    """
    if not is_full_pure(m):
        raise PureSemanticsError("pure semantics requires pure model of dimension |A|-1")
    x = m.require_simplex(x)
    if x not in m.facet_set:
        raise PureSemanticsError(f"pure semantics is evaluated at facets, got {sorted(x)}")
    g = desugar(as_formula(f), top_variable(m))
    memo = {}

    def sat(y, h):
        key = (y, h)
        if key not in memo:
            if isinstance(h, Var):
                out = h.name in m.ell(y)
            elif isinstance(h, Neg):
                out = not sat(y, h.arg)
            elif isinstance(h, And):
                out = sat(y, h.left) and sat(y, h.right)
            else:
                out = any(sat(z, h.arg) for z in m.agent_star_facets(y, h.agent))
            memo[key] = out
        return memo[key]

    return sat(x, g)


# -- validity and equivalence over families ----------------------------------


@dataclass
class Witness:
    model: SimplicialModel
    point: frozenset
    values: dict  # formula text -> TruthValue

    def to_json(self):
        from .io import model_to_json
        return {"model": model_to_json(self.model), "point": sorted(self.point),
                "values": {k: str(v) for k, v in self.values.items()}}


@dataclass
class EquivalenceVerdict:
    equivalent: bool
    witness: Witness | None = None
    family: str = ""


@dataclass
class ValidityVerdict:
    valid: bool
    witness: Witness | None = None
    family: str = ""
    points: int = 0


def family_models(family) -> list:
    """Models of ``family``: an EnumerationSpec, a model, or an iterable."""
    from .enumeration import EnumerationSpec, enumerate_simplicial
    if isinstance(family, EnumerationSpec):
        return list(enumerate_simplicial(family))
    if isinstance(family, SimplicialModel):
        return [family]
    return list(family)


def family_label(family) -> str:
    from .enumeration import EnumerationSpec
    if isinstance(family, EnumerationSpec):
        return family.label()
    if isinstance(family, SimplicialModel):
        return f"model {family.name or '<anonymous>'}"
    return "explicit model list"


def _table(models):
    from .table import PointTable
    return PointTable.simplicial(models)


def equivalent(f, g, family) -> EquivalenceVerdict:
    """Do ``f`` and ``g`` take the same three-valued value at every point of
    every model in ``family``?  The verdict is family-relative."""
    f, g = as_formula(f), as_formula(g)
    models = family_models(family)
    table = _table(models)
    df, tf = table.eval(f)
    dg, tg = table.eval(g)
    bad = (df != dg) | (tf != tg)
    label = family_label(family)
    if not bad.any():
        return EquivalenceVerdict(True, None, label)
    i = table.first(bad.nonzero()[0])
    m, x = models[table.model_of[i]], table.points[i]
    values = {to_text(f): eval3(m, x, f), to_text(g): eval3(m, x, g)}
    return EquivalenceVerdict(False, Witness(m, x, values), label)


def valid_over(f, family) -> ValidityVerdict:
    """No point of the family makes ``f`` defined but not true.  The witness,
    if any, is in the first failing model, at a facet when one fails."""
    f = as_formula(f)
    models = family_models(family)
    table = _table(models)
    d, t = table.eval(f)
    bad = d & ~t
    label = family_label(family)
    if not bad.any():
        return ValidityVerdict(True, None, label, len(table.points))
    i = table.first(bad.nonzero()[0])
    m, x = models[table.model_of[i]], table.points[i]
    return ValidityVerdict(False, Witness(m, x, {to_text(f): eval3(m, x, f)}), label,
                           len(table.points))


# -- axiom schemas and rules ----------------------------------------------------

AXIOMS = {
    "L": "[A] P | [A] ~P",
    "K-top": "[A](F -> G) -> [A]F -> [A](F^top -> G)",
    "T": "[A]F -> F",
    "4": "[A]F -> [A][A]F",
    "5": "<A>F -> [A]<A>F",
    "K": "[A](F -> G) -> [A]F -> [A]G",
}
AXIOM_ALIASES = {"K⊤": "K-top", "Ktop": "K-top", "K_top": "K-top"}

TAUTOLOGIES = {
    "excluded-middle": "F | ~F",
    "identity": "F -> F",
    "non-contradiction": "~(F & ~F)",
    "double-negation": "~~F <-> F",
    "peirce": "((F -> G) -> F) -> F",
    "contraposition": "(F -> G) <-> (~G -> ~F)",
    "distribution": "F & (G | H) <-> (F & G) | (F & H)",
}


def axiom_instance(name: str, agent: str | None = None, phi=None, psi=None,
                   variable=None) -> Formula:
    """Instantiate an axiom schema.

    ``Taut:<template>`` picks a tautology template and fills its
    metavariables with ``phi``, ``psi`` and ``variable`` (a third formula).
    ``L`` uses ``variable`` or the agent's ``p_<agent>``.
    """
    from .formula import Implies, Know, instantiate, parse_schema, top_transform
    name = AXIOM_ALIASES.get(name, name)
    if name.startswith("Taut"):
        _, _, template = name.partition(":")
        template = template or "excluded-middle"
        if template not in TAUTOLOGIES:
            raise ValueError(f"unknown tautology template {template!r}")
        phi = as_formula(phi)
        psi = as_formula(psi) if psi is not None else phi
        third = as_formula(variable) if variable is not None else phi
        return instantiate(parse_schema(TAUTOLOGIES[template]), {"F": phi, "G": psi, "H": third})
    if name not in AXIOMS:
        raise ValueError(f"unknown schema {name!r}")
    if agent is None:
        raise ValueError(f"schema {name} needs an agent")
    if name == "L":
        return instantiate(parse_schema(AXIOMS[name]),
                           {"A": agent, "P": Var(variable or f"p_{agent}", agent)})
    if phi is None or (name in ("K", "K-top") and psi is None):
        raise ValueError(f"schema {name} is missing a formula argument")
    phi = as_formula(phi)
    if name == "K-top":
        # the transform is not part of the concrete syntax, so build directly
        psi = as_formula(psi)
        return Implies(Know(agent, Implies(phi, psi)),
                       Implies(Know(agent, phi), Know(agent, Implies(top_transform(phi), psi))))
    values = {"A": agent, "F": phi}
    if psi is not None:
        values["G"] = as_formula(psi)
    return instantiate(parse_schema(AXIOMS[name]), values)


def check_axiom_instance(name: str, family, agent=None, phi=None, psi=None,
                         variable=None) -> ValidityVerdict:
    return valid_over(axiom_instance(name, agent, phi, psi, variable), family)


@dataclass
class RuleVerdict:
    rule: str
    status: str  # "holds" | "vacuous" | "refuted"
    premises: list = field(default_factory=list)
    conclusion: Formula | None = None
    witness: Witness | None = None
    family: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "refuted"


RULES = ("MP-top", "N", "MP")
RULE_ALIASES = {"MP⊤": "MP-top", "MPtop": "MP-top", "Nec": "N"}


def rule_instance(name: str, phi, psi=None, agent=None):
    """Premises and conclusion of a rule instance."""
    from .formula import Implies, Know, top_transform
    name = RULE_ALIASES.get(name, name)
    phi = as_formula(phi)
    if name == "MP-top":
        psi = as_formula(psi)
        return [Implies(phi, psi), phi], Implies(top_transform(phi), psi)
    if name == "MP":
        psi = as_formula(psi)
        return [Implies(phi, psi), phi], psi
    if name == "N":
        if agent is None:
            raise ValueError("rule N needs an agent")
        return [phi], Know(agent, phi)
    raise ValueError(f"unknown rule {name!r}")


def check_rule(name: str, family, phi, psi=None, agent=None) -> RuleVerdict:
    """Family-relative rule check: refuted only when every premise is valid
    over the family and the conclusion is not."""
    premises, conclusion = rule_instance(name, phi, psi, agent)
    name = RULE_ALIASES.get(name, name)
    models = family_models(family)
    label = family_label(family)
    if not all(valid_over(p, models).valid for p in premises):
        return RuleVerdict(name, "vacuous", premises, conclusion, None, label)
    v = valid_over(conclusion, models)
    status = "holds" if v.valid else "refuted"
    return RuleVerdict(name, status, premises, conclusion, v.witness, label)
