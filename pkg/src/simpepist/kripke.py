"""Local epistemic models and their translation to and from simplicial models.

Each agent's accessibility is an equivalence relation on the states where it
is alive, stored as a partition of that set.  A model must be local (states an
agent cannot tell apart agree on its variables) and proper (any two distinct
states are told apart by some agent alive in the first).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .complex import SimplicialModel, Vertex, find_isomorphism
from .formula import And, Hat, Neg, Var, desugar
from .semantics import TruthValue, as_formula


class NotLocalEpistemicError(ValueError):
    pass


class UnknownStateError(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class LocalEpistemicModel:
    agents: tuple
    variables: Mapping[str, str]
    states: tuple
    valuation: Mapping[str, frozenset]
    relations: Mapping[str, tuple]  # agent -> tuple of frozenset classes
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, agents, variables, states, valuation, relations, name=""):
        """Construct from plain containers; raises when the model is invalid."""
        if not isinstance(variables, Mapping):
            variables = {v: owner for v, owner in variables}
        m = cls(tuple(agents), dict(variables), tuple(states),
                {s: frozenset(valuation.get(s, ())) for s in states},
                {a: tuple(frozenset(c) for c in relations.get(a, ())) for a in agents},
                name)
        problems = validate_kripke(m)
        if problems:
            raise NotLocalEpistemicError("not a local epistemic model: " + "; ".join(problems))
        return m

    @cached_property
    def _class_of(self) -> dict:
        table = {}
        for a, classes in self.relations.items():
            for c in classes:
                for s in c:
                    table[(s, a)] = c
        return table

    def alive(self, agent) -> frozenset:
        """``S_a``: states where ``agent`` is alive."""
        out = set()
        for c in self.relations.get(agent, ()):
            out |= c
        return frozenset(out)

    def alive_agents(self, s) -> frozenset:
        """``A_s``."""
        return frozenset(a for a in self.agents if (s, a) in self._class_of)

    def class_of(self, s, agent):
        """``[s]_a`` or None when ``agent`` is dead at ``s``."""
        return self._class_of.get((s, agent))

    def canonical_variable(self, agent):
        for name, owner in self.variables.items():
            if owner == agent:
                return name
        return f"p_{agent}"

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<LocalEpistemicModel{label} states={list(self.states)}>"


def validate_kripke(m: LocalEpistemicModel) -> list:
    """Violations of partition shape, locality and properness."""
    problems = []
    states = set(m.states)
    if not m.states:
        problems.append("no states")
    if len(states) != len(m.states):
        problems.append("duplicate state ids")
    for var, owner in m.variables.items():
        if owner not in m.agents:
            problems.append(f"variable {var} owned by unknown agent {owner}")
    for s in m.states:
        for p in m.valuation.get(s, ()):
            if p not in m.variables:
                problems.append(f"state {s} has undeclared variable {p}")
    for a in m.relations:
        if a not in m.agents:
            problems.append(f"relation for unknown agent {a}")
    shape_ok = True
    for a in m.agents:
        seen = set()
        for c in m.relations.get(a, ()):
            if not c:
                problems.append(f"empty class for {a}")
                shape_ok = False
            unknown = c - states
            if unknown:
                problems.append(f"class for {a} has unknown states {sorted(unknown)}")
                shape_ok = False
            overlap = c & seen
            if overlap:
                problems.append(f"classes for {a} overlap on {sorted(overlap)}")
                shape_ok = False
            seen |= c
    if not shape_ok:
        return problems
    for a in m.agents:
        own = [v for v, owner in m.variables.items() if owner == a]
        for c in m.relations.get(a, ()):
            members = sorted(c)
            for p in own:
                values = {p in m.valuation.get(s, ()) for s in members}
                if len(values) > 1:
                    yes = [s for s in members if p in m.valuation.get(s, ())]
                    no = [s for s in members if p not in m.valuation.get(s, ())]
                    problems.append(f"locality: {yes[0]} ~{a} {no[0]} disagree on {p}")
    for s in m.states:
        for t in m.states:
            if s == t:
                continue
            if not any(t not in m.class_of(s, b) for b in m.alive_agents(s)):
                problems.append(f"improper: no agent alive at {s} distinguishes it from {t}")
    return problems


# -- semantics ---------------------------------------------------------------


class KripkeEvaluator:
    def __init__(self, model: LocalEpistemicModel):
        self.model = model
        self._memo = {}

    def pair(self, s, f):
        """``(defined, true)`` for a desugared formula."""
        key = (s, f)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        m = self.model
        if isinstance(f, Var):
            d = s in m.alive(f.agent)
            out = (d, d and f.name in m.valuation[s])
        elif isinstance(f, Neg):
            d, t = self.pair(s, f.arg)
            out = (d, d and not t)
        elif isinstance(f, And):
            dl, tl = self.pair(s, f.left)
            dr, tr = self.pair(s, f.right)
            out = (dl and dr, tl and tr)
        elif isinstance(f, Hat):
            c = m.class_of(s, f.agent) or ()
            results = [self.pair(t, f.arg) for t in sorted(c)]
            out = (any(d for d, _ in results), any(t for _, t in results))
        else:
            raise TypeError(f"not a primitive formula: {f!r}")
        self._memo[key] = out
        return out

    def value(self, s, f) -> TruthValue:
        if s not in self.model.valuation:
            raise UnknownStateError(f"unknown state {s}")
        g = desugar(as_formula(f), lambda a: Var(self.model.canonical_variable(a), a))
        return TruthValue.of(*self.pair(s, g))


def eval3_k(m: LocalEpistemicModel, s, f) -> TruthValue:
    return KripkeEvaluator(m).value(s, f)


def is_defined_k(m: LocalEpistemicModel, s, f) -> bool:
    return eval3_k(m, s, f).defined


def denotation(m: LocalEpistemicModel, f) -> frozenset:
    """States where ``f`` is true."""
    ev = KripkeEvaluator(m)
    return frozenset(s for s in m.states if ev.value(s, f) is TruthValue.TRUE)


# -- translations ------------------------------------------------------------


def state_id(facet) -> str:
    return "+".join(sorted(facet))


def kappa(c: SimplicialModel):
    """Facets become states; two facets are ``a``-linked iff they share the
    ``a``-vertex.  Dead agents' variables are false.

    Returns ``(model, {facet: state id})``.
    """
    mapping = {f: state_id(f) for f in c.facets}
    valuation = {mapping[f]: c.ell(f) for f in c.facets}
    relations = {}
    for a in c.agents:
        classes = []
        for v in sorted(c.vertices):
            if c.colour(v) == a:
                classes.append(frozenset(mapping[f] for f in c._facets_by_vertex[v]))
        relations[a] = tuple(classes)
    states = tuple(mapping[f] for f in c.facets)
    m = LocalEpistemicModel(c.agents, dict(c.variables), states, valuation, relations,
                            c.name and f"kappa({c.name})")
    return m, mapping


def vertex_id(agent, cls_) -> str:
    return f"{agent}{{{'|'.join(sorted(cls_))}}}"


def sigma(m: LocalEpistemicModel):
    """Vertices are pairs (class, agent); state ``s`` becomes the facet of
    its alive agents' classes.

    Returns ``(model, {state id: facet})``; raises
    :class:`NotLocalEpistemicError` on improper, non-local or all-dead input.
    """
    problems = validate_kripke(m)
    dead = [s for s in m.states if not m.alive_agents(s)]
    if dead:
        problems.append(f"states with every agent dead: {sorted(dead)}")
    if problems:
        raise NotLocalEpistemicError("not a local epistemic model: " + "; ".join(problems))
    vertices = {}
    for a in m.agents:
        own = {v for v, owner in m.variables.items() if owner == a}
        for c in m.relations.get(a, ()):
            rep = min(c)
            vid = vertex_id(a, c)
            vertices[vid] = Vertex(vid, a, frozenset(m.valuation[rep] & own))
    mapping = {}
    for s in m.states:
        mapping[s] = frozenset(vertex_id(a, m.class_of(s, a)) for a in m.alive_agents(s))
    c = SimplicialModel.build(m.agents, m.variables, vertices, mapping.values(),
                              m.name and f"sigma({m.name})")
    return c, mapping


def _state_signature(m: LocalEpistemicModel, s):
    alive = m.alive_agents(s)
    live_vars = frozenset(p for p in m.valuation[s] if m.variables.get(p) in alive)
    sizes = tuple(sorted((a, len(m.class_of(s, a))) for a in alive))
    return (tuple(sorted(alive)), tuple(sorted(live_vars)), sizes)


def find_kripke_isomorphism(m1: LocalEpistemicModel, m2: LocalEpistemicModel):
    """State bijection preserving every agent's classes and the valuation of
    alive agents' variables, or None.  Values of dead agents' variables carry
    no meaning and are not compared."""
    if set(m1.agents) != set(m2.agents) or len(m1.states) != len(m2.states):
        return None
    sig1 = {s: _state_signature(m1, s) for s in m1.states}
    sig2 = {s: _state_signature(m2, s) for s in m2.states}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return None
    order = sorted(m1.states)
    mapping, used = {}, set()

    def consistent(s):
        t = mapping[s]
        for a in m1.alive_agents(s):
            c1, c2 = m1.class_of(s, a), m2.class_of(t, a)
            for u in c1:
                if u in mapping and mapping[u] not in c2:
                    return False
            for u, w in mapping.items():
                if w in c2 and u not in c1:
                    return False
        return True

    def extend(i):
        if i == len(order):
            return True
        s = order[i]
        for t in sorted(m2.states):
            if t in used or sig2[t] != sig1[s]:
                continue
            mapping[s] = t
            used.add(t)
            if consistent(s) and extend(i + 1):
                return True
            del mapping[s]
            used.discard(t)
        return False

    return dict(mapping) if extend(0) else None


@dataclass
class RoundTripReport:
    kind: str  # "simplicial" or "kripke"
    ok: bool
    witness: dict | None = None
    message: str = ""


def roundtrip_check(x) -> RoundTripReport:
    """kappa then sigma for a simplicial model, sigma then kappa for a Kripke
    model; reports the isomorphism back to the input or why there is none."""
    if isinstance(x, SimplicialModel):
        k, _ = kappa(x)
        back, _ = sigma(k)
        iso = find_isomorphism(x, back)
        if iso is None:
            return RoundTripReport("simplicial", False, None,
                                   _diff(len(x.facets), len(back.facets),
                                         len(x.vertices), len(back.vertices)))
        return RoundTripReport("simplicial", True, iso, "isomorphic")
    try:
        s, _ = sigma(x)
    except NotLocalEpistemicError as exc:
        return RoundTripReport("kripke", False, None, str(exc))
    back, _ = kappa(s)
    iso = find_kripke_isomorphism(x, back)
    if iso is None:
        return RoundTripReport("kripke", False, None,
                               f"no isomorphism; states {len(x.states)} vs {len(back.states)}")
    return RoundTripReport("kripke", True, iso, "isomorphic")


def _diff(f1, f2, v1, v2):
    return f"no isomorphism; facets {f1} vs {f2}, vertices {v1} vs {v2}"
