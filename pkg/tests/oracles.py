"""Independent reference implementations used only by the tests.

Nothing here calls the package evaluators, the enumerator or the
isomorphism search; models are read through their raw fields only.
"""

from __future__ import annotations

import itertools

from simpepist.complex import SimplicialModel, Vertex
from simpepist.formula import AgentTop, And, Hat, Iff, Implies, Know, Neg, Or, Var

TRUE, FALSE, UNDEF = "true", "false", "undefined"


def all_simplices(facets):
    out = set()
    for f in facets:
        f = sorted(f)
        for r in range(1, len(f) + 1):
            out.update(frozenset(c) for c in itertools.combinations(f, r))
    return out


class NaiveEvaluator:
    """Definability and truth by the literal clauses; the modal clause
    ranges over every simplex Y with the agent in the colours of X and Y's
    intersection.  Derived connectives are evaluated directly (weak Kleene)
    rather than through abbreviations."""

    def __init__(self, model: SimplicialModel):
        self.m = model
        self.simplices = all_simplices(model.facets)

    def colours(self, x):
        return {self.m.vertices[v].agent for v in x}

    def _canonical(self, agent):
        return next(v for v, o in self.m.variables.items() if o == agent)

    def pair(self, x, f):
        """(defined, true) with true only meaningful when defined."""
        x = frozenset(x)
        if isinstance(f, Var):
            if f.agent not in self.colours(x):
                return False, False
            vert = next(v for v in x if self.m.vertices[v].agent == f.agent)
            return True, f.name in self.m.vertices[vert].true
        if isinstance(f, AgentTop):
            return f.agent in self.colours(x), True
        if isinstance(f, Neg):
            d, t = self.pair(x, f.arg)
            return d, d and not t
        if isinstance(f, (And, Or, Implies, Iff)):
            d1, t1 = self.pair(x, f.left)
            d2, t2 = self.pair(x, f.right)
            if not (d1 and d2):
                return False, False
            if isinstance(f, And):
                return True, t1 and t2
            if isinstance(f, Or):
                return True, t1 or t2
            if isinstance(f, Implies):
                return True, (not t1) or t2
            return True, t1 == t2
        if isinstance(f, (Hat, Know)):
            near = [y for y in self.simplices if f.agent in self.colours(x & y)]
            vals = [self.pair(y, f.arg) for y in near]
            defined = any(d for d, _ in vals)
            if isinstance(f, Hat):
                return defined, any(d and t for d, t in vals)
            # K = not Hat not: true iff defined and no defined-false successor
            return defined, defined and not any(d and not t for d, t in vals)
        raise TypeError(f"unsupported node {type(f).__name__}")

    def value(self, x, f):
        d, t = self.pair(x, f)
        if not d:
            return UNDEF
        return TRUE if t else FALSE


def naive_value(model, x, f) -> str:
    return NaiveEvaluator(model).value(x, f)


# -- brute-force enumeration -------------------------------------------------------


def _same_model(m1, m2):
    """Colour- and value-preserving vertex bijection mapping facets onto facets,
    found by trying every permutation within each colour class."""
    if len(m1.vertices) != len(m2.vertices) or len(m1.facets) != len(m2.facets):
        return False
    groups = []
    for a in m1.agents:
        v1 = sorted(v for v, x in m1.vertices.items() if x.agent == a)
        v2 = sorted(v for v, x in m2.vertices.items() if x.agent == a)
        if len(v1) != len(v2):
            return False
        groups.append((v1, v2))
    target = set(m2.facets)
    for perms in itertools.product(*(itertools.permutations(v2) for _, v2 in groups)):
        f = {}
        for (v1, _), p in zip(groups, perms):
            f.update(zip(v1, p))
        if any(m1.vertices[v].true != m2.vertices[f[v]].true for v in f):
            continue
        if {frozenset(f[v] for v in x) for x in m1.facets} == target:
            return True
    return False


def _invariant(m):
    def sig(x):
        return tuple(sorted((m.vertices[v].agent, tuple(sorted(m.vertices[v].true))) for v in x))
    return tuple(sorted(sig(x) for x in m.facets))


def brute_force_models(agents, max_facets):
    """Every model (one variable ``p_<agent>`` per agent, up to ``max_facets``
    facets) up to isomorphism, from a pool of ``max_facets`` copies of each
    agent's vertex."""
    variables = {f"p_{a}": a for a in agents}
    pool = [(a, k) for a in agents for k in range(max_facets)]
    simplices = []
    for r in range(1, len(agents) + 1):
        for combo in itertools.combinations(pool, r):
            if len({a for a, _ in combo}) == r:
                simplices.append(frozenset(f"{a}{k}" for a, k in combo))
    classes = {}
    for n in range(1, max_facets + 1):
        for facets in itertools.combinations(simplices, n):
            if any(x < y for x in facets for y in facets):
                continue
            used = sorted(set().union(*facets))
            for bits in itertools.product((False, True), repeat=len(used)):
                verts = {v: Vertex(v, v[0], frozenset([f"p_{v[0]}"]) if b else frozenset())
                         for v, b in zip(used, bits)}
                m = SimplicialModel(tuple(agents), variables, verts, tuple(facets))
                bucket = classes.setdefault(_invariant(m), [])
                if not any(_same_model(m, other) for other in bucket):
                    bucket.append(m)
    return [m for bucket in classes.values() for m in bucket]
