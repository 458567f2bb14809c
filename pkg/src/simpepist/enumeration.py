"""Exhaustive generation of small models and formulas.

Simplicial models are built facet by facet: each facet picks a colour set and,
per colour, either an existing vertex of that colour or a fresh one.  Kripke
models are built directly from per-agent partitions of subsets of the states,
so they do not depend on the translation being tested.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .complex import SimplicialModel, Vertex, canonical_key, validate
from .formula import And, Hat, Implies, Know, Neg, Or, Var

AGENT_NAMES = "abcd"
VARIABLE_STEMS = "pqr"
CONNECTIVES = ("~", "&", "|", "->", "<->", "<>", "[]")
DEFAULT_CONNECTIVES = ("~", "&", "|", "->", "<>", "[]")


@dataclass(frozen=True)
class EnumerationSpec:
    agent_count: int = 2
    vars_per_agent: int = 1
    max_facets: int = 2
    max_formula_depth: int = 2
    connectives: tuple = DEFAULT_CONNECTIVES
    seed: int = 0
    sample: int | None = None  # number of models to draw; None = exhaustive
    dedup: bool = True

    def __post_init__(self):
        if not 2 <= self.agent_count <= 4:
            raise ValueError("agent_count must be in 2..4")
        if not 1 <= self.vars_per_agent <= len(VARIABLE_STEMS):
            raise ValueError(f"vars_per_agent must be in 1..{len(VARIABLE_STEMS)}")
        if not 1 <= self.max_facets <= 4:
            raise ValueError("max_facets must be in 1..4")
        if not 0 <= self.max_formula_depth <= 3:
            raise ValueError("max_formula_depth must be in 0..3")
        bad = set(self.connectives) - set(CONNECTIVES)
        if bad:
            raise ValueError(f"unknown connectives {sorted(bad)}")
        if self.sample is not None and self.sample < 1:
            raise ValueError("sample must be positive")
        object.__setattr__(self, "connectives", tuple(self.connectives))

    @property
    def agents(self) -> tuple:
        return tuple(AGENT_NAMES[: self.agent_count])

    @property
    def variables(self) -> dict:
        return {f"{stem}_{a}": a for a in self.agents
                for stem in VARIABLE_STEMS[: self.vars_per_agent]}

    def label(self) -> str:
        mode = f"sample={self.sample} seed={self.seed}" if self.sample else "exhaustive"
        return (f"agents={self.agent_count} vars={self.vars_per_agent} "
                f"facets<={self.max_facets} depth<={self.max_formula_depth} {mode}")


# -- simplicial models -----------------------------------------------------------


def _colour_sets(agents):
    out = []
    for r in range(1, len(agents) + 1):
        out.extend(itertools.combinations(agents, r))
    return out


def _facet_structures(agents, n):
    """Facet lists of ``n`` facets over vertex ids ``<agent><k>``; fresh
    vertices are numbered in order of creation, so relabellings of the same
    structure are mostly avoided."""
    colour_sets = _colour_sets(agents)

    def grow(facets, counts):
        if len(facets) == n:
            yield list(facets)
            return
        for colours in colour_sets:
            options = [[f"{a}{k}" for k in range(counts.get(a, 0) + 1)] for a in colours]
            for choice in itertools.product(*options):
                f = frozenset(choice)
                if any(f <= g or g <= f for g in facets):
                    continue
                new_counts = dict(counts)
                for v in choice:
                    a, k = v[0], int(v[1:])
                    if k == counts.get(a, 0):
                        new_counts[a] = k + 1
                yield from grow(facets + [f], new_counts)

    yield from grow([], {})


def _valuations(vertex_ids, owned):
    """Every assignment of true-variable sets; all-false first."""
    per_vertex = []
    for v in vertex_ids:
        names = owned[v[0]]
        subsets = [frozenset(c) for r in range(len(names) + 1)
                   for c in itertools.combinations(names, r)]
        per_vertex.append(subsets)
    for combo in itertools.product(*per_vertex):
        yield dict(zip(vertex_ids, combo))


def _all_simplicial(spec: EnumerationSpec):
    agents, variables = spec.agents, spec.variables
    owned = {a: [v for v, o in variables.items() if o == a] for a in agents}
    seen = set()
    for n in range(1, spec.max_facets + 1):
        for facets in _facet_structures(agents, n):
            vids = sorted(set().union(*facets))
            for val in _valuations(vids, owned):
                verts = {v: Vertex(v, v[0], val[v]) for v in vids}
                m = SimplicialModel(agents, variables, verts,
                                    tuple(sorted(facets, key=lambda f: (len(f), sorted(f)))))
                if spec.dedup:
                    key = canonical_key(m)
                    if key in seen:
                        continue
                    seen.add(key)
                yield m


def enumerate_simplicial(spec: EnumerationSpec):
    """Deterministic stream of valid models within the bounds of ``spec``.

    In sample mode ``spec.sample`` models are drawn (seeded) from the
    exhaustive stream, keeping stream order.
    """
    return iter(_cached_models(spec))


@lru_cache(maxsize=16)
def _cached_models(spec):
    full = list(_all_simplicial(spec))
    for m in full:
        problems = validate(m)
        if problems:  # generator contract; never expected
            raise AssertionError(f"enumerated invalid model: {problems}")
    for i, m in enumerate(full):
        object.__setattr__(m, "name", f"enum-{i}")
    if spec.sample is None or spec.sample >= len(full):
        return tuple(full)
    picks = sorted(random.Random(spec.seed).sample(range(len(full)), spec.sample))
    return tuple(full[i] for i in picks)


def count_simplicial(spec: EnumerationSpec) -> int:
    return len(_cached_models(spec))


# -- Kripke models ---------------------------------------------------------------


def _partial_partitions(states):
    """Every partition of every subset of ``states``."""
    out = []
    for r in range(len(states) + 1):
        for subset in itertools.combinations(states, r):
            out.extend(_partitions(list(subset)))
    return out


def _partitions(items):
    if not items:
        return [()]
    first, rest = items[0], items[1:]
    out = []
    for p in _partitions(rest):
        out.append((frozenset([first]),) + p)
        for i in range(len(p)):
            out.append(p[:i] + (p[i] | {first},) + p[i + 1:])
    return out


def enumerate_kripke(spec: EnumerationSpec):
    """Valid local epistemic models with up to ``max_facets`` states.

    Variables of dead agents are false.  Deduplicated up to isomorphism when
    ``spec.dedup`` is set.
    """
    from .kripke import LocalEpistemicModel, validate_kripke
    agents, variables = spec.agents, spec.variables
    owned = {a: [v for v, o in variables.items() if o == a] for a in agents}
    seen = set()
    out = []
    for n in range(1, spec.max_facets + 1):
        states = [f"s{i}" for i in range(n)]
        options = _partial_partitions(states)
        for rels in itertools.product(options, repeat=len(agents)):
            relations = dict(zip(agents, rels))
            alive = {a: frozenset().union(*relations[a]) if relations[a] else frozenset()
                     for a in agents}
            if any(not any(s in alive[a] for a in agents) for s in states):
                continue
            # a valuation per (class, variable) keeps locality by construction
            slots = [(a, c, p) for a in agents for c in relations[a] for p in owned[a]]
            for bits in itertools.product((False, True), repeat=len(slots)):
                val = {s: set() for s in states}
                for (a, c, p), b in zip(slots, bits):
                    if b:
                        for s in c:
                            val[s].add(p)
                m = LocalEpistemicModel(agents, variables, tuple(states),
                                        {s: frozenset(v) for s, v in val.items()},
                                        {a: tuple(sorted(relations[a], key=sorted)) for a in agents})
                if validate_kripke(m):
                    continue
                if spec.dedup:
                    key = kripke_key(m)
                    if key in seen:
                        continue
                    seen.add(key)
                out.append(m)
    if spec.sample is not None and spec.sample < len(out):
        picks = sorted(random.Random(spec.seed).sample(range(len(out)), spec.sample))
        out = [out[i] for i in picks]
    for i, m in enumerate(out):
        object.__setattr__(m, "name", f"kenum-{i}")
    return iter(out)


def kripke_key(m) -> tuple:
    """Isomorphism-invariant key: minimum encoding over state orderings."""
    best = None
    for perm in itertools.permutations(m.states):
        pos = {s: i for i, s in enumerate(perm)}
        enc = (tuple(tuple(sorted(m.valuation[s])) for s in perm),
               tuple(tuple(sorted(tuple(sorted(pos[s] for s in c)) for c in m.relations[a]))
                     for a in m.agents))
        if best is None or enc < best:
            best = enc
    return best


# -- formulas ----------------------------------------------------------------------


def enumerate_formulas(spec: EnumerationSpec, depth: int | None = None, agents=None):
    """All formulas up to ``depth`` (default the spec's) over the spec's
    variables, agents and connectives; deterministic and duplicate-free.

    Depth counts connective nesting: atoms have depth 0.
    """
    depth = spec.max_formula_depth if depth is None else depth
    agents = tuple(agents) if agents is not None else spec.agents
    variables = tuple(v for v, o in spec.variables.items() if o in agents)
    return iter(formula_pool(variables, agents, depth, spec.connectives))


@lru_cache(maxsize=64)
def formula_pool(variables: tuple, agents: tuple, depth: int, connectives=DEFAULT_CONNECTIVES) -> tuple:
    atoms = tuple(Var(v, v.rsplit("_", 1)[1]) for v in variables)
    if depth == 0:
        return atoms
    prev = formula_pool(variables, agents, depth - 1, connectives)
    out = list(prev)
    seen = set(prev)

    def add(f):
        if f not in seen:
            seen.add(f)
            out.append(f)

    for f in prev:
        if "~" in connectives:
            add(Neg(f))
        for a in agents:
            if "<>" in connectives:
                add(Hat(a, f))
            if "[]" in connectives:
                add(Know(a, f))
    binary = [(c, k) for c, k in (("&", And), ("|", Or), ("->", Implies)) if c in connectives]
    if "<->" in connectives:
        from .formula import Iff
        binary.append(("<->", Iff))
    for _, k in binary:
        for f in prev:
            for g in prev:
                add(k(f, g))
    return tuple(out)
