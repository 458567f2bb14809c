"""Chromatic simplicial models.

A model is stored by its facets only; every non-empty subset of a facet is a
simplex.  Vertices carry an agent colour and the set of that agent's local
variables that are true there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

Simplex = frozenset  # frozenset of vertex ids


class SimplexError(ValueError):
    """Raised when a simplex is not part of the model it is used with."""


class SkeletonError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: str
    agent: str
    true: frozenset = frozenset()


@dataclass(frozen=True, eq=False)
class SimplicialModel:
    """A simplicial model ``(C, chi, ell)`` given by its facet set.

    ``variables`` maps each variable name to its owning agent; declaration
    order is kept, the first variable of an agent is its canonical one.
    Construction does not validate; call :func:`validate` or use
    :meth:`build`, which normalizes and raises on violations.
    """

    agents: tuple
    variables: Mapping[str, str]
    vertices: Mapping[str, Vertex]
    facets: tuple  # tuple of frozensets, canonical order after normalize()

    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, agents, variables, vertices, facets, name=""):
        """Normalize and validate; raise ``ValueError`` listing every violation."""
        if isinstance(variables, Mapping):
            variables = dict(variables)
        else:
            variables = {v: owner for v, owner in variables}
        if not isinstance(vertices, Mapping):
            vertices = {v.id: v for v in vertices}
        m = cls(tuple(agents), variables, dict(vertices),
                tuple(frozenset(f) for f in facets), name)
        m = normalize(m)
        problems = validate(m)
        if problems:
            raise ValueError("invalid simplicial model: " + "; ".join(problems))
        return m

    # -- basic accessors -------------------------------------------------

    def colour(self, v: str) -> str:
        return self.vertices[v].agent

    def chi(self, x: Iterable[str]) -> frozenset:
        return frozenset(self.vertices[v].agent for v in x)

    def ell(self, x: Iterable[str]) -> frozenset:
        out = set()
        for v in x:
            out |= self.vertices[v].true
        return frozenset(out)

    def vertex_of(self, x: Iterable[str], agent: str):
        """The ``agent``-coloured vertex of ``x`` (``X_a``), or None."""
        for v in x:
            if self.vertices[v].agent == agent:
                return v
        return None

    def canonical_variable(self, agent: str) -> str:
        for name, owner in self.variables.items():
            if owner == agent:
                return name
        return f"p_{agent}"

    def owner(self, var: str) -> str:
        return self.variables[var]

    @cached_property
    def facet_set(self) -> frozenset:
        return frozenset(self.facets)

    @cached_property
    def simplices(self) -> tuple:
        """Every simplex of the complex, ordered by size then sorted ids."""
        out = set()
        for f in self.facets:
            out.update(faces(f))
        return tuple(sorted(out, key=simplex_key))

    @cached_property
    def _facets_by_vertex(self) -> dict:
        table = {v: [] for v in self.vertices}
        for f in self.facets:
            for v in f:
                table[v].append(f)
        return {v: tuple(fs) for v, fs in table.items()}

    def is_simplex(self, x) -> bool:
        x = frozenset(x)
        if not x or not x <= self.vertices.keys():
            return False
        first = next(iter(x))
        return any(x <= f for f in self._facets_by_vertex.get(first, ()))

    def require_simplex(self, x) -> frozenset:
        x = frozenset(x)
        if not self.is_simplex(x):
            raise SimplexError(f"unknown simplex {sorted(x)}")
        return x

    def star_facets(self, x) -> tuple:
        """Facets containing ``x``."""
        x = self.require_simplex(x)
        first = next(iter(x))
        return tuple(f for f in self._facets_by_vertex[first] if x <= f)

    def star(self, x) -> tuple:
        """All simplices containing ``x``."""
        x = self.require_simplex(x)
        return tuple(y for y in self.simplices if x <= y)

    def agent_star_facets(self, x, agent: str) -> tuple:
        """Facets ``Y`` with ``agent`` in ``chi(x & Y)``: the star of ``X_a``."""
        v = self.vertex_of(x, agent)
        if v is None:
            return ()
        return self._facets_by_vertex[v]

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<SimplicialModel{label} agents={list(self.agents)} facets={describe_facets(self)}>"


def simplex_key(x) -> tuple:
    return (len(x), tuple(sorted(x)))


def describe_facets(m: SimplicialModel) -> list:
    return [sorted(f) for f in m.facets]


def faces(x) -> set:
    """All non-empty subsets of ``x``."""
    items = sorted(x)
    return {frozenset(c) for r in range(1, len(items) + 1)
            for c in itertools.combinations(items, r)}


def maximal(sets: Iterable) -> list:
    """Drop duplicates and sets contained in another member."""
    uniq = sorted(set(frozenset(s) for s in sets), key=lambda s: -len(s))
    keep = []
    for s in uniq:
        if not any(s <= k for k in keep):
            keep.append(s)
    return sorted(keep, key=simplex_key)


def normalize(m: SimplicialModel) -> SimplicialModel:
    """Canonical facet form: drop subsumed facets, add orphan vertices as
    singleton facets, sort facets."""
    fs = [f for f in m.facets if f]
    covered = set().union(*fs) if fs else set()
    fs.extend(frozenset([v]) for v in m.vertices if v not in covered)
    return SimplicialModel(m.agents, m.variables, m.vertices, tuple(maximal(fs)), m.name)


def validate(m: SimplicialModel) -> list:
    """Every violated model invariant as a message; empty when valid."""
    problems = []
    if not m.agents:
        problems.append("empty agent set")
    if len(set(m.agents)) != len(m.agents):
        problems.append("duplicate agents")
    for var, owner in m.variables.items():
        if owner not in m.agents:
            problems.append(f"variable {var} owned by unknown agent {owner}")
    if not m.facets:
        problems.append("no facets")
    for vid, vx in m.vertices.items():
        if vid != vx.id:
            problems.append(f"vertex key {vid} does not match id {vx.id}")
        if vx.agent not in m.agents:
            problems.append(f"vertex {vid} coloured by unknown agent {vx.agent}")
        for p in vx.true:
            if p not in m.variables:
                problems.append(f"vertex {vid} has undeclared variable {p}")
            elif m.variables[p] != vx.agent:
                problems.append(
                    f"variable/colour mismatch at {vid}: {p} belongs to "
                    f"{m.variables[p]}, vertex is {vx.agent}")
    seen = set()
    for f in m.facets:
        if not f:
            problems.append("empty facet")
            continue
        unknown = f - m.vertices.keys()
        if unknown:
            problems.append(f"facet {sorted(f)} has unknown vertices {sorted(unknown)}")
            continue
        colours = [m.vertices[v].agent for v in f]
        if len(set(colours)) != len(colours):
            problems.append(f"non-chromatic facet {sorted(f)}")
        if f in seen:
            problems.append(f"duplicate facet {sorted(f)}")
        seen.add(f)
    for f in m.facets:
        for g in m.facets:
            if f < g:
                problems.append(f"subsumed facet {sorted(f)} (inside {sorted(g)})")
    covered = set().union(*m.facets) if m.facets else set()
    for vid in m.vertices:
        if vid not in covered:
            problems.append(f"orphan vertex {vid}")
    return problems


def dimension(m: SimplicialModel) -> int:
    return max(len(f) for f in m.facets) - 1


def is_pure(m: SimplicialModel) -> bool:
    return len({len(f) for f in m.facets}) == 1


def is_full_pure(m: SimplicialModel) -> bool:
    """Pure of dimension ``|A| - 1``: every facet holds every agent."""
    return all(len(f) == len(m.agents) for f in m.facets)


def _restrict(m: SimplicialModel, facets) -> SimplicialModel:
    facets = maximal(facets)
    used = set().union(*facets)
    verts = {v: m.vertices[v] for v in m.vertices if v in used}
    return SimplicialModel(m.agents, m.variables, verts, tuple(facets), m.name)


def skeleton_by_agents(m: SimplicialModel, agents) -> SimplicialModel:
    """The B-skeleton: simplices whose colours all lie in ``agents``."""
    b = set(agents)
    parts = [frozenset(v for v in f if m.vertices[v].agent in b) for f in m.facets]
    parts = [p for p in parts if p]
    if not parts:
        raise SkeletonError(f"empty skeleton for agents {sorted(b)}")
    return _restrict(m, parts)


def m_skeleton(m: SimplicialModel, k: int) -> SimplicialModel:
    """Simplices of dimension at most ``k``."""
    if not 0 <= k <= dimension(m):
        raise SkeletonError(f"skeleton dimension {k} outside 0..{dimension(m)}")
    parts = []
    for f in m.facets:
        if len(f) <= k + 1:
            parts.append(f)
        else:
            parts.extend(frozenset(c) for c in itertools.combinations(sorted(f), k + 1))
    return _restrict(m, parts)


# -- maps and isomorphism ---------------------------------------------------


def check_simplicial_map(f: Mapping, m1: SimplicialModel, m2: SimplicialModel,
                         rigid=False, chromatic=False, value_preserving=False) -> list:
    """Violations of ``f`` being a simplicial map with the requested flags."""
    problems = []
    missing = [v for v in m1.vertices if v not in f]
    if missing:
        return [f"map undefined on {sorted(missing)}"]
    bad = [v for v in m1.vertices if f[v] not in m2.vertices]
    if bad:
        return [f"image of {sorted(bad)} outside target vertices"]
    # checking facets suffices: faces map into faces of the image
    for x in m1.facets:
        image = frozenset(f[v] for v in x)
        if not m2.is_simplex(image):
            problems.append(f"image of {sorted(x)} is not a simplex")
        if rigid and len(image) != len(x):
            problems.append(f"not rigid: {sorted(x)} shrinks to {sorted(image)}")
    for v in sorted(m1.vertices):
        if chromatic and m2.colour(f[v]) != m1.colour(v):
            problems.append(f"not chromatic at {v}")
        if value_preserving and m2.vertices[f[v]].true != m1.vertices[v].true:
            problems.append(f"not value preserving at {v}")
    return problems


def _vertex_signature(m: SimplicialModel, v: str) -> tuple:
    vx = m.vertices[v]
    sizes = tuple(sorted(len(f) for f in m._facets_by_vertex[v]))
    return (vx.agent, tuple(sorted(vx.true)), sizes)


def find_isomorphism(m1: SimplicialModel, m2: SimplicialModel):
    """A colour- and value-preserving vertex bijection mapping facets onto
    facets, or None.  Backtracks over per-signature candidate lists."""
    if set(m1.agents) != set(m2.agents):
        return None
    if len(m1.vertices) != len(m2.vertices) or len(m1.facets) != len(m2.facets):
        return None
    if sorted(map(len, m1.facets)) != sorted(map(len, m2.facets)):
        return None
    sig1 = {v: _vertex_signature(m1, v) for v in m1.vertices}
    sig2 = {v: _vertex_signature(m2, v) for v in m2.vertices}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return None

    # most constrained first: vertices in many facets
    order = sorted(m1.vertices, key=lambda v: (-len(m1._facets_by_vertex[v]), v))
    candidates = {v: [w for w in sorted(m2.vertices) if sig2[w] == sig1[v]] for v in order}
    facets2 = m2.facet_set
    mapping, used = {}, set()

    def consistent(v):
        for x in m1._facets_by_vertex[v]:
            if all(u in mapping for u in x):
                if frozenset(mapping[u] for u in x) not in facets2:
                    return False
            else:
                img = frozenset(mapping[u] for u in x if u in mapping)
                if not m2.is_simplex(img):
                    return False
        return True

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            mapping[v] = w
            used.add(w)
            if consistent(v) and extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if extend(0):
        return dict(mapping)
    return None


def is_isomorphic(m1: SimplicialModel, m2: SimplicialModel) -> bool:
    return find_isomorphism(m1, m2) is not None


def canonical_key(m: SimplicialModel) -> tuple:
    """Isomorphism-invariant key: minimum over facet orderings of the
    encoding obtained by numbering vertices in order of first use.

    Factorial in the facet count; meant for enumerated models (<= 4 facets).
    """
    rank = {a: i for i, a in enumerate(sorted(m.agents))}
    best = None
    for perm in itertools.permutations(m.facets):
        names = {}
        counters = {}
        enc = []
        for f in perm:
            row = []
            for v in sorted(f, key=lambda u: rank[m.vertices[u].agent]):
                if v not in names:
                    a = m.vertices[v].agent
                    names[v] = counters.get(a, 0)
                    counters[a] = names[v] + 1
                vx = m.vertices[v]
                row.append((rank[vx.agent], names[v], tuple(sorted(vx.true))))
            enc.append(tuple(row))
        enc = tuple(enc)
        if best is None or enc < best:
            best = enc
    return (tuple(sorted(m.agents)), best)
