"""Batch evaluation of formulas over many points at once.

All points of a family (simplices of simplicial models, or states of Kripke
models) are laid out along one axis.  Per agent a sparse 0/1 matrix sends a
point to the points its possibility modality ranges over, so one
matrix-vector product evaluates a modal step at every point.  Results are
pairs of boolean vectors ``(defined, true)``.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse

from .formula import And, Hat, Neg, Var, desugar


class PointTable:
    def __init__(self, agents, variables, points, model_of, alive, val, relations,
                 top_vars=None):
        self.agents = tuple(agents)
        self.variables = dict(variables)  # name -> owner
        self.points = points
        self.model_of = np.asarray(model_of, dtype=np.int64)
        self.alive = alive  # (n, agents) bool
        self.val = val  # (n, variables) bool
        self.relations = relations  # agent -> csr (n, n)
        self._agent_index = {a: i for i, a in enumerate(self.agents)}
        self._var_index = {v: i for i, v in enumerate(self.variables)}
        self._top = top_vars or {}
        self._cache = {}
        self._pure_cache = {}
        self.facet_mask = np.zeros(len(points), dtype=bool)
        self.sub_pairs = (np.zeros(0, np.int64), np.zeros(0, np.int64))
        self.star = None

    def __len__(self):
        return len(self.points)

    # -- constructors --------------------------------------------------------

    @classmethod
    def simplicial(cls, models, quantify="facets"):
        """Every simplex of every model is a point.

        ``quantify="facets"`` lets the modality of ``a`` at ``X`` range over
        the facets containing ``X_a``; ``"simplices"`` over every simplex
        containing ``X_a`` (the literal reading, kept as an oracle).
        """
        if quantify not in ("facets", "simplices"):
            raise ValueError(f"unknown quantification {quantify!r}")
        models = list(models)
        agents, variables, top = _signature(models)
        a_idx = {a: i for i, a in enumerate(agents)}
        v_idx = {v: i for i, v in enumerate(variables)}
        points, model_of, alive_rows, val_rows = [], [], [], []
        rel_rows = {a: ([], []) for a in agents}
        facet_mask, star_rows, star_cols, sub, sup = [], [], [], [], []
        for k, m in enumerate(models):
            base = len(points)
            simplices = m.simplices
            index = {x: base + i for i, x in enumerate(simplices)}
            by_vertex = {}
            for x in simplices:
                if quantify == "simplices" or x in m.facet_set:
                    for v in x:
                        by_vertex.setdefault(v, []).append(index[x])
            for x in simplices:
                i = index[x]
                points.append(x)
                model_of.append(k)
                facet_mask.append(x in m.facet_set)
                arow = np.zeros(len(agents), dtype=bool)
                vrow = np.zeros(len(variables), dtype=bool)
                for v in x:
                    vx = m.vertices[v]
                    arow[a_idx[vx.agent]] = True
                    for p in vx.true:
                        vrow[v_idx[p]] = True
                    rows, cols = rel_rows[vx.agent]
                    targets = by_vertex[v]
                    rows.extend([i] * len(targets))
                    cols.extend(targets)
                alive_rows.append(arow)
                val_rows.append(vrow)
                for f in m.star_facets(x):
                    star_rows.append(i)
                    star_cols.append(index[f])
                # immediate supersets suffice for monotony checks by transitivity,
                # but all pairs are cheap at this scale
                for y in simplices:
                    if x < y:
                        sub.append(i)
                        sup.append(index[y])
        n = len(points)
        rel = {a: _csr(rows, cols, n) for a, (rows, cols) in rel_rows.items()}
        t = cls(agents, variables, points, model_of, _stack(alive_rows, len(agents)),
                _stack(val_rows, len(variables)), rel, top)
        t.facet_mask = np.asarray(facet_mask, dtype=bool)
        t.star = _csr(star_rows, star_cols, n)
        t.sub_pairs = (np.asarray(sub, np.int64), np.asarray(sup, np.int64))
        return t

    @classmethod
    def kripke(cls, models):
        """Every state of every local epistemic model is a point."""
        models = list(models)
        agents, variables, top = _signature(models)
        v_idx = {v: i for i, v in enumerate(variables)}
        points, model_of, alive_rows, val_rows = [], [], [], []
        rel_rows = {a: ([], []) for a in agents}
        for k, m in enumerate(models):
            base = len(points)
            index = {s: base + i for i, s in enumerate(m.states)}
            for s in m.states:
                points.append(s)
                model_of.append(k)
                alive_rows.append(np.array([s in m.alive(a) for a in agents], dtype=bool))
                vrow = np.zeros(len(variables), dtype=bool)
                for p in m.valuation[s]:
                    if p in v_idx:
                        vrow[v_idx[p]] = True
                val_rows.append(vrow)
            for a in agents:
                rows, cols = rel_rows[a]
                for cls_ in m.relations.get(a, ()):
                    for s in cls_:
                        for t_ in cls_:
                            rows.append(index[s])
                            cols.append(index[t_])
        n = len(points)
        rel = {a: _csr(rows, cols, n) for a, (rows, cols) in rel_rows.items()}
        t = cls(agents, variables, points, model_of, _stack(alive_rows, len(agents)),
                _stack(val_rows, len(variables)), rel, top)
        t.facet_mask = np.ones(n, dtype=bool)
        return t

    # -- evaluation ----------------------------------------------------------

    def top_var(self, agent):
        name = self._top.get(agent, f"p_{agent}")
        return Var(name, agent)

    def prepare(self, f):
        return desugar(f, self.top_var)

    def eval(self, f):
        """``(defined, true)`` boolean vectors for ``f`` at every point."""
        return self._eval(self.prepare(f))

    def values(self, f):
        """Int8 codes: 1 true, 0 false, -1 undefined."""
        d, t = self.eval(f)
        out = np.where(t, 1, 0).astype(np.int8)
        out[~d] = -1
        return out

    def _eval(self, f):
        hit = self._cache.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Var):
            ai = self._agent_index.get(f.agent)
            if ai is None:
                d = np.zeros(len(self.points), dtype=bool)
            else:
                d = self.alive[:, ai]
            vi = self._var_index.get(f.name)
            t = d & self.val[:, vi] if vi is not None else np.zeros_like(d)
        elif isinstance(f, Neg):
            d, ta = self._eval(f.arg)
            t = d & ~ta
        elif isinstance(f, And):
            dl, tl = self._eval(f.left)
            dr, tr = self._eval(f.right)
            d, t = dl & dr, tl & tr
        elif isinstance(f, Hat):
            da, ta = self._eval(f.arg)
            r = self.relations.get(f.agent)
            if r is None:
                d = t = np.zeros(len(self.points), dtype=bool)
            else:
                d = _step(r, da)
                t = _step(r, ta)
        else:
            raise TypeError(f"not a primitive formula: {f!r}")
        out = (d, t)
        self._cache[f] = out
        return out

    def eval_pure(self, f):
        """Two-valued truth with complement negation.  Only meaningful at
        facets of models where every facet holds every agent."""
        return self._pure(self.prepare(f))

    def _pure(self, f):
        hit = self._pure_cache.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Var):
            out = self.val[:, self._var_index[f.name]].copy()
        elif isinstance(f, Neg):
            out = ~self._pure(f.arg)
        elif isinstance(f, And):
            out = self._pure(f.left) & self._pure(f.right)
        else:
            out = _step(self.relations[f.agent], self._pure(f.arg))
        self._pure_cache[f] = out
        return out

    def clear(self):
        self._cache.clear()
        self._pure_cache.clear()

    def first(self, bad) -> int:
        """First flagged point: earliest model, its facets before lower faces."""
        bad = np.asarray(bad)
        k = self.model_of[bad[0]]
        same = bad[self.model_of[bad] == k]
        facets = same[self.facet_mask[same]]
        return int(facets[0] if facets.size else same[0])


def _step(rel, vec):
    return (rel @ vec.astype(np.int32)) > 0


def _csr(rows, cols, n):
    data = np.ones(len(rows), dtype=np.int32)
    m = sparse.csr_matrix((data, (np.asarray(rows, np.int64), np.asarray(cols, np.int64))),
                          shape=(n, n))
    m.sum_duplicates()
    m.data[:] = 1
    return m


def _stack(rows, width):
    if not rows:
        return np.zeros((0, width), dtype=bool)
    return np.vstack(rows).astype(bool)


def _signature(models):
    """Shared agent tuple, variable table and canonical ``T_a`` variables."""
    if not models:
        return (), {}, {}
    agents = []
    variables = {}
    for m in models:
        for a in m.agents:
            if a not in agents:
                agents.append(a)
        for v, owner in m.variables.items():
            if variables.setdefault(v, owner) != owner:
                raise ValueError(f"variable {v} has conflicting owners across models")
    top = {}
    for a in agents:
        names = {m.canonical_variable(a) for m in models if a in m.agents}
        if len(names) > 1:
            raise ValueError(f"models disagree on the canonical variable of {a}")
        if names:
            top[a] = names.pop()
    return tuple(agents), variables, top
