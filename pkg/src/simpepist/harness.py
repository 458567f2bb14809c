"""Property suites over bounded families, and counterexample search.

Every suite evaluates whole formula pools over a family at once (see
:mod:`simpepist.table`) and records each point where a proved property
fails.  Pointwise checks only look inside one model, so the family can be
split into chunks of models and the chunk reports merged; rule checks merge
per-instance refutation flags with OR before deciding.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .complex import is_full_pure, validate
from .enumeration import EnumerationSpec, enumerate_kripke, enumerate_simplicial, formula_pool
from .formula import (And, Formula, Hat, Iff, Implies, Know, Neg, Or, Var, agents_of,
                      instantiate, metavariables, parse_schema, substitute, to_text,
                      top_transform)
from .kripke import KripkeEvaluator, kappa, roundtrip_check, sigma, validate_kripke
from .semantics import (AXIOMS, Evaluator, ReferenceEvaluator, TruthValue,
                        Witness, axiom_instance, eval3)
from .table import PointTable

MAX_RECORDED = 25
CODE = {1: "true", 0: "false", -1: "undefined"}

SUITES = ("lemma-3", "monotony", "s5top", "phitop", "pure", "correspondence",
          "substitution", "oracle", "invalid-k", "invalid-mp")
EXPECTS_COUNTEREXAMPLE = {"invalid-k", "invalid-mp"}


@dataclass
class Violation:
    check: str
    model: dict
    point: list
    formula: str
    expected: str
    actual: str

    def to_json(self):
        return dict(self.__dict__)


@dataclass
class SuiteReport:
    name: str
    family: str
    cases: int = 0
    violations: list = field(default_factory=list)
    violation_count: int = 0
    details: dict = field(default_factory=dict)
    witness: dict | None = None
    expects_counterexample: bool = False

    @property
    def passed(self) -> bool:
        if self.expects_counterexample:
            return self.witness is not None and self.violation_count == 0
        return self.violation_count == 0

    def merge(self, other: "SuiteReport") -> "SuiteReport":
        self.cases += other.cases
        room = MAX_RECORDED - len(self.violations)
        self.violations.extend(other.violations[:max(room, 0)])
        self.violation_count += other.violation_count
        for k, v in other.details.items():
            self.details[k] = self.details.get(k, 0) + v
        return self

    def to_json(self):
        return {"suite": self.name, "family": self.family, "passed": self.passed,
                "cases": self.cases, "violation_count": self.violation_count,
                "violations": [v.to_json() for v in self.violations],
                "details": dict(sorted(self.details.items())),
                "witness": self.witness}

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = ""
        if self.expects_counterexample:
            extra = " witness found" if self.witness else " no witness within bounds"
        return (f"{verdict} {self.name} [{self.family}] cases={self.cases} "
                f"violations={self.violation_count}{extra}")


class _Collector:
    """Accumulates pointwise checks for one table of models."""

    def __init__(self, report, table, models):
        self.report = report
        self.table = table
        self.models = models

    def check(self, name, ok, formula, expected="", actual=None, where=None):
        """``ok`` is a boolean vector over ``where`` (default: all points)."""
        ok = np.asarray(ok, dtype=bool)
        self.report.cases += int(ok.size)
        if ok.all():
            return
        bad = np.flatnonzero(~ok)
        self.report.violation_count += int(bad.size)
        for j in bad[: max(MAX_RECORDED - len(self.report.violations), 0)]:
            i = int(where[j]) if where is not None else int(j)
            self._record(name, i, formula, expected, actual)

    def _record(self, name, i, formula, expected, actual):
        from .io import kripke_to_json, model_to_json
        m = self.models[self.table.model_of[i]]
        text = to_text(formula) if isinstance(formula, Formula) else str(formula)
        if actual is None and isinstance(formula, Formula):
            actual = CODE[int(self.table.values(formula)[i])]
        point = self.table.points[i]
        if hasattr(m, "states"):
            dump, where = kripke_to_json(m), [point]
        else:
            dump, where = model_to_json(m), sorted(point)
        self.report.violations.append(Violation(name, dump, where, text, expected, str(actual)))


def pool(spec: EnumerationSpec, depth: int) -> tuple:
    return formula_pool(tuple(spec.variables), spec.agents, max(depth, 0), spec.connectives)


def _trim(table, keep, limit=20000):
    if len(table._cache) > limit:
        table._cache = {k: v for k, v in table._cache.items() if k in keep}


def _pinned(table, formulas):
    from .formula import subformulas
    keep = set()
    for f in formulas:
        keep |= subformulas(table.prepare(f))
    return keep


# -- pointwise suites ----------------------------------------------------------------


def _lemma3(spec, models, report):
    t = PointTable.simplicial(models)
    c = _Collector(report, t, models)
    d = spec.max_formula_depth
    small = pool(spec, d - 1)
    keep = _pinned(t, small)
    alive = t.alive
    a_idx = {a: i for i, a in enumerate(t.agents)}
    for f in pool(spec, d):
        D, T = t.eval(f)
        DN, TN = t.eval(Neg(f))
        c.check("satisfaction-implies-definability", ~T | D, f, "defined wherever true")
        c.check("negation-duality", (DN == D) & (~D | (TN == ~T)), Neg(f),
                "flip of the argument where defined")
        c.check("definability-corollary", D == (T | TN), f, "defined iff f or ~f true")
        DD, TT = t.eval(Neg(Neg(f)))
        c.check("double-negation", (DD == D) & (TT == T), Neg(Neg(f)), "same as f")
        need = [a_idx[a] for a in agents_of(t.prepare(f))]
        covered = alive[:, need].all(axis=1)
        c.check("agents-lemma", ~covered | D, f, "defined where its agents are alive")
        for a in spec.agents:
            DH, TH = t.eval(Hat(a, f))
            DK, TK = t.eval(Know(a, f))
            c.check("hat-know-definability", DH == DK, Know(a, f), "defined iff <a>f is")
            refuting = (t.relations[a] @ (D & ~T).astype(np.int32)) > 0
            c.check("know-clause", TK == (DK & ~refuting), Know(a, f),
                    "true iff defined and f true wherever defined")
        _trim(t, keep)
    for f in small:
        Df, Tf = t.eval(f)
        for g in small:
            Dg, Tg = t.eval(g)
            both = Df & Dg
            for formula, truth in ((Or(f, g), Tf | Tg), (Implies(f, g), ~Tf | Tg),
                                   (Iff(f, g), Tf == Tg), (And(f, g), Tf & Tg)):
                D, T = t.eval(formula)
                c.check("derived-connective", (D == both) & (T == (both & truth)), formula,
                        "classical table when both sides are defined, else undefined")
        _trim(t, keep)


def _monotony(spec, models, report):
    t = PointTable.simplicial(models)
    c = _Collector(report, t, models)
    sub, sup = t.sub_pairs
    keep = _pinned(t, pool(spec, spec.max_formula_depth - 1))
    for f in pool(spec, spec.max_formula_depth):
        D, T = t.eval(f)
        F = D & ~T
        c.check("upward-definability", ~D[sub] | D[sup], f, "defined on supersets", where=sup)
        c.check("upward-truth", ~T[sub] | T[sup], f, "true on supersets", where=sup)
        c.check("upward-falsity", ~F[sub] | F[sup], f, "false on supersets", where=sup)
        c.check("downward-truth", ~(T[sup] & D[sub]) | T[sub], f,
                "true on defined faces of a true simplex", where=sub)
        all_facets_true = (t.star @ (~T).astype(np.int32)) == 0
        c.check("facet-corollary", ~D | (T == all_facets_true), f,
                "true iff true at every facet above")
        _trim(t, keep)


def _phitop(spec, models, report):
    t = PointTable.simplicial(models)
    c = _Collector(report, t, models)
    for f in pool(spec, spec.max_formula_depth):
        g = top_transform(f)
        D, T = t.eval(f)
        DG, TG = t.eval(g)
        c.check("top-valid", ~DG | TG, g, "never false")
        c.check("top-equidefinable", DG == D, g, "defined exactly where f is")
        _trim(t, set())


def _pure(spec, models, report):
    members = [m for m in models if is_full_pure(m)]
    report.details["pure-models"] = len(members)
    if not members:
        return
    t = PointTable.simplicial(members)
    c = _Collector(report, t, members)
    facets = np.flatnonzero(t.facet_mask)
    for f in pool(spec, spec.max_formula_depth):
        D, T = t.eval(f)
        P = t.eval_pure(f)
        c.check("pure-defined", D[facets], f, "defined at facets", where=facets)
        c.check("pure-agrees", T[facets] == P[facets], f, "same as two-valued semantics",
                where=facets)
        _trim(t, set())


def _correspondence(spec, models, report, kripke_models):
    formulas = pool(spec, spec.max_formula_depth)
    # simplicial side: kappa preserves values at facets, round trip is isomorphic
    ks, maps = [], []
    for m in models:
        k, mp = kappa(m)
        problems = validate_kripke(k)
        report.cases += 1
        if problems:
            _plain(report, "kappa-valid", m, problems)
        rt = roundtrip_check(m)
        report.cases += 1
        if not rt.ok:
            _plain(report, "kappa-sigma-roundtrip", m, rt.message)
        ks.append(k)
        maps.append(mp)
    ts = PointTable.simplicial(models)
    tk = PointTable.kripke(ks)
    kindex = {(i, s): j for j, (i, s) in enumerate(zip(tk.model_of, tk.points))}
    fac = np.flatnonzero(ts.facet_mask)
    tgt = np.array([kindex[(ts.model_of[i], maps[ts.model_of[i]][ts.points[i]])] for i in fac],
                   dtype=np.int64)
    c = _Collector(report, ts, models)
    for f in formulas:
        vs, vk = ts.values(f), tk.values(f)
        c.check("kappa-preserves", vs[fac] == vk[tgt], f, "same value at kappa image", where=fac)
        _trim(ts, set())
        _trim(tk, set())
    # the Kripke table itself against the scalar Kripke evaluator
    small = pool(spec, max(spec.max_formula_depth - 1, min(spec.max_formula_depth, 1)))
    ck = _Collector(report, tk, ks)
    scalar = [KripkeEvaluator(k) for k in ks]
    for f in small:
        col = tk.values(f)
        want = np.array([{"true": 1, "false": 0, "undefined": -1}[
            scalar[tk.model_of[j]].value(s, f).value] for j, s in enumerate(tk.points)],
            dtype=col.dtype)
        ck.check("kripke-scalar", col == want, f, "scalar Kripke evaluator agrees")
    # Kripke side: sigma preserves values at every state, round trip is isomorphic
    if not kripke_models:
        return
    sims, smaps = [], []
    for k in kripke_models:
        s, mp = sigma(k)
        report.cases += 2
        problems = validate(s)
        if problems:
            _plain(report, "sigma-valid", s, problems)
        rt = roundtrip_check(k)
        if not rt.ok:
            _plain(report, "sigma-kappa-roundtrip", s, rt.message)
        sims.append(s)
        smaps.append(mp)
    tk2 = PointTable.kripke(kripke_models)
    ts2 = PointTable.simplicial(sims)
    sindex = {(i, x): j for j, (i, x) in enumerate(zip(ts2.model_of, ts2.points))}
    tgt2 = np.array([sindex[(tk2.model_of[j], smaps[tk2.model_of[j]][s])]
                     for j, s in enumerate(tk2.points)], dtype=np.int64)
    c2 = _Collector(report, ts2, sims)
    for f in formulas:
        vk, vs = tk2.values(f), ts2.values(f)
        c2.check("sigma-preserves", vs[tgt2] == vk, f, "same value as the Kripke state",
                 where=tgt2)
        _trim(ts2, set())
        _trim(tk2, set())


def _plain(report, check, model, problems):
    from .io import model_to_json, kripke_to_json
    report.violation_count += 1
    if len(report.violations) < MAX_RECORDED:
        dump = model_to_json(model) if hasattr(model, "facets") else kripke_to_json(model)
        report.violations.append(Violation(check, dump, [], "", "ok", str(problems)))


SUBSTITUTION_PAIRS = (
    ("double negation", lambda f, g: (f, Neg(Neg(f)))),
    ("idempotence", lambda f, g: (f, And(f, f))),
    ("commutativity", lambda f, g: (And(f, g), And(g, f))),
)


def _substitution(spec, models, report):
    t = PointTable.simplicial(models)
    c = _Collector(report, t, models)
    small = pool(spec, spec.max_formula_depth - 1)
    atoms = pool(spec, 0)
    xis = [x for x in small if not isinstance(x, Var)] or list(small)
    for _, make in SUBSTITUTION_PAIRS:
        for f in small:
            for g in atoms:
                phi, psi = make(f, g)
                vp, vq = t.values(phi), t.values(psi)
                c.check("pair-equivalent", vp == vq, phi, f"equivalent to {to_text(psi)}")
                for xi in xis:
                    for p in spec.variables:
                        a, b = substitute(xi, p, phi), substitute(xi, p, psi)
                        if a == b:
                            continue
                        c.check("congruence", t.values(a) == t.values(b), a,
                                f"same as {to_text(b)}")
                _trim(t, set(), limit=5000)


def _oracle(spec, models, report):
    """Facet-quantified table against the literal all-simplices evaluator."""
    t = PointTable.simplicial(models)
    formulas = pool(spec, spec.max_formula_depth)
    values = {f: t.values(f) for f in formulas}
    for k, m in enumerate(models):
        ref = ReferenceEvaluator(m)
        fast = Evaluator(m)
        idx = np.flatnonzero(t.model_of == k)
        for f in formulas:
            g = ref.prepare(f)
            col = values[f]
            for i in idx:
                x = t.points[i]
                want = TruthValue.of(ref.defined(x, g), ref.holds(x, g))
                got = CODE[int(col[i])]
                scalar = TruthValue.of(fast.defined(x, g), fast.holds(x, g))
                report.cases += 1
                if got != want.value or scalar is not want:
                    report.violation_count += 1
                    if len(report.violations) < MAX_RECORDED:
                        from .io import model_to_json
                        report.violations.append(Violation(
                            "reference-agreement", model_to_json(m), sorted(x), to_text(f),
                            want.value, f"table={got} scalar={scalar.value}"))


# -- S5-top soundness -------------------------------------------------------------------


def s5top_instances(spec: EnumerationSpec):
    """(label, formula) pairs for every axiom instance the suite checks.

    Schemas with one formula argument range over the depth-d pool, two
    arguments over depth d-1, three over depth d-2.
    """
    d = spec.max_formula_depth
    one, two, three = pool(spec, d), pool(spec, d - 1), pool(spec, d - 2)
    out = []
    for a in spec.agents:
        for p, owner in spec.variables.items():
            if owner == a:
                out.append(("L", axiom_instance("L", a, variable=p)))
    for name in ("T", "4", "5"):
        for a in spec.agents:
            for f in one:
                out.append((name, axiom_instance(name, a, f)))
    for a in spec.agents:
        for f in two:
            for g in two:
                out.append(("K-top", axiom_instance("K-top", a, f, g)))
    for template in ("excluded-middle", "identity", "non-contradiction", "double-negation"):
        for f in one:
            out.append((f"Taut:{template}", axiom_instance(f"Taut:{template}", phi=f)))
    for template in ("peirce", "contraposition"):
        for f in two:
            for g in two:
                out.append((f"Taut:{template}", axiom_instance(f"Taut:{template}", phi=f, psi=g)))
    for f in three:
        for g in three:
            for h in three:
                out.append(("Taut:distribution",
                            axiom_instance("Taut:distribution", phi=f, psi=g, variable=h)))
    return out


def rule_instances(spec: EnumerationSpec):
    """(rule, premises, conclusion) triples: MP-top over pairs from the
    depth d-1 pool, N over the depth-d pool."""
    from .semantics import rule_instance
    d = spec.max_formula_depth
    out = []
    for f in pool(spec, d - 1):
        for g in pool(spec, d - 1):
            prem, concl = rule_instance("MP-top", f, g)
            out.append(("MP-top", prem, concl))
    for a in spec.agents:
        for f in pool(spec, d):
            prem, concl = rule_instance("N", f, agent=a)
            out.append(("N", prem, concl))
    return out


def _s5top(spec, models, report):
    t = PointTable.simplicial(models)
    c = _Collector(report, t, models)
    keep = _pinned(t, pool(spec, spec.max_formula_depth - 1))
    for label, f in s5top_instances(spec):
        D, T = t.eval(f)
        c.check(f"axiom-{label.split(':')[0]}", ~D | T, f, "true wherever defined")
        report.details[f"instances:{label}"] = report.details.get(f"instances:{label}", 0) + 1
        _trim(t, keep)
    # rules: per-instance refutation flags in this chunk; merged by OR later
    flags = []
    for rule, prem, concl in rule_instances(spec):
        refuted = [bool((lambda d, t_: (d & ~t_).any())(*t.eval(p))) for p in prem]
        dc, tc = t.eval(concl)
        flags.append((rule, tuple(refuted), bool((dc & ~tc).any())))
        _trim(t, keep)
    report.details["_rule_flags"] = flags


def _finish_rules(report, spec, models):
    flags = report.details.pop("_rule_flags", None)
    if flags is None:
        return
    instances = rule_instances(spec)
    for (rule, prem, concl), (_, prem_bad, concl_bad) in zip(instances, flags):
        if any(prem_bad):
            status = "vacuous"
        elif concl_bad:
            status = "refuted"
        else:
            status = "holds"
        key = f"rule:{rule}:{status}"
        report.details[key] = report.details.get(key, 0) + 1
        report.cases += 1
        if status == "refuted":
            w = search_formula(concl, models)
            report.violation_count += 1
            if len(report.violations) < MAX_RECORDED:
                report.violations.append(Violation(
                    f"rule-{rule}", w.to_json()["model"] if w else {},
                    sorted(w.point) if w else [], to_text(concl), "family-valid", "refuted"))


def _merge_rule_flags(parts):
    merged = None
    for p in parts:
        flags = p.details.get("_rule_flags")
        if flags is None:
            continue
        if merged is None:
            merged = list(flags)
        else:
            merged = [(r, tuple(x or y for x, y in zip(pa, pb)), ca or cb)
                      for (r, pa, ca), (_, pb, cb) in zip(merged, flags)]
    return merged


# -- counterexample search -----------------------------------------------------------------


def search_formula(f, models):
    """First point where ``f`` is false (model order; within a model,
    facets before lower faces)."""
    t = PointTable.simplicial(models)
    D, T = t.eval(f)
    bad = np.flatnonzero(D & ~T)
    if not bad.size:
        return None
    i = t.first(bad)
    m, x = models[t.model_of[i]], t.points[i]
    return Witness(m, x, {to_text(f): eval3(m, x, f)})


@dataclass
class Counterexample:
    witness: Witness
    instantiation: dict
    formula: Formula

    def to_json(self):
        out = self.witness.to_json()
        out["formula"] = to_text(self.formula)
        out["instantiation"] = {k: (to_text(v) if isinstance(v, Formula) else v)
                                for k, v in self.instantiation.items()}
        return out


SCHEMAS = {
    "K": "[A](F -> G) -> [A]F -> [A]G",
    "T": AXIOMS["T"],
    "4": AXIOMS["4"],
    "5": AXIOMS["5"],
    "L": "[A] P | [A] ~P",
}


def schema_instantiations(schema: Formula, spec: EnumerationSpec):
    """Deterministic instantiations: agent metavariables range over agents,
    ``P`` over variables (only the agent's own when the schema has a single
    agent metavariable, as in locality), other metavariables over the
    formula pool, whose depth shrinks by one per extra formula metavariable."""
    import itertools
    agent_metas = sorted(_agent_metas(schema))
    metas = [m for m in metavariables(schema) if m not in agent_metas]
    formula_metas = [m for m in metas if m != "P"]
    depth = spec.max_formula_depth - max(len(formula_metas) - 1, 0)
    formulas = pool(spec, depth)
    atoms = pool(spec, 0)
    domains = []
    for name in agent_metas:
        domains.append([(name, a) for a in spec.agents])
    for name in metas:
        domains.append([(name, f) for f in (atoms if name == "P" else formulas)])
    own = "P" in metas and len(agent_metas) == 1
    for combo in itertools.product(*domains):
        values = dict(combo)
        if own and values["P"].agent != values[agent_metas[0]]:
            continue
        yield values


def _agent_metas(schema):
    out = set()
    stack = [schema]
    while stack:
        g = stack.pop()
        if isinstance(g, (Hat, Know)) and g.agent[:1].isupper():
            out.add(g.agent)
        from .formula import children
        stack.extend(children(g))
    return out


def search_counterexample(schema, spec: EnumerationSpec, models=None):
    """First (instantiation, model, point) where the instantiated schema is
    false, or None when no witness exists within the bounds.  Instantiations
    vary slowest; within a model facets are tried before lower faces."""
    if isinstance(schema, str):
        schema = parse_schema(SCHEMAS.get(schema, schema))
    models = list(models) if models is not None else list(enumerate_simplicial(spec))
    t = PointTable.simplicial(models)
    for values in schema_instantiations(schema, spec):
        f = instantiate(schema, values)
        D, T = t.eval(f)
        bad = np.flatnonzero(D & ~T)
        if bad.size:
            i = t.first(bad)
            m, x = models[t.model_of[i]], t.points[i]
            return Counterexample(Witness(m, x, {to_text(f): eval3(m, x, f)}), values, f)
        _trim(t, set(), limit=5000)
    return None


# -- MP invalidity -------------------------------------------------------------------------

MP_PREMISE = "T_a & T_b & T_c"
MP_IMPLICATION = "T_a & T_b & T_c -> <d>((T_a & p_c) | <d>(T_b & ~p_c))"
MP_CONCLUSION = "<d>((T_a & p_c) | <d>(T_b & ~p_c))"


def _invalid_mp(spec, models, report):
    from .formula import parse
    report.cases += 3 * len(models)
    for text in (MP_PREMISE, MP_IMPLICATION):
        w = search_formula(parse(text), models)
        if w is not None:
            report.violation_count += 1
            report.violations.append(Violation("premise-valid", w.to_json()["model"],
                                               sorted(w.point), text, "valid", "refuted"))
    w = search_formula(parse(MP_CONCLUSION), models)
    if w is not None:
        report.witness = w.to_json()


def _invalid_k(spec, models, report):
    ce = search_counterexample("K", spec, models)
    report.cases += 1
    if ce is not None:
        report.witness = ce.to_json()


# -- driver -------------------------------------------------------------------------------------

_POINTWISE = {
    "lemma-3": _lemma3,
    "monotony": _monotony,
    "phitop": _phitop,
    "pure": _pure,
    "substitution": _substitution,
    "oracle": _oracle,
    "s5top": _s5top,
}


def default_workers() -> int:
    cap = os.environ.get("SIMPEPIST_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def _chunk(name, spec, indices):
    models = list(enumerate_simplicial(spec))
    chosen = [models[i] for i in indices]
    report = SuiteReport(name, spec.label())
    _POINTWISE[name](spec, chosen, report)
    return report


def run_suite(name: str, spec: EnumerationSpec, workers: int | None = None) -> SuiteReport:
    """Run a named suite over the family described by ``spec``."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    models = list(enumerate_simplicial(spec))
    report = SuiteReport(name, spec.label(), expects_counterexample=name in EXPECTS_COUNTEREXAMPLE)
    report.details["models"] = len(models)
    if name == "invalid-k":
        _invalid_k(spec, models, report)
        return report
    if name == "invalid-mp":
        _invalid_mp(spec, models, report)
        return report
    if name == "correspondence":
        _correspondence(spec, models, report, list(enumerate_kripke(spec)))
        return report
    workers = default_workers() if workers is None else max(1, workers)
    if workers == 1 or len(models) < 2 * workers:
        _POINTWISE[name](spec, models, report)
        _finish_rules(report, spec, models)
        return report
    chunks = [list(range(i, len(models), workers)) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool_:
        parts = list(pool_.map(_chunk, [name] * workers, [spec] * workers, chunks))
    flags = _merge_rule_flags(parts)
    for p in parts:
        p.details.pop("_rule_flags", None)
        report.merge(p)
    if flags is not None:
        report.details["_rule_flags"] = flags
        _finish_rules(report, spec, models)
    return report
