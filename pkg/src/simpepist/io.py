"""JSON formats for simplicial and Kripke models."""

from __future__ import annotations

import json
from pathlib import Path

from .complex import SimplicialModel, Vertex, validate
from .kripke import LocalEpistemicModel, validate_kripke


class ModelFormatError(ValueError):
    pass


SIMPLICIAL_KEYS = {"agents", "variables", "vertices", "facets"}
KRIPKE_KEYS = {"agents", "variables", "states", "relations"}


def _variables_json(variables):
    return [{"name": v, "owner": o} for v, o in variables.items()]


def model_to_json(m: SimplicialModel) -> dict:
    return {
        "agents": list(m.agents),
        "variables": _variables_json(m.variables),
        "vertices": [{"id": v.id, "agent": v.agent, "true": sorted(v.true)}
                     for v in (m.vertices[k] for k in sorted(m.vertices))],
        "facets": [sorted(f) for f in m.facets],
    }


def kripke_to_json(m: LocalEpistemicModel) -> dict:
    return {
        "agents": list(m.agents),
        "variables": _variables_json(m.variables),
        "states": [{"id": s, "true": sorted(m.valuation[s])} for s in m.states],
        "relations": {a: [sorted(c) for c in m.relations.get(a, ())] for a in m.agents},
    }


def _require(cond, msg):
    if not cond:
        raise ModelFormatError(msg)


def _check_keys(data, allowed, what):
    _require(isinstance(data, dict), f"{what} must be a JSON object")
    unknown = set(data) - allowed
    _require(not unknown, f"unknown keys in {what}: {sorted(unknown)}")
    missing = allowed - set(data)
    _require(not missing, f"missing keys in {what}: {sorted(missing)}")


def _read_variables(data):
    out = {}
    _require(isinstance(data["variables"], list), "variables must be a list")
    for entry in data["variables"]:
        _check_keys(entry, {"name", "owner"}, "variable entry")
        _require(entry["name"] not in out, f"duplicate variable {entry['name']}")
        out[entry["name"]] = entry["owner"]
    return out


def model_from_json(data: dict, name: str = "") -> SimplicialModel:
    """Parse and validate; raises :class:`ModelFormatError` on bad input.

    Non-maximal facets are accepted and dropped by normalization.
    """
    _check_keys(data, SIMPLICIAL_KEYS, "simplicial model")
    variables = _read_variables(data)
    vertices = {}
    for entry in data["vertices"]:
        _check_keys(entry, {"id", "agent", "true"}, "vertex entry")
        vid = entry["id"]
        _require(vid not in vertices, f"duplicate vertex id {vid}")
        vertices[vid] = Vertex(vid, entry["agent"], frozenset(entry["true"]))
    facets = []
    for f in data["facets"]:
        _require(isinstance(f, list) and f, "facet entries must be non-empty id arrays")
        facets.append(frozenset(f))
    raw = SimplicialModel(tuple(data["agents"]), variables, vertices, tuple(facets), name)
    problems = [p for p in validate(raw) if not p.startswith(("subsumed", "orphan", "duplicate facet"))]
    _require(not problems, "invalid simplicial model: " + "; ".join(problems))
    try:
        return SimplicialModel.build(raw.agents, variables, vertices, facets, name)
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from exc


def kripke_from_json(data: dict, name: str = "") -> LocalEpistemicModel:
    _check_keys(data, KRIPKE_KEYS, "Kripke model")
    variables = _read_variables(data)
    states, valuation = [], {}
    for entry in data["states"]:
        _check_keys(entry, {"id", "true"}, "state entry")
        sid = entry["id"]
        _require(sid not in valuation, f"duplicate state id {sid}")
        states.append(sid)
        valuation[sid] = frozenset(entry["true"])
    rel = data["relations"]
    _require(isinstance(rel, dict), "relations must be an object")
    relations = {a: tuple(frozenset(c) for c in rel.get(a, ())) for a in data["agents"]}
    extra = set(rel) - set(data["agents"])
    _require(not extra, f"relations for unknown agents {sorted(extra)}")
    return LocalEpistemicModel(tuple(data["agents"]), variables, tuple(states), valuation,
                               relations, name)


def kripke_problems(m: LocalEpistemicModel) -> list:
    return validate_kripke(m)


def is_kripke_json(data) -> bool:
    return isinstance(data, dict) and "states" in data


def load_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_model(path) -> SimplicialModel:
    return model_from_json(load_json(path), Path(path).stem)


def load_kripke(path) -> LocalEpistemicModel:
    return kripke_from_json(load_json(path), Path(path).stem)


def dump_json(data, path) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
