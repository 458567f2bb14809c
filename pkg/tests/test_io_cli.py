import json
import subprocess
import sys

import pytest

from simpepist import gallery
from simpepist.cli import main, write_examples
from simpepist.complex import is_isomorphic
from simpepist.io import (ModelFormatError, dump_json, kripke_from_json, kripke_to_json,
                          load_model, model_from_json, model_to_json)
from simpepist.kripke import find_kripke_isomorphism


@pytest.mark.parametrize("name", list(gallery.SIMPLICIAL))
def test_simplicial_json_roundtrip(name):
    m = gallery.SIMPLICIAL[name]()
    back = model_from_json(json.loads(json.dumps(model_to_json(m))))
    assert back.facets == m.facets and back.vertices == m.vertices


@pytest.mark.parametrize("name", list(gallery.KRIPKE))
def test_kripke_json_roundtrip(name):
    m = gallery.KRIPKE[name]()
    back = kripke_from_json(json.loads(json.dumps(kripke_to_json(m))))
    assert back.states == m.states and back.relations == m.relations
    assert back.valuation == m.valuation


def test_bad_json_is_rejected():
    data = model_to_json(gallery.edge_triangle())
    with pytest.raises(ModelFormatError, match="unknown keys"):
        model_from_json(dict(data, extra=1))
    broken = json.loads(json.dumps(data))
    broken["vertices"][0]["agent"] = "z"
    with pytest.raises(ModelFormatError):
        model_from_json(broken)
    clash = json.loads(json.dumps(data))
    clash["facets"].append(["a0", "b0", "b1"])
    with pytest.raises(ModelFormatError, match="non-chromatic"):
        model_from_json(clash)


def test_subsumed_facets_are_dropped_on_load():
    data = model_to_json(gallery.edge_triangle())
    data["facets"].append(["a0", "b0"])
    assert model_from_json(data).facets == gallery.edge_triangle().facets


@pytest.fixture(scope="module")
def bundle(tmp_path_factory):
    out = tmp_path_factory.mktemp("bundle")
    manifest = write_examples(out)
    return out, manifest


def test_examples_manifest(bundle):
    out, manifest = bundle
    assert set(manifest["models"]) == set(gallery.SIMPLICIAL) | set(gallery.KRIPKE)
    assert manifest["counts"] == gallery.COUNTS
    assert len(manifest["evaluations"]) == len(gallery.MANIFEST) + len(gallery.KRIPKE_MANIFEST)
    on_disk = json.loads((out / "manifest.json").read_text())
    assert on_disk == manifest
    assert is_isomorphic(load_model(out / "edge-triangle.json"), gallery.edge_triangle())


def test_manifest_evaluations_through_cli(bundle, capsys):
    out, manifest = bundle
    code = {"true": 0, "false": 1, "undefined": 2}
    for entry in manifest["evaluations"]:
        path = str(out / manifest["models"][entry["model"]]["file"])
        if "state" in entry:
            rc = main(["eval", path, entry["formula"], "--at", entry["state"], "--kripke"])
        else:
            rc = main(["eval", path, entry["formula"], "--at", ",".join(entry["point"])])
        assert rc == code[entry["expected"]]
        assert capsys.readouterr().out.strip() == entry["expected"]


def test_cli_exit_codes(bundle, capsys):
    out, _ = bundle
    et = str(out / "edge-triangle.json")
    assert main(["eval", et, "p_c", "--at", "a0,b1"]) == 2
    assert main(["eval", et, "[a] p_c", "--at", "a0,b1"]) == 0
    assert main(["eval", et, "[a] ~p_b", "--at", "a0,b1"]) == 1
    assert main(["defined", et, "<a> p_c", "--at", "a0,b1"]) == 0
    assert main(["defined", et, "p_c", "--at", "a0,b1"]) == 2
    assert main(["eval", et, "p_a", "--at", "zz"]) == 3
    assert main(["eval", et, "p_a &", "--at", "a0"]) == 4
    assert main(["eval", et, "q_a", "--at", "a0"]) == 4
    assert main(["eval", str(out / "missing.json"), "p_a", "--at", "a0"]) == 3
    assert main(["validate", et]) == 0
    assert main(["validate", str(out / "improper-bottom.json")]) == 3
    err = capsys.readouterr().err
    assert "improper" in err
    with pytest.raises(SystemExit) as exc:
        main(["eval", et])
    assert exc.value.code == 5


def test_cli_convert(bundle, tmp_path):
    out, _ = bundle
    k_path, c_path = tmp_path / "k.json", tmp_path / "c.json"
    assert main(["convert", "--to", "kripke", str(out / "lozenge.json"), str(k_path)]) == 0
    assert main(["convert", "--to", "simplicial", str(k_path), str(c_path)]) == 0
    assert is_isomorphic(load_model(c_path), gallery.lozenge())
    mapping = json.loads((tmp_path / "c.mapping.json").read_text())
    assert mapping["direction"] == "simplicial" and len(mapping["pairs"]) == 4
    assert main(["convert", "--to", "simplicial", str(out / "improper-middle.json"),
                 str(tmp_path / "x.json")]) == 3
    assert main(["convert", "--to", "simplicial", str(out / "two-edges-kripke.json"),
                 str(tmp_path / "e.json")]) == 0
    assert is_isomorphic(load_model(tmp_path / "e.json"), gallery.two_edges())


def test_cli_check_and_search(capsys):
    assert main(["check", "--suite", "monotony", "--agents", "2", "--max-facets", "2",
                 "--depth", "1", "--workers", "1"]) == 0
    assert capsys.readouterr().out.startswith("PASS monotony")
    assert main(["check", "--suite", "invalid-k", "--agents", "3", "--max-facets", "2",
                 "--depth", "1", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] and report["witness"] is not None
    assert main(["search", "--schema", "T", "--agents", "2", "--max-facets", "2", "--depth", "1"]) == 1
    assert main(["search", "--schema", "K", "--agents", "3", "--depth", "1"]) == 0
    assert main(["search", "--schema", "[A] F ->", "--agents", "2"]) == 4
    assert main(["check", "--suite", "monotony", "--agents", "9"]) == 5


def test_module_entry_point(bundle):
    out, _ = bundle
    proc = subprocess.run([sys.executable, "-m", "simpepist", "eval", str(out / "edge-triangle.json"),
                           "[a] p_c -> p_c", "--at", "a0,b1"], capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout.strip() == "undefined"


def test_dump_json(tmp_path):
    dump_json({"x": 1}, tmp_path / "x.json")
    assert json.loads((tmp_path / "x.json").read_text()) == {"x": 1}


def test_kripke_isomorphism_after_json(bundle):
    out, _ = bundle
    m = kripke_from_json(json.loads((out / "lozenge-kripke.json").read_text()))
    assert find_kripke_isomorphism(m, gallery.lozenge_kripke()) is not None
