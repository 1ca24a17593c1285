import json

import pytest

from shadowmgr.cli import main
from shadowmgr.config import PRESETS, CocycleRecipe, RecipeError, RunConfig


@pytest.mark.parametrize(
    "text",
    ["mochizuki:3", "mochizuki:5 mgr:1", "mochizuki:3 parallel:3:1,-2,3 mgr:3", "ts:5:2:3:1:0:4"],
)
def test_recipe_text_roundtrip(text):
    r = CocycleRecipe.parse(text)
    assert CocycleRecipe.parse(r.to_text()) == r


def test_spaces_read_as_colons():
    assert CocycleRecipe.parse("mochizuki 3 parallel 3 1 mgr 1") == CocycleRecipe.parse(PRESETS["single-letter"])


@pytest.mark.parametrize("preset", sorted(PRESETS))
def test_recipe_from_provenance(preset):
    p = CocycleRecipe.parse(preset).build()
    assert CocycleRecipe.from_provenance(p.theta.provenance) == p.recipe


@pytest.mark.parametrize(
    "text",
    ["", "quandle:3", "mochizuki", "mochizuki:3:4", "mochizuki:3 parallel:3:0", "mochizuki:3 parallel:2:3",
     "mochizuki:3 mgr:1 mgr:2", "ts:5:2", "mochizuki:x"],
)
def test_bad_recipes(text):
    with pytest.raises(RecipeError):
        CocycleRecipe.parse(text)


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("repro", threads=0)
    with pytest.raises(ValueError):
        RunConfig("repro", fmt="xml")


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_verify_rack_exit_codes(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["build", "rack", "dihedral:3", "--out", str(path)]) == 0
    code, out = run(capsys, "verify", "rack", str(path))
    assert code == 0 and json.loads(out)["ok"]

    doc = json.loads(path.read_text())
    doc["table"][1][2] = doc["table"][2][2]
    path.write_text(json.dumps(doc))
    code, out = run(capsys, "verify", "rack", str(path))
    rep = json.loads(out)
    assert code == 1 and not rep["ok"] and rep["witness"] is not None

    assert main(["verify", "rack", str(tmp_path / "missing.json")]) == 2
    path.write_text("{not json")
    assert main(["verify", "rack", str(path)]) == 2


def test_build_and_verify_cocycle(tmp_path, capsys):
    path = tmp_path / "c.json"
    assert main(["build", "cocycle", "mochizuki", "3", "--out", str(path)]) == 0
    code, out = run(capsys, "verify", "cocycle", str(path))
    assert code == 0 and json.loads(out)["ok"]


def test_build_mgr_size(capsys):
    code, out = run(capsys, "build", "mgr", "triple-letter", "--format", "text")
    assert code == 0 and "size 162" in out


def test_usage_errors(capsys):
    assert main(["build", "cocycle", "quandle:9"]) == 2
    assert main(["build", "mgr", "mochizuki:3"]) == 2
    assert main(["repro", "lemma-7-3:F9:0"]) == 2
    assert main(["repro", "nothing"]) == 2
    assert main(["invariant", "no-such-diagram", "single-letter"]) == 2
    assert main(["invariant", "3_1", "mochizuki:3"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["repro", "example-7-2", "--threads", "0"]) == 2


def test_invariant_command(capsys):
    code, out = run(capsys, "invariant", "F0", "single-letter")
    doc = json.loads(out)
    assert code == 0
    assert doc["multiset"] == {"0": 2880, "1": 1728, "2": 1152}
    assert "elapsed_ms" not in doc
    code, out = run(capsys, "invariant", "F0", "single-letter", "--timing")
    assert "elapsed_ms" in json.loads(out)


def test_output_independent_of_threads(capsys):
    _, one = run(capsys, "invariant", "F3", "single-letter", "--threads", "1")
    _, two = run(capsys, "invariant", "F3", "single-letter", "--threads", "2")
    assert one == two


def test_repro_exit_codes(capsys):
    code, out = run(capsys, "repro", "lemma-7-3:F3:0")
    assert code == 0 and json.loads(out)["ok"]
    # the published F2 table has an entry that enumeration contradicts
    code, out = run(capsys, "repro", "lemma-7-3:F2:0", "--format", "text")
    assert code == 1 and "FLAG" in out and "note:" in out
