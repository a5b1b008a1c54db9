import io
import json

import pytest

from littlecubes.cli import main
from littlecubes.generate import pinwheel
from littlecubes.geometry import Box, Configuration, config_from_json, config_to_json, identity
from littlecubes.words import AxisBlocks, evaluate, word_from_json

B11 = AxisBlocks((1, 1))
GRID = Configuration(2, tuple(Box.of(x, y) for x in ((0, "1/2"), ("1/2", 1)) for y in ((0, "1/2"), ("1/2", 1))))


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write_config(tmp_path, c, name="c.json"):
    path = tmp_path / name
    path.write_text(json.dumps(config_to_json(c)))
    return path


def test_gen_word_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["gen-word", "--seed", 5, "--blocks", "1,2", "--out", a], capsys)[0] == 0
    assert run(["gen-word", "--seed", 5, "--blocks", "1,2", "--out", b], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    word_from_json(json.loads(a.read_text()), AxisBlocks((1, 2)))


def test_eval_then_factor_round_trip(tmp_path, capsys):
    w = tmp_path / "w.json"
    run(["gen-word", "--seed", 11, "--out", w], capsys)
    code, out, _ = run(["eval", w], capsys)
    assert code == 0
    c = config_from_json(json.loads(out))
    cfg = write_config(tmp_path, c)
    code, out, _ = run(["factor", cfg], capsys)
    assert code == 0
    assert evaluate(word_from_json(json.loads(out), B11), B11) == c


def test_factor_from_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(config_to_json(GRID))))
    code, out, _ = run(["factor", "-"], capsys)
    assert code == 0
    assert evaluate(word_from_json(json.loads(out)), B11) == GRID


def test_factor_pinwheel_exit_three(tmp_path, capsys):
    out_path = tmp_path / "p.json"
    assert run(["gen-config", "--pinwheel", "--out", out_path], capsys)[0] == 0
    assert config_from_json(json.loads(out_path.read_text())) == pinwheel()
    code, out, _ = run(["factor", out_path], capsys)
    assert code == 3
    witness = json.loads(out)
    assert witness["decomposable"] is False and witness["labels"] == [1, 2, 3, 4]


def test_gen_config_cases(capsys):
    code, out, _ = run(["gen-config", "--seed", 3, "--dim", 3, "--j", 0], capsys)
    assert code == 0 and config_from_json(json.loads(out)).arity == 0
    code, out, _ = run(["gen-config", "--seed", 3, "--dim", 2, "--j", 5], capsys)
    assert code == 0 and config_from_json(json.loads(out)).arity == 5
    assert run(["gen-config", "--pinwheel", "--dim", 3], capsys)[0] == 2


def test_contract_and_threshold(tmp_path, capsys):
    p = write_config(tmp_path, pinwheel())
    code, out, _ = run(["contract", p, "--t", "1/2"], capsys)
    assert code == 0
    assert config_from_json(json.loads(out)).cubes[0] == Box.of(("1/6", "1/2"), ("1/12", "1/4"))
    code, out, _ = run(["threshold", p, "--grid", 2], capsys)
    assert code == 0 and json.loads(out)["threshold"] == "1/2"
    code, _, err = run(["threshold", p, "--grid", 1], capsys)
    assert code == 3 and "increase grid" in err
    assert run(["contract", p, "--t", "1"], capsys)[0] == 2


@pytest.mark.parametrize("payload", [
    "not json",
    json.dumps({"dim": 1, "cubes": [{"intervals": [{"lo": "1/2", "hi": "1/4"}]}]}),
    json.dumps({"dim": 1, "cubes": [{"intervals": [{"lo": "0", "hi": "1/2"}]},
                                    {"intervals": [{"lo": "1/4", "hi": "1"}]}]}),
])
def test_invalid_input_exit_two(tmp_path, capsys, payload):
    path = tmp_path / "bad.json"
    path.write_text(payload)
    code, _, err = run(["factor", path], capsys)
    assert code == 2 and err.startswith("error:")


def test_missing_file_and_dim_mismatch(tmp_path, capsys):
    assert run(["eval", tmp_path / "missing.json"], capsys)[0] == 2
    one_d = write_config(tmp_path, identity(1))
    assert run(["factor", one_d], capsys)[0] == 2


def test_check_suite(capsys):
    code, out, _ = run(["check", "roundtrip", "--trials", 20, "--seed", 1], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["suite"] == "roundtrip" and report["failures"] == []


def test_render_identity(tmp_path, capsys):
    code, out, _ = run(["render", write_config(tmp_path, identity(2))], capsys)
    assert code == 0
    assert out.startswith("<?xml") and out.count('fill="#ff9933"') == 1


def test_render_grid_strips(tmp_path, capsys):
    svg_path = tmp_path / "grid.svg"
    code, _, _ = run(["render", write_config(tmp_path, GRID), "--out", svg_path], capsys)
    assert code == 0
    svg = svg_path.read_text()
    assert svg.count('fill="#ff9933"') == 4
    # each strip is drawn once filled and once outlined
    assert svg.count("#87cefa") == 4
    assert svg.count("#e03030") == 4
    bare = run(["render", write_config(tmp_path, GRID), "--no-strips"], capsys)[1]
    assert "#87cefa" not in bare and "#e03030" not in bare


def test_render_pinwheel_has_no_strips_and_is_deterministic(tmp_path, capsys):
    cfg = write_config(tmp_path, pinwheel())
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run(["render", cfg, "--out", a], capsys)
    run(["render", cfg, "--out", b], capsys)
    assert a.read_bytes() == b.read_bytes()
    svg = a.read_text()
    assert svg.count('fill="#ff9933"') == 4
    assert "#87cefa" not in svg and "#e03030" not in svg


def test_render_rejects_three_dimensions(tmp_path, capsys):
    assert run(["render", write_config(tmp_path, identity(3)), "--blocks", "1,2"], capsys)[0] == 2
