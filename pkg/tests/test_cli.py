import json

import pytest

from thompsonf.cli import run


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_nf(capsys):
    assert run(["nf", "x1 x0"]) == 0
    assert capsys.readouterr().out.strip() == "x0 x2"
    assert run(["nf", "x0 a"]) == 2


def test_eval(capsys):
    assert run(["eval", "--map", "x0", "--at", "1/2"]) == 0
    assert capsys.readouterr().out.startswith("1 ")
    assert run(["eval", "--map", "x0", "--at", "1/3"]) == 2


def test_verify(capsys):
    assert run(["verify", "--m", "5", "--b", "20", "--parts", "i,ii,iv"]) == 0
    assert _json(capsys)["ok"] is True
    assert run(["verify", "--parts", "v"]) == 2
    assert run(["verify", "--b", "21"]) == 2


def test_ball(capsys):
    assert run(["ball", "--m", "5", "--b", "20", "--len", "7"]) == 0
    out = _json(capsys)
    assert out["words_checked"] == 4372 and out["shortest_relation"] is None
    assert run(["ball", "--standard", "--len", "10"]) == 1
    assert _json(capsys)["shortest_relation"]["length"] == 10
    assert run(["ball", "--len", "0"]) == 2


def test_ball_pingpong(capsys):
    assert run(["ball", "--m", "4", "--len", "4", "--certify", "pingpong"]) == 0
    assert _json(capsys)["certified"] == 160


def test_gens_and_file_maps(tmp_path, capsys):
    out = tmp_path / "gens.json"
    assert run(["gens", "--out", str(out)]) == 0
    x0 = tmp_path / "x0.json"
    x0.write_text(json.dumps(json.loads(out.read_text())["X0"]))
    assert run(["eval", "--map", str(x0), "--at", "42"]) == 0
    assert capsys.readouterr().out.startswith("42 ")


def test_support_and_cover(capsys):
    assert run(["support", "--word", "S"]) == 0
    assert _json(capsys)["matches_expected"] is True
    assert run(["cover", "--delta", "1/2", "--upto", "3"]) == 0
    assert _json(capsys)["verdict"] == "covered"
    assert run(["cover", "--delta", "2"]) == 2


def test_distance(capsys):
    assert run(["distance", "--m", "3", "--max-len", "3"]) == 0
    assert _json(capsys)["bound"] == "e^-3"


def test_plot(tmp_path):
    out = tmp_path / "c.svg"
    assert run(["plot", "--map", "C", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("<svg") and text.count("<polyline") == 1


def test_unknown_map_and_command():
    assert run(["eval", "--map", "nonsense!", "--at", "1"]) == 2
    assert run(["frobnicate"]) == 2
