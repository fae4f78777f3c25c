"""CLI: config parsing, exit codes, report determinism."""

import json

import pytest

from qschur.cli import main, parse_field
from qschur.errors import ConfigError, UnsupportedCharacteristicError


@pytest.fixture
def cfg_a1(tmp_path):
    path = tmp_path / "a1.json"
    path.write_text(json.dumps({
        "datum": {"preset": "A1"},
        "pi": {"seeds": [[2], [1]]},
        "field": "cyclotomic=4",
    }))
    return str(path)


@pytest.fixture
def cfg_a2(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps({
        "datum": {"preset": "A2"},
        "pi": {"seeds": [[1, 1]]},
        "field": "generic",
        "caps": {"depth": 2, "samples": 4},
    }))
    return str(path)


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_datum_report(capsys, cfg_a1):
    rc, out, err = run(capsys, "datum", "--config", cfg_a1)
    assert rc == 0
    rep = json.loads(out)
    assert rep["command"] == "datum"
    assert rep["payload"]["weyl_order"] == 2
    assert rep["payload"]["cartan_matrix"] == [[2]]
    assert "finished" in err


def test_datum_report_a2(capsys, cfg_a2):
    rc, out, _ = run(capsys, "datum", "--config", cfg_a2)
    assert rc == 0
    payload = json.loads(out)["payload"]
    assert payload["weyl_order"] == 6
    assert len(payload["positive_roots"]) == 3


def test_saturate_report(capsys, cfg_a1):
    rc, out, _ = run(capsys, "saturate", "--config", cfg_a1)
    assert rc == 0
    payload = json.loads(out)["payload"]
    assert payload["pi"] == [[0], [1], [2]]
    assert payload["flag"] == [[1], [2], [0]]


def test_saturate_empty_seeds(capsys, tmp_path):
    cfg = tmp_path / "empty.json"
    cfg.write_text(json.dumps({"datum": {"preset": "A1"},
                               "pi": {"seeds": []}}))
    rc, out, _ = run(capsys, "saturate", "--config", str(cfg))
    assert rc == 0
    payload = json.loads(out)["payload"]
    assert payload["pi"] == [] and payload["flag"] == []


def test_module_and_lambda_flag(capsys, cfg_a1):
    rc, out, _ = run(capsys, "module", "--config", cfg_a1, "--lambda", "2")
    assert rc == 0
    mods = json.loads(out)["payload"]["modules"]
    assert len(mods) == 1 and mods[0]["dim"] == 3


def test_lambda_outside_pi_exits_2(capsys, cfg_a1):
    rc, out, err = run(capsys, "module", "--config", cfg_a1, "--lambda", "7")
    assert rc == 2 and out == "" and "error" in err


def test_gram_report(capsys, cfg_a1):
    rc, out, _ = run(capsys, "gram", "--config", cfg_a1, "--lambda", "2")
    assert rc == 0
    spaces = json.loads(out)["payload"]["gram"][0]["weight_spaces"]
    zero_space = [s for s in spaces if s["weight"] == [0]][0]
    assert zero_space["gram"] == [["v + v^-1"]]
    assert zero_space["determinant"] == "v^2 + 1"
    assert zero_space["cyclotomic_factors"] == [[4, 1]]


def test_specialize_and_decomp(capsys, cfg_a1):
    rc, out, _ = run(capsys, "specialize", "--config", cfg_a1)
    assert rc == 0
    payload = json.loads(out)["payload"]
    dims = {tuple(s["lambda"]): s["dim_simple"]
            for s in payload["specializations"]}
    assert dims == {(0,): 1, (1,): 2, (2,): 2}
    rc, out, _ = run(capsys, "decomp", "--config", cfg_a1)
    payload = json.loads(out)["payload"]
    assert payload["semisimple"] is False
    rows = {tuple(r[0]): r[1] for r in payload["rows"]}
    assert rows[(2,)] == [0, 1, 1]  # order (1,), (2,), (0,)


def test_field_override(capsys, cfg_a1):
    rc, out, _ = run(capsys, "decomp", "--config", cfg_a1, "--field", "q=1")
    assert rc == 0
    payload = json.loads(out)["payload"]
    assert payload["identity"] is True and payload["semisimple"] is True


def test_verify_passes(capsys, cfg_a2):
    rc, out, _ = run(capsys, "verify", "--config", cfg_a2)
    assert rc == 0
    payload = json.loads(out)["payload"]
    assert payload["passed"] is True


def test_cellbasis(capsys, cfg_a2):
    rc, out, _ = run(capsys, "cellbasis", "--config", cfg_a2)
    assert rc == 0
    payload = json.loads(out)["payload"]
    assert payload["count"] == 65 == payload["dimension"]


def test_determinism_across_threads(capsys, cfg_a1, cfg_a2):
    for cfg in (cfg_a1, cfg_a2):
        _, out1, _ = run(capsys, "verify", "--config", cfg, "--threads", "1")
        _, out2, _ = run(capsys, "verify", "--config", cfg, "--threads", "4")
        assert out1 == out2


def test_report_roundtrip(capsys, cfg_a1):
    _, out, _ = run(capsys, "gram", "--config", cfg_a1)
    rep = json.loads(out)
    assert json.dumps(rep, sort_keys=True, indent=2) + "\n" == out


def test_out_file(capsys, tmp_path, cfg_a1):
    target = tmp_path / "report.json"
    rc, out, _ = run(capsys, "datum", "--config", cfg_a1,
                     "--out", str(target))
    assert rc == 0
    assert target.read_text() == out


def test_bad_configs(tmp_path, capsys):
    bad1 = tmp_path / "bad1.json"
    bad1.write_text("{not json")
    assert run(capsys, "datum", "--config", str(bad1))[0] == 2
    bad2 = tmp_path / "bad2.json"
    bad2.write_text(json.dumps({"datum": {"preset": "A1"}, "typo": 1}))
    assert run(capsys, "datum", "--config", str(bad2))[0] == 2
    bad3 = tmp_path / "bad3.json"
    bad3.write_text(json.dumps({"datum": {"preset": "E6"},
                                "pi": {"seeds": []}}))
    # rank cap (default 4) rejects E6 with a clear message
    rc, _, err = run(capsys, "datum", "--config", str(bad3))
    assert rc == 2 and "cap" in err
    missing = run(capsys, "datum", "--config", str(tmp_path / "nope.json"))
    assert missing[0] == 2


def test_parse_field():
    assert parse_field("generic").kind == "generic"
    assert parse_field("q=-3/2").q == -1.5 or str(parse_field("q=-3/2").q) == "-3/2"
    assert parse_field({"cyclotomic": 6}).ell == 6
    with pytest.raises(ConfigError):
        parse_field("q=")
    with pytest.raises(ConfigError):
        parse_field("galois")
    with pytest.raises(UnsupportedCharacteristicError):
        parse_field({"q": "1", "char": 5})


def test_non_finite_type_exit_code(tmp_path, capsys):
    cfg = tmp_path / "affine.json"
    cfg.write_text(json.dumps({
        "datum": {"cartan": [[2, -2], [-2, 2]],
                  "alpha": [[2, -2], [-2, 2]],
                  "alphav": [[1, 0], [0, 1]]},
        "pi": {"seeds": []},
    }))
    rc, _, err = run(capsys, "datum", "--config", str(cfg))
    assert rc == 2 and "error" in err
