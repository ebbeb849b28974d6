import json

import pytest
from click.testing import CliRunner

from bocskit.cli import main


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    runner = CliRunner()
    target = tmp_path_factory.mktemp("fix")
    result = runner.invoke(main, ["fixtures", "--dir", str(target)])
    assert result.exit_code == 0, result.output
    return target


def test_fixtures_emit_files(fixture_dir):
    names = sorted(p.name for p in fixture_dir.iterdir())
    assert names == ["e0.json", "e1.json", "e2.json", "e3.json"]
    doc = json.loads((fixture_dir / "e1.json").read_text())
    assert doc["schema"] == "bocskit/algebra"
    assert doc["vertices"]["count"] == 1
    assert len(doc["arrows"]) == 1
    assert len(doc["relations"]) == 1


def test_classify_e0(fixture_dir):
    runner = CliRunner()
    result = runner.invoke(main, ["classify", str(fixture_dir / "e0.json")])
    assert result.exit_code == 0
    assert json.loads(result.output)["label"] == "quasi-hereditary"


def test_verify_e1(fixture_dir):
    runner = CliRunner()
    result = runner.invoke(main, ["verify", str(fixture_dir / "e1.json")])
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output)
    assert doc["ok"]
    assert doc["bocs"]["bocs_class"] == "one-cyclic directed"
    assert doc["verdicts"]["morita_compare"]["verdict"] == "isomorphic"


def test_bocs_e2_delta(fixture_dir):
    runner = CliRunner()
    result = runner.invoke(main, ["bocs", str(fixture_dir / "e2.json"),
                                  "--mode", "delta"])
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output)
    assert doc["schema"] == "bocskit/bocs"
    assert doc["bocs_class"] == "directed"


def test_burt_butler_roundtrip(fixture_dir, tmp_path):
    runner = CliRunner()
    bpath = tmp_path / "e2-bocs.json"
    result = runner.invoke(main, ["--out", str(bpath), "bocs",
                                  str(fixture_dir / "e2.json"),
                                  "--mode", "delta"])
    assert result.exit_code == 0
    result = runner.invoke(main, ["burt-butler", str(bpath)])
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output)
    assert doc["ok"]
    assert doc["right_algebra"]["dim"] == 3


def test_text_and_json_carry_identical_verdicts(fixture_dir):
    runner = CliRunner()
    as_json = runner.invoke(main, ["verify", str(fixture_dir / "e0.json")])
    as_text = runner.invoke(main, ["--format", "text", "verify",
                                   str(fixture_dir / "e0.json")])
    assert as_json.exit_code == 0 and as_text.exit_code == 0
    doc = json.loads(as_json.output)
    verdict = doc["verdicts"]["morita_compare"]["verdict"]
    assert f'verdicts.morita_compare.verdict: "{verdict}"' in as_text.output
    assert "verdicts.standard_check.ok: true" in as_text.output


def test_out_writes_file(fixture_dir, tmp_path):
    runner = CliRunner()
    out = tmp_path / "report.json"
    result = runner.invoke(main, ["--out", str(out), "verify",
                                  str(fixture_dir / "e0.json")])
    assert result.exit_code == 0
    assert json.loads(out.read_text())["ok"]


def test_failure_gives_error_object(tmp_path):
    # a two-cycle with rad^2 = 0 admits neither mode
    doc = {
        "schema": "bocskit/algebra", "version": 1,
        "vertices": {"count": 2},
        "arrows": [{"name": "a", "source": 1, "target": 2},
                   {"name": "b", "source": 2, "target": 1}],
        "relations": [{"terms": [{"coefficient": "1",
                                  "path": ["a", "b"]}]},
                      {"terms": [{"coefficient": "1",
                                  "path": ["b", "a"]}]}],
        "order": [1, 2],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    runner = CliRunner(mix_stderr=False) if hasattr(
        CliRunner, "mix_stderr") else CliRunner()
    result = runner.invoke(main, ["verify", str(path)])
    assert result.exit_code == 1
    err = json.loads(result.output.strip().splitlines()[-1])
    assert err["stage"] == "classify"
    assert "mode not admitted" in err["error"]


def test_malformed_input_rejected(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"schema": "bocskit/algebra", ')
    runner = CliRunner()
    result = runner.invoke(main, ["classify", str(path)])
    assert result.exit_code == 1
    err = json.loads(result.output.strip().splitlines()[-1])
    assert "parse error" in err["error"]
