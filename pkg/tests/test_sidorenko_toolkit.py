import pytest
import os
import sys
import json
from click.testing import CliRunner
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'scripts'))
from sidorenko_toolkit import main
from src.errors import ConfigError, ParseError
from src.numeric_core import ExactRational
from src.runner import RunConfig, parse_random_spec, run, search


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, tmp_path, args, env=None):
    """Run the command with ``--out`` in ``tmp_path``; return (exit code, parsed report or None)."""
    out = tmp_path / "report.json"
    result = runner.invoke(main, args + ["--no-timestamp", "--out", str(out)], env=env)
    report = json.loads(out.read_text()) if out.exists() else None
    return result.exit_code, report


#test 1: hom K2 -> K3
def test_hom(runner, tmp_path):
    code, report = invoke(runner, tmp_path, ["hom", "--h-graph6", "A_", "--g-graph6", "Bw"])
    assert code == 0
    assert report["records"][0]["count"] == "6"
    assert report["records"][0]["instance_id"] == "H=A_;G=Bw"


#test 2: the path on three vertices meets the bound with equality on K3
def test_check_sidorenko(runner, tmp_path):
    code, report = invoke(runner, tmp_path, ["check-sidorenko", "--h-graph6", "Bg", "--g-graph6", "Bw"])
    assert code == 0
    record = report["records"][0]
    assert record["holds"] is True
    assert record["slack"] == "1/1"
    assert record["slack_approx"] == pytest.approx(1.0)


#test 3: dependent random choice audit of K3
def test_drc(runner, tmp_path):
    code, report = invoke(runner, tmp_path, ["drc", "--g-graph6", "Bw", "--n", "2", "--k", "1"])
    assert code == 0
    record = report["records"][0]
    assert record["holds"] is True
    assert record["deficient_at_k"] == ["0", "0", "0"]


#test 4: embed-verify and tensor reports
def test_embed_verify_and_tensor(runner, tmp_path):
    code, report = invoke(runner, tmp_path, ["embed-verify", "--h-graph6", "A_", "--g-graph6", "Bw",
                                             "--sample-count", "200"])
    assert code == 0
    assert report["records"][0]["rhs_num"] == "54"
    assert report["records"][0]["details"]["anchors"][0]["sampling_passes"] is True

    code, report = invoke(runner, tmp_path, ["tensor", "--h-graph6", "Bg", "--random", "4,1/2,2", "--r", "2"])
    assert code == 0
    assert len(report["records"]) == 3 + 2
    assert report["summary"]["violations"] == []


#test 5: usage errors exit with status 1
def test_usage_errors(runner, tmp_path):
    assert invoke(runner, tmp_path, ["drc", "--g-graph6", "Bw"])[0] == 1
    assert invoke(runner, tmp_path, ["unknown", "--g-graph6", "Bw"])[0] == 1
    assert invoke(runner, tmp_path, ["check-sidorenko", "--h-graph6", "Bw", "--g-graph6", "Bw"])[0] == 1
    assert invoke(runner, tmp_path, ["hom", "--h-graph6", "A_", "--g-file", str(tmp_path / "missing.g6")])[0] == 1


#test 6: malformed graph6 exits with status 2
def test_parse_errors(runner, tmp_path):
    assert invoke(runner, tmp_path, ["hom", "--h-graph6", "A_", "--g-graph6", "Bz"])[0] == 2
    assert invoke(runner, tmp_path, ["hom", "--h-graph6", "A_", "--random", "4,half,2"])[0] == 2
    corpus = tmp_path / "corpus.g6"
    corpus.write_bytes(b"Bw\nB\xffw\n")
    assert invoke(runner, tmp_path, ["hom", "--h-graph6", "A_", "--g-file", str(corpus)])[0] == 2


#test 7: the guard comes from the flag or the environment, flag first
def test_guard(runner, tmp_path):
    args = ["hom", "--h-graph6", "A_", "--g-graph6", "Bw"]
    assert invoke(runner, tmp_path, args + ["--guard", "1"])[0] == 3
    assert invoke(runner, tmp_path, args, env={"TOOL_GUARD_EVALS": "1"})[0] == 3
    assert invoke(runner, tmp_path, args + ["--guard", "100"], env={"TOOL_GUARD_EVALS": "1"})[0] == 0


#test 8: search reports are byte-identical without a timestamp
def test_search_determinism(runner, tmp_path):
    args = ["search", "--max-vertices", "3", "--g-graph6", "Bw", "--random", "5,1/2,3", "--seed", "9",
            "--no-timestamp"]
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    assert runner.invoke(main, args + ["--out", str(first)]).exit_code == 0
    assert runner.invoke(main, args + ["--out", str(second)]).exit_code == 0
    assert first.read_bytes() == second.read_bytes()
    report = json.loads(first.read_text())
    assert report["summary"]["violations"] == []


#test 9: K2 is the only apex graph on two vertices and its slack is always one
def test_search_k2():
    outcome = search(RunConfig(command="search", max_vertices=2, g_graph6="Bw", random="4,1/2,3", timestamp=False))
    assert outcome.status == 0
    summary = outcome.envelope["summary"]
    assert list(summary["min_slack_by_h"]) == ["A_"]
    assert all(record["slack"] == "1/1" for record in outcome.envelope["records"] if record["slack"] is not None)


#test 10: CSV output
def test_csv_output(runner, tmp_path):
    out = tmp_path / "report.csv"
    result = runner.invoke(main, ["drc", "--g-graph6", "Bw", "--n", "2", "--format", "csv", "--out", str(out)])
    assert result.exit_code == 0
    assert "instance_id" in out.read_text().splitlines()[0]
    assert "G=Bw;n=2" in out.read_text()


#test 11: run configuration helpers
def test_run_config():
    assert parse_random_spec("8,1/2,5") == (8, ExactRational(1, 2), 5)
    with pytest.raises(ParseError):
        parse_random_spec("8,1/2")
    with pytest.raises(ConfigError, match="needs --n"):
        RunConfig(command="drc", g_graph6="Bw").validate()
    with pytest.raises(ConfigError, match="--guard must be positive"):
        RunConfig(command="hom", h_graph6="A_", g_graph6="Bw", guard=0).validate()
    outcome = run(RunConfig(command="hom", h_graph6="A_", g_graph6="Bw", timestamp=False))
    assert outcome.status == 0 and outcome.envelope["records"][0]["count"] == "6"
