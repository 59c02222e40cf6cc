import json
from importlib import resources

import jsonschema
import pytest
from click.testing import CliRunner

from synclab import cerny_family, parse_dfa, serialize_dfa
from synclab.cli import main


def schema(name):
    return json.loads((resources.files("synclab") / "schemas" / f"{name}.schema.json").read_text())


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def c4_file(tmp_path):
    p = tmp_path / "c4.dfa"
    p.write_text(serialize_dfa(cerny_family(4)))
    return str(p)


@pytest.fixture
def perm_file(tmp_path):
    p = tmp_path / "perm.dfa"
    p.write_text("dfa 2 1\n1\n0\n")
    return str(p)


def run(runner, *args, input=None):
    return runner.invoke(main, list(args), input=input)


def test_gen_cerny(runner):
    res = run(runner, "gen", "cerny", "--n", "3")
    assert res.exit_code == 0
    assert res.output == "dfa 3 2\n1 1\n2 1\n0 2\n"
    assert parse_dfa(res.output) == cerny_family(3)


def test_gen_cerny_errors(runner):
    assert run(runner, "gen", "cerny", "--n", "1").exit_code == 2
    assert run(runner, "gen", "cerny").exit_code == 2
    assert run(runner, "gen", "nonsense").exit_code == 2


def test_gen_sporadic(runner):
    res = run(runner, "gen", "sporadic")
    assert res.exit_code == 0
    assert "# name: kari_6" in res.output
    doc = json.loads(run(runner, "--format", "json", "gen", "sporadic").output)
    jsonschema.validate(doc, schema("gen"))
    assert {e["name"] for e in doc["examples"]} >= {"cpr_4", "roman_5", "kari_6"}


def test_oracle_text(runner, c4_file):
    res = run(runner, "oracle", c4_file)
    assert res.exit_code == 0
    assert "length    9" in res.output
    assert res.output.startswith("automaton:\ndfa 4 2\n")


def test_oracle_json(runner, c4_file):
    res = run(runner, "oracle", c4_file, "--format", "json")
    doc = json.loads(res.output)
    jsonschema.validate(doc, schema("oracle"))
    assert doc["length"] == 9 and len(doc["witness"]) == 9


def test_oracle_csv(runner, c4_file):
    res = run(runner, "--format", "csv", "oracle", c4_file)
    assert res.output.splitlines() == ["status,length,witness,explored", "synchronizing,9,baaabaaab,12"]


def test_oracle_not_synchronizing(runner, perm_file):
    res = run(runner, "--format", "json", "oracle", perm_file)
    assert res.exit_code == 1
    doc = json.loads(res.output)
    jsonschema.validate(doc, schema("oracle"))
    assert doc["status"] == "not synchronizing" and doc["length"] is None


def test_oracle_stdin(runner):
    res = run(runner, "oracle", "-", input="dfa 3 2\n1 1\n2 1\n0 2\n")
    assert res.exit_code == 0 and "length    4" in res.output


@pytest.mark.parametrize("text", ["dfa 2 1\n5\n", "garbage\n", "dfa 2 1\n0\n"])
def test_parse_errors_exit_2(runner, text):
    res = run(runner, "oracle", "-", input=text)
    assert res.exit_code == 2
    assert "line" in res.output


def test_missing_file(runner, tmp_path):
    assert run(runner, "oracle", str(tmp_path / "none.dfa")).exit_code == 2


def test_greedy(runner, c4_file, perm_file):
    doc = json.loads(run(runner, "--format", "json", "greedy", c4_file).output)
    jsonschema.validate(doc, schema("greedy"))
    assert doc["length"] >= 9
    assert run(runner, "greedy", perm_file).exit_code == 1


def test_chain_json(runner, tmp_path):
    p = tmp_path / "c3.dfa"
    p.write_text(serialize_dfa(cerny_family(3)))
    res = run(runner, "chain", str(p), "--format", "json")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    jsonschema.validate(doc, schema("chain"))
    assert doc["synchronizing"] is True
    assert len(doc["steps"]) <= 6


def test_chain_synchronized_outcome(runner):
    res = run(runner, "--format", "json", "chain", "-", input="dfa 2 2\n1 1\n0 1\n")
    doc = json.loads(res.output)
    jsonschema.validate(doc, schema("chain"))
    assert doc["outcome"] == "synchronized" and doc["sync_word"] is not None


def test_chain_not_synchronizing(runner, perm_file):
    res = run(runner, "--format", "json", "chain", perm_file)
    assert res.exit_code == 1
    doc = json.loads(res.output)
    jsonschema.validate(doc, schema("chain"))
    assert doc["synchronizing"] is False


def test_chain_text_and_csv(runner, c4_file):
    text = run(runner, "chain", c4_file, "--strategy", "shortest").output
    assert "strategy   shortest" in text
    csv_out = run(runner, "chain", c4_file, "--format", "csv").output.splitlines()
    assert csv_out[0] == "step,word,letter,rank,dimension"
    assert len(csv_out) == 13


def test_chain_step_limit(runner, c4_file):
    doc = json.loads(run(runner, "--format", "json", "--step-limit", "3", "chain", c4_file).output)
    assert doc["outcome"] == "step_limit" and len(doc["steps"]) == 3


def test_dim(runner):
    doc = json.loads(run(runner, "dim", "--n", "4", "--k", "3", "--format", "json").output)
    jsonschema.validate(doc, schema("dim"))
    assert doc["dimension"] == doc["formula"] == 9
    assert run(runner, "dim", "--n", "3", "--k", "4").exit_code == 2


def test_audit_json_and_determinism(runner):
    args = ["--format", "json", "--seed", "3", "audit", "--trials", "30", "--ceiling-words", "50", "--cerny", "3,5", "--dim-max", "4"]
    a = run(runner, *args)
    b = run(runner, *args)
    assert a.exit_code == 0
    assert a.output == b.output
    doc = json.loads(a.output)
    jsonschema.validate(doc, schema("audit"))
    assert doc["seed"] == 3


def test_audit_text_and_csv(runner):
    text = run(runner, "audit", "--trials", "10", "--ceiling-words", "10", "--claims", "homomorphism,chain_word").output
    assert "homomorphism" in text and "max chain/oracle length ratio" in text
    rows = run(runner, "--format", "csv", "audit", "--trials", "10", "--claims", "homomorphism").output.splitlines()
    assert rows[0] == "claim,population,trials,violations,verdict"
    assert rows[1].startswith("homomorphism,")


def test_audit_bad_claim(runner):
    assert run(runner, "audit", "--claims", "nope").exit_code == 2


def test_census(runner, tmp_path):
    out = tmp_path / "census.json"
    res = run(runner, "census", "--n", "3", "--k", "2", "--format", "json", "--out", str(out), "--workers", "2")
    assert res.exit_code == 0 and res.output == ""
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, schema("census"))
    assert doc["max_oracle_length"] == 4
    assert "reference_note" in run(runner, "census", "--n", "2", "--k", "2").output
    assert run(runner, "census", "--n", "5", "--k", "2", "--budget", "1000").exit_code == 2
