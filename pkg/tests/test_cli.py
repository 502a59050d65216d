"""Command line behavior: exit codes, JSON documents, tolerance plumbing."""

import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from toepnorm import cli
from toepnorm.classify import (
    ClassificationResult,
    TheoremViolation,
    Verdict,
    classify_complex,
)
from toepnorm.genlab import GenRequest, Kind, generate, perturb
from toepnorm.scalar import GaussianRational, ScalarPolicy
from toepnorm.toeplitz import spec_from_json, spec_to_json

GOLDEN = Path(__file__).parent / "golden"

FRACTION_DOC = {
    "n": 1,
    "diag": [
        {"re": "2", "im": "0"},
        {"re": "0", "im": "0"},
        {"re": "1", "im": "0"},
    ],
}

TYPE1_DOC = {
    "n": 2,
    "diag": [
        {"re": "0", "im": "2"},
        {"re": "0", "im": "1"},
        {"re": "0", "im": "0"},
        {"re": "1", "im": "0"},
        {"re": "2", "im": "0"},
    ],
}


@pytest.fixture
def spec_file(tmp_path):
    def write(doc, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def run_cli(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    doc = json.loads(captured.out) if captured.out else None
    return code, doc, captured.err


class TestCheck:
    def test_not_normal_document(self, spec_file, capsys):
        code, doc, err = run_cli(["check", spec_file(FRACTION_DOC)], capsys)
        assert code == 0
        assert doc == json.loads((GOLDEN / "check_fraction.json").read_text())
        assert err == ""

    def test_normal_document(self, spec_file, capsys):
        code, doc, _ = run_cli(["check", spec_file(TYPE1_DOC)], capsys)
        assert code == 0
        assert doc["normal"] is True and doc["agrees"] is True

    def test_stdin_input(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(TYPE1_DOC)))
        code, doc, _ = run_cli(["check", "-"], capsys)
        assert code == 0 and doc["normal"] is True

    def test_missing_file(self, capsys):
        code, _, err = run_cli(["check", "/no/such/file.json"], capsys)
        assert code == 2 and "cannot read" in err

    def test_not_json(self, spec_file, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{half a document")
        code, _, err = run_cli(["check", str(path)], capsys)
        assert code == 2 and "not JSON" in err

    def test_wrong_shape(self, spec_file, capsys):
        code, _, _ = run_cli(["check", spec_file({"n": 1})], capsys)
        assert code == 2


class TestClassify:
    def test_direct(self, spec_file, capsys):
        code, doc, _ = run_cli(["classify", spec_file(TYPE1_DOC)], capsys)
        assert code == 0
        assert doc["verdict"] == "Classified"
        assert doc["type_I"] == {"re": "0", "im": "1"}
        assert doc["type_II"] is None
        assert doc["trace"] is None

    def test_proof_has_trace(self, spec_file, capsys):
        code, doc, _ = run_cli(
            ["classify", spec_file(TYPE1_DOC), "--route", "proof"], capsys
        )
        assert code == 0
        assert doc["trace"]["point"] == {"re": "1", "im": "0"}
        assert doc["trace"]["alpha0"] == {"re": "0", "im": "1"}

    def test_both_routes_agree(self, spec_file, capsys):
        code, doc, _ = run_cli(
            ["classify", spec_file(TYPE1_DOC), "--route", "both"], capsys
        )
        assert code == 0
        assert doc == json.loads((GOLDEN / "classify_type1_both.json").read_text())

    def test_real_labels_attached(self, spec_file, capsys):
        doc_in = {
            "n": 2,
            "diag": [
                {"re": "1", "im": "0"},
                {"re": "2", "im": "0"},
                {"re": "0", "im": "0"},
                {"re": "1", "im": "0"},
                {"re": "2", "im": "0"},
            ],
        }
        code, doc, _ = run_cli(["classify", spec_file(doc_in)], capsys)
        assert code == 0
        assert doc["real_labels"] == ["Circulant"]

    def test_violation_exits_3(self, spec_file, capsys, monkeypatch):
        def boom(spec, policy):
            raise TheoremViolation("forced failure", deviations={"type_I": 1.0})

        monkeypatch.setattr(cli, "classify_complex", boom)
        code, doc, err = run_cli(["classify", spec_file(TYPE1_DOC)], capsys)
        assert code == 3
        assert doc["error"] == "theorem-violation"
        assert doc["deviations"] == {"type_I": 1.0}
        assert "forced failure" in err

    def test_route_disagreement_exits_3(self, spec_file, capsys, monkeypatch):
        def contrarian(spec, policy):
            return ClassificationResult(Verdict.NOT_NORMAL), None

        monkeypatch.setattr(cli, "classify_via_proof", contrarian)
        code, doc, _ = run_cli(
            ["classify", spec_file(TYPE1_DOC), "--route", "both"], capsys
        )
        assert code == 3
        assert doc["agree"] is False


class TestVerifyIdentities:
    def test_real_runs_all_four(self, spec_file, capsys):
        code, doc, _ = run_cli(["verify-identities", spec_file(FRACTION_DOC)], capsys)
        assert code == 0
        assert doc["which"] == ["8", "9", "14", "16"]
        assert doc["results"]["8"]["holds"] is False
        assert doc["results"]["16"]["holds"] is False

    def test_complex_runs_trig_pair_only(self, spec_file, capsys):
        code, doc, _ = run_cli(["verify-identities", spec_file(TYPE1_DOC)], capsys)
        assert code == 0
        assert doc["which"] == ["8", "9"]
        assert doc["results"]["8"]["holds"] is True
        assert doc["results"]["9"]["max_abs"] < 1e-12

    def test_real_identity_on_complex_input(self, spec_file, capsys):
        code, _, _ = run_cli(
            ["verify-identities", spec_file(TYPE1_DOC), "--which", "16"], capsys
        )
        assert code == 2


class TestGenerate:
    def test_round_trip_through_classify(self, tmp_path, capsys):
        code = cli.main(["generate", "--kind", "typeII", "--n", "4", "--seed", "3", "--exact"])
        out = capsys.readouterr().out
        assert code == 0
        path = tmp_path / "gen.json"
        path.write_text(out)
        code, doc, _ = run_cli(["classify", str(path), "--route", "both"], capsys)
        assert code == 0 and doc["agree"] is True
        assert doc["direct"]["verdict"] == "Classified"

    def test_matches_library(self, capsys):
        code, doc, _ = run_cli(
            ["generate", "--kind", "circulant", "--n", "3", "--seed", "11"], capsys
        )
        assert code == 0
        assert doc == spec_to_json(generate(GenRequest(n=3, kind=Kind.CIRCULANT, seed=11)))

    def test_explicit_witness(self, capsys):
        code, doc, _ = run_cli(
            [
                "generate", "--kind", "typeI", "--n", "2", "--exact",
                "--witness", '{"re": "0", "im": "-1"}',
            ],
            capsys,
        )
        assert code == 0
        res = classify_complex(spec_from_json(doc), ScalarPolicy.exact())
        assert res.type_I == GaussianRational(0, -1)

    def test_bad_scale_exits_2(self, capsys):
        code, _, _ = run_cli(
            ["generate", "--kind", "typeI", "--n", "2", "--scale", "0"], capsys
        )
        assert code == 2

    def test_witness_on_real_kind_exits_2(self, capsys):
        code, _, _ = run_cli(
            [
                "generate", "--kind", "symmetric", "--n", "2",
                "--witness", '{"re": "1", "im": "0"}',
            ],
            capsys,
        )
        assert code == 2


class TestEnumerate:
    def test_gauss1_census(self, capsys):
        code, doc, _ = run_cli(["enumerate", "--n", "1", "--values", "gauss1"], capsys)
        assert code == 0
        assert doc == json.loads((GOLDEN / "enum_gauss1_n1.json").read_text())

    def test_real_census(self, capsys):
        code, doc, _ = run_cli(
            ["enumerate", "--n", "1", "--values", "int2", "--real"], capsys
        )
        assert code == 0
        assert doc["normal"] == 9 and doc["classified"] == 8

    def test_budget_exits_2(self, capsys):
        code, _, err = run_cli(
            ["enumerate", "--n", "3", "--values", "int2", "--budget", "100"], capsys
        )
        assert code == 2 and "budget" in err


class TestBench:
    def test_document_shape(self, capsys):
        code, doc, _ = run_cli(["bench", "--n", "6", "--repeat", "1"], capsys)
        assert code == 0
        assert doc["repeat"] == 1
        assert {row["n"] for row in doc["results"]} == {6}
        for row in doc["results"]:
            assert row["fast_ms"] > 0 and row["oracle_ms"] > 0 and row["ratio"] > 0

    def test_run_bench_helper(self):
        rows = cli.run_bench([4], repeat=1)
        assert [r["kind"] for r in rows] == ["Unconstrained", "TypeI"]


class TestTolerancePlumbing:
    @pytest.fixture
    def near_normal_file(self, tmp_path):
        spec = perturb(generate(GenRequest(n=4, kind=Kind.CIRCULANT, seed=2)), 1e-6, seed=1)
        path = tmp_path / "near.json"
        path.write_text(json.dumps(spec_to_json(spec)))
        return str(path)

    def test_default_eps_rejects(self, near_normal_file, capsys):
        _, doc, _ = run_cli(["check", near_normal_file], capsys)
        assert doc["normal"] is False

    def test_env_var_loosens(self, near_normal_file, capsys, monkeypatch):
        monkeypatch.setenv("TOEPNORM_EPS", "1e-3")
        _, doc, _ = run_cli(["check", near_normal_file], capsys)
        assert doc["normal"] is True

    def test_flag_beats_env(self, near_normal_file, capsys, monkeypatch):
        monkeypatch.setenv("TOEPNORM_EPS", "1e-3")
        _, doc, _ = run_cli(["check", near_normal_file, "--eps", "1e-12"], capsys)
        assert doc["normal"] is False

    def test_garbage_env_exits_2(self, near_normal_file, capsys, monkeypatch):
        monkeypatch.setenv("TOEPNORM_EPS", "soon")
        code, _, err = run_cli(["check", near_normal_file], capsys)
        assert code == 2 and "TOEPNORM_EPS" in err

    def test_exact_input_ignores_eps(self, spec_file, capsys, monkeypatch):
        monkeypatch.setenv("TOEPNORM_EPS", "soon")  # never parsed for exact specs
        code, doc, _ = run_cli(["check", spec_file(FRACTION_DOC)], capsys)
        assert code == 0 and doc["exact"] is True


class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["frobnicate"],
            ["classify", "--route", "sideways"],
            ["enumerate", "--n", "1", "--values", "gauss1", "--real"],
            ["enumerate", "--n", "0", "--values", "int2"],
            ["generate", "--kind", "typeI", "--n", "0"],
            ["generate", "--kind", "mystery", "--n", "2"],
            ["bench", "--repeat", "0"],
            ["bench", "--n", "4,x"],
            ["generate", "--kind", "typeI", "--n", "2", "--witness", "not json"],
        ],
    )
    def test_usage_exits_64(self, argv, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 64


class TestSubprocess:
    def test_module_invocation(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(TYPE1_DOC))
        proc = subprocess.run(
            [sys.executable, "-m", "toepnorm", "classify", str(path)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["verdict"] == "Classified"

    @pytest.mark.skipif(shutil.which("toepnorm") is None, reason="script not on PATH")
    def test_console_script(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(FRACTION_DOC))
        proc = subprocess.run(
            ["toepnorm", "check", str(path)], capture_output=True, text=True
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["normal"] is False
