import json
import subprocess
import sys
from importlib.resources import files

import jsonschema
import pytest

from hrhlab.cli import EXIT_CONSISTENCY, EXIT_DOMAIN, EXIT_OK, execute, main, run_batch
from hrhlab.dsl import parse
from hrhlab.report import run
from hrhlab.verify import BATCH_SAMPLE

SCHEMA = json.loads(files("hrhlab").joinpath("report.schema.json").read_text())

JSON_INPUTS = [
    "hrh bp(2,2,2,2)",
    "hrh bp(2,3)",
    "hrh bp(3,3,3)",
    "hrh tuple(bp(2,2,2), bp(2,3))",
    "spectrum bp(3,4)",
    "bsato tuple(bp(2,2,2), bp(2,2,2))",
    "bsato bp(3,3)",
    "bsato roots(2: 2, 5/2, 3)",
    "det generic m=4 n=3 p=2",
    "det skew-even m=2 p=1",
    "det symmetric n=4 p=1",
    "cone P2",
    "toric rays=(1,0),(0,1)",
    "secant p1=no vanishing=no",
    "verify --suite=families",
]


def report_json(line):
    code, out = execute(line, "json")
    assert code == EXIT_OK, out
    return json.loads(out)


class TestReports:
    def test_hrh_text(self):
        code, out = execute("hrh bp(2,2,2,2)")
        assert code == EXIT_OK
        assert "HRH = 0 (via HRH = Sp_min,Z - 2)" in out.splitlines()

    def test_det_json(self):
        data = report_json("det generic m=4 n=3 p=2 --format=json")
        v = data["values"]
        assert (v["HRH"], v["lcdef_gen"], v["lcd"], v["codim"]) == (0, 1, 4, 2)
        assert all(c["holds"] for c in data["checks"])

    def test_interval_hrh(self):
        v = report_json("det skew-even m=2 p=1")["values"]
        assert v["HRH"] == {"kind": "interval", "lo": 0, "hi": 1}

    def test_infinite_values_are_strings(self):
        v = report_json("bsato bp(2,3)")["values"]
        assert v["alpha_tilde_Z"] == "inf" and v["HRH"] == "inf"

    def test_hrh_minus_one_is_integer(self):
        assert report_json("hrh bp(3,3,3)")["values"]["HRH"] == -1

    def test_tuple_of_quadrics(self):
        data = report_json("bsato tuple(bp(2,2,2), bp(2,2,2))")
        v = data["values"]
        assert v["roots"] == ["2", "5/2", "3"]
        assert v["alpha_tilde_Z"] == 3 and v["HRH"] == "inf"
        assert [c["name"] for c in data["checks"]] == ["alpha_vs_hrh"]

    def test_quadric_bsato_checks(self):
        checks = {c["name"]: c for c in report_json("bsato bp(2,2,2,2)")["checks"]}
        assert checks["alpha_vs_hrh"]["lhs"] == checks["alpha_vs_hrh"]["rhs"] == 0
        assert checks["alpha_vs_sp_min"]["holds"]

    @pytest.mark.parametrize("line", JSON_INPUTS)
    def test_schema(self, line):
        jsonschema.validate(report_json(line), SCHEMA)

    @pytest.mark.parametrize("line", JSON_INPUTS)
    def test_byte_stable(self, line):
        assert execute(line, "json") == execute(line, "json")

    def test_run_echoes_canonical_input(self):
        assert run(parse("hrh  bp( 2,2 )")).input == "hrh bp(2,2)"


class TestExitCodes:
    @pytest.mark.parametrize(
        "line,code",
        [
            ("hrh bp(1,2)", EXIT_DOMAIN),
            ("hrh bp(2,2", EXIT_DOMAIN),
            ("hrh sp(3: 1/2)", EXIT_CONSISTENCY),
            ("bsato roots(2: 5/2, 3)", EXIT_DOMAIN),
            ("hrh tuple(bp(2,2,2,2), bp(2,3))", EXIT_DOMAIN),
            ("spectrum roots(1: 1)", EXIT_DOMAIN),
            ("hrh bp(2,2,2)", EXIT_OK),
        ],
    )
    def test_codes(self, line, code):
        assert execute(line)[0] == code

    def test_error_message(self):
        assert execute("hrh bp(1,2)") == (EXIT_DOMAIN, "error: exponent must be ≥ 2 at position 7")

    def test_main(self, capsys):
        assert main(["hrh", "bp(2,2,2,2)"]) == EXIT_OK
        assert "HRH = 0" in capsys.readouterr().out
        assert main(["hrh bp(1,2)"]) == EXIT_DOMAIN
        assert "position 7" in capsys.readouterr().err
        assert main([]) == EXIT_DOMAIN

    def test_main_suite_flag(self, capsys):
        assert main(["--suite=families"]) == EXIT_OK
        assert "criterion 7" in capsys.readouterr().out
        assert main(["hrh bp(2)", "--suite=det"]) == EXIT_DOMAIN

    def test_main_format_override(self, capsys):
        assert main(["cone P2", "--format=json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["values"]["HRH"] == "inf"

    def test_subprocess(self):
        proc = subprocess.run(
            [sys.executable, "-m", "hrhlab", "hrh sp(3: 1/2)"], capture_output=True, text=True
        )
        assert proc.returncode == EXIT_CONSISTENCY
        assert proc.stderr.startswith("consistency error:")


class TestBatch:
    def test_batch_matches_sequential(self):
        lines = BATCH_SAMPLE * 4
        assert run_batch(lines, "json", jobs=8) == run_batch(lines, "json", jobs=1)
        assert run_batch(lines, jobs=3) == [execute(ln) for ln in lines]

    def test_batch_file(self, tmp_path, capsys):
        path = tmp_path / "cmds.txt"
        path.write_text("# comment\nhrh bp(2,2,2,2)\n\ncone godeaux\n", encoding="utf-8")
        assert main([f"--batch={path}", "--jobs=2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.index("hrh bp(2,2,2,2)") < out.index("cone n=2")

    def test_batch_exit_code_is_worst(self, tmp_path, capsys):
        path = tmp_path / "cmds.txt"
        path.write_text("hrh bp(2,2)\nhrh bp(1)\nhrh sp(3: 1/2)\n", encoding="utf-8")
        assert main(["--batch", str(path)]) == EXIT_CONSISTENCY
        assert main(["--batch", str(tmp_path / "missing.txt")]) == EXIT_DOMAIN
        capsys.readouterr()


def test_verify_all_passes():
    code, out = execute("verify --suite=all")
    assert code == EXIT_OK, out
    assert out.count(": pass (") == 10
