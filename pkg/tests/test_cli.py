import json
import subprocess
import sys
from pathlib import Path

import pytest

from transversal_kit.cli import main, run
from transversal_kit.errors import SpecError
from transversal_kit.specs import parse_group_spec, parse_tower_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"
S3 = str(SPECS / "s3.json")
Z8 = str(SPECS / "z8_tower.json")


def cli_json(capsys, *argv):
    code = main([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


def test_parse_group_spec_examples():
    gs = parse_group_spec((SPECS / "s3.json").read_text())
    assert (gs.degree, len(gs.generators), len(gs.subgroup)) == (3, 2, 1)


@pytest.mark.parametrize(
    "text, message",
    [
        ('{"degree": 3, "generators": [[1, 1, 3]]}', "not a bijection at generators[0]"),
        ('{"degree": 0, "generators": []}', "degree out of range"),
        ('{"degree": 3, "generators": [[1, 2]]}', "at generators[0]"),
        ('{"degree": 3', "malformed JSON"),
        ('[1, 2]', "must be a JSON object"),
        ('{"degree": "3"}', "degree must be an integer"),
        ('{"degree": 3, "generators": [], "cap": 0}', "cap"),
    ],
)
def test_parse_group_spec_errors(text, message):
    with pytest.raises(SpecError) as info:
        parse_group_spec(text)
    assert message in str(info.value)


def test_subgroup_outside_group_is_a_spec_error():
    gs = parse_group_spec('{"degree": 3, "generators": [[2, 3, 1]], "subgroup": [[2, 1, 3]]}')
    with pytest.raises(SpecError, match="subgroup"):
        gs.build()


def test_parse_tower_spec():
    ts = parse_tower_spec((SPECS / "z8_tower.json").read_text())
    assert [len(G) for G in ts.tower.levels] == [2, 4, 8]
    assert (ts.pair.H.order, ts.pair.K.order) == (8, 4)


@pytest.mark.parametrize(
    "doc, path",
    [
        ({"levels": []}, "levels"),
        ({"levels": [{"degree": 2, "generators": [[2, 1]]}], "maps": [[0]]}, "maps"),
        (
            {
                "levels": [{"degree": 2, "generators": [[2, 1]]}, {"degree": 4, "generators": [[2, 3, 4, 1]]}],
                "maps": [[0, 0, 0, 0]],
            },
            "maps",
        ),
        (
            {
                "levels": [{"degree": 2, "generators": [[2, 1]]}, {"degree": 4, "generators": [[2, 3, 4, 1]]}],
                "maps": ["oops"],
            },
            "maps[0]",
        ),
        (
            {
                "levels": [{"degree": 2, "generators": [[2, 1]]}, {"degree": 4, "generators": [[2, 3, 4, 1]]}],
                "maps": [[0, 1, 0, 1]],
                "H": [[3, 4, 1, 2]],
                "K": [[2, 3, 4, 1]],
            },
            "K",
        ),
    ],
)
def test_parse_tower_spec_errors(doc, path):
    with pytest.raises(SpecError) as info:
        parse_tower_spec(json.dumps(doc))
    assert info.value.path == path


def test_finite_transversal(capsys):
    code, out = cli_json(capsys, "finite", "transversal", "--spec", S3)
    assert code == 0
    assert out["schema"] == "transversal-kit/1" and out["command"] == "finite transversal"
    assert len(out["results"]["transversal"]) == 3
    assert all(c["pass"] for c in out["invariantChecks"])
    assert set(out) == {"schema", "command", "inputsDigest", "results", "invariantChecks", "toolVersion"}
    assert out["inputsDigest"].startswith("sha256:")


def test_finite_check(capsys):
    code, out = cli_json(capsys, "finite", "check", "--spec", S3)
    assert code == 0 and out["results"]["indexConditionHolds"]
    assert sorted(c["size"] for c in out["results"]["doubleCosets"]) == [2, 4]


def test_bs_report_counterexample_exits_1(capsys):
    code, out = cli_json(capsys, "bs", "report", "--q", "0", "--n", "1")
    assert code == 1
    res = out["results"]
    assert res["indexConditionHolds"] is False and res["witness"] == {"q": "0", "n": 1}
    assert (res["leftCount"], res["rightCount"]) == (2, 1)


def test_bs_indices(capsys):
    code, out = cli_json(capsys, "bs", "indices", "--q", "1/2", "--n", "-3")
    assert code == 0
    assert (out["results"]["leftIndex"], out["results"]["rightIndex"]) == (1, 8)
    assert main(["bs", "indices", "--q", "1/3"]) == 2


def test_solenoid(capsys):
    code, out = cli_json(capsys, "solenoid", "--n", "0")
    assert code == 0 and out["results"]["towerIndices"][-1] == 1
    code, out = cli_json(capsys, "solenoid", "--n", "-2")
    assert code == 1 and (out["results"]["leftIndex"], out["results"]["rightIndex"]) == (1, 4)


def test_tower_run(capsys):
    code, out = cli_json(capsys, "tower", "run", "--spec", Z8)
    assert code == 0
    assert [e["index"] for e in out["results"]["indices"]] == [2, 2, 2]
    assert out["results"]["classification"] == "stabilized"
    assert main(["tower", "run", "--spec", Z8, "--max-level", "1"]) == 2


@pytest.mark.parametrize("kind", ["polar", "qr"])
def test_matrix(capsys, kind):
    code, out = cli_json(capsys, "matrix", kind, "--n", "2", "--seed", "7")
    assert code == 0
    assert out["results"]["residual"] <= 1e-10
    assert out["results"]["certificates"]["unitarity_defect"] <= 1e-10


def test_matrix_tolerance_too_tight_fails(capsys):
    code, _ = cli_json(capsys, "matrix", "polar", "--n", "6", "--seed", "1", "--tol", "1e-30")
    assert code == 1


def test_hyperspace_demo(capsys):
    code, out = cli_json(capsys, "hyperspace", "demo", "--example", "fn-counterexample", "--n", "10")
    assert code == 0
    res = out["results"]
    assert res["hausdorffToOrigin"] == [f"1/{j}" if j > 1 else "1" for j in range(1, 11)]
    assert res["clusterCount"] == 1 and res["cardinalityDrop"] is True
    assert main(["hyperspace", "demo", "--n", "10", "--tol", "abc"]) == 2


def test_missing_spec_file_exits_2(tmp_path):
    assert main(["finite", "check", "--spec", str(tmp_path / "nope.json")]) == 2


def test_capacity_error_exits_2(tmp_path):
    spec = tmp_path / "s5.json"
    spec.write_text(json.dumps({"degree": 5, "generators": [[2, 1, 3, 4, 5], [2, 3, 4, 5, 1]]}))
    assert main(["finite", "check", "--spec", str(spec), "--cap", "50"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["finite", "transversal", "--spec", S3],
        ["bs", "report"],
        ["matrix", "qr", "--n", "4", "--seed", "3"],
        ["hyperspace", "demo"],
        ["tower", "run", "--spec", Z8],
    ],
)
def test_json_is_byte_identical_across_runs(capsys, argv):
    main([*argv, "--json"])
    first = capsys.readouterr().out
    main([*argv, "--json"])
    assert capsys.readouterr().out == first
    assert run(argv).to_json() + "\n" == first


def test_summary_output(capsys):
    assert main(["finite", "transversal", "--spec", S3]) == 0
    assert "verdict: PASS" in capsys.readouterr().out


def test_console_usage_errors():
    for argv in (["bogus"], ["finite"], []):
        proc = subprocess.run([sys.executable, "-m", "transversal_kit", *argv], capture_output=True, text=True)
        assert proc.returncode == 2
        assert "usage" in proc.stderr
