import orjson
from typer.testing import CliRunner

from cfkinv.__main__ import app
from tests.conftest import COMPLEXES

runner = CliRunner()


def test_app():
    result = runner.invoke(app, ["--help"])
    assert result.exit_code == 0
    for command in ("compute", "table", "verify", "search"):
        assert command in result.output


def test_compute_complex_json():
    result = runner.invoke(app, ["compute", "--complex", str(COMPLEXES / "trefoil.json"), "--json"])
    assert result.exit_code == 0
    payload = orjson.loads(result.stdout)
    assert (payload["V0"], payload["V0under"], payload["V0over"]) == (1, 1, 1)
    assert (payload["mirror_V0"], payload["mirror_V0under"], payload["mirror_V0over"]) == (0, 0, -1)
    assert payload["source"] == "complex-file"


def test_compute_knot_name():
    result = runner.invoke(app, ["compute", "--knot", "0_1"])
    assert result.exit_code == 0
    assert "0_1" in result.output


def test_compute_needs_one_selector():
    result = runner.invoke(app, ["compute"])
    assert result.exit_code == 2
    result = runner.invoke(app, ["compute", "--knot", "0_1", "--params", "1,1,1,1"])
    assert result.exit_code == 2


def test_compute_unknown_knot():
    result = runner.invoke(app, ["compute", "--knot", "13n1"])
    assert result.exit_code == 1
    assert "13n1 is not in the knot table" in result.output


def test_verify_shipped():
    result = runner.invoke(app, ["verify", str(COMPLEXES / "trefoil.json"), "--json"])
    assert result.exit_code == 0
    payload = orjson.loads(result.stdout)
    assert payload["ok"]
    assert payload["generators"] == 3
    assert payload["arrows"] == 2
    assert payload["alexander"] == "t^-1 - 1 + t"
    assert payload["V0"] == 1


def test_verify_broken(complex_path):
    complex_path.write_bytes(
        orjson.dumps(
            {
                "generators": [{"name": "a", "alexander": 0, "maslov": 0}, {"name": "b", "alexander": 0, "maslov": 0}],
                "arrows": [{"from": "a", "to": "b", "upower": 0}],
            }
        )
    )
    result = runner.invoke(app, ["verify", str(complex_path)])
    assert result.exit_code == 1
    assert "not Maslov homogeneous" in result.output


def test_verify_unparsable(complex_path):
    complex_path.write_text('{"generators": [{"name": "a"}]}')
    result = runner.invoke(app, ["verify", str(complex_path)])
    assert result.exit_code == 1


def test_table(tmp_path):
    expected = tmp_path / "expected.json"
    out = tmp_path / "results.json"
    expected.write_bytes(
        orjson.dumps(
            [
                {"name": "0_1", "V0": 0, "V0under": 0, "V0over": 0, "mirror_V0": 0, "mirror_V0under": 0, "mirror_V0over": 0},
                {"name": "4_1", "V0": 0, "V0under": 1, "V0over": 0, "mirror_V0": 0, "mirror_V0under": 1, "mirror_V0over": 0},
            ]
        )
    )
    result = runner.invoke(app, ["table", "--expected", str(expected), "--out", str(out)])
    assert result.exit_code == 0
    results = orjson.loads(out.read_bytes())
    assert [row["name"] for row in results] == ["0_1", "4_1"]
    assert results[1]["V0under"] == 1


def test_table_mismatch_and_skipped(tmp_path):
    expected = tmp_path / "expected.json"
    expected.write_bytes(
        orjson.dumps(
            [
                {"name": "0_1", "V0": 1, "V0under": 0, "V0over": 0, "mirror_V0": 0, "mirror_V0under": 0, "mirror_V0over": 0},
                {"name": "10_128", "V0": 0, "V0under": 0, "V0over": 0, "mirror_V0": 0, "mirror_V0under": 0, "mirror_V0over": 0},
            ]
        )
    )
    out = tmp_path / "results.json"
    result = runner.invoke(app, ["table", "-e", str(expected), "--knots", "0_1", "-o", str(out)])
    assert result.exit_code == 1
    assert [row["name"] for row in orjson.loads(out.read_bytes())] == ["0_1"]

    result = runner.invoke(app, ["table", "-e", str(expected), "--knots", "10_128"])
    assert result.exit_code == 1
    assert "0 compared, 1 without values" in result.output
    result = runner.invoke(app, ["table", "-e", str(expected), "--knots", "10_128", "--allow-skipped"])
    assert result.exit_code == 0
    assert "0 of 1 rows compared, no mismatch, 1 skipped" in result.output


def test_table_bad_expected(tmp_path):
    expected = tmp_path / "expected.json"
    expected.write_text("[{")
    result = runner.invoke(app, ["table", "--expected", str(expected)])
    assert result.exit_code == 1


def test_search_json():
    result = runner.invoke(app, ["search", "--alexander", "1,-1,1", "--max-k", "1", "--json"])
    assert result.exit_code == 0
    assert [1, 1, 1, 1] in orjson.loads(result.stdout)


def test_search_rejects_even_coefficient_lists():
    result = runner.invoke(app, ["search", "--alexander", "1,-1"])
    assert result.exit_code == 2
