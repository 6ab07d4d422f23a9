import orjson
import pytest

from cfkinv.config.settings import CfkSettings
from cfkinv.core.diagram import Parameterization
from cfkinv.core.pipeline import (
    compare_row,
    compare_with_expected,
    compute_knot,
    load_expected,
    read_results,
    resolve_knot,
    run_table,
    write_results,
)
from cfkinv.core.schema import ExpectedRow, KnotResult
from cfkinv.core.type_mapping import ResultSource, RowStatus
from cfkinv.errors import KnotNotFound, ParseError, PendingKnotData

from tests.conftest import COMPLEXES, DATA

TREFOIL_ROW = ExpectedRow(
    name="3_1", V0=1, V0under=1, V0over=1, mirror_V0=0, mirror_V0under=0, mirror_V0over=-1
)


def result(name="3_1", own=(1, 1, 1), mirror=(0, 0, -1), **kwargs) -> KnotResult:
    return KnotResult(
        name=name,
        V0=own[0],
        V0under=own[1],
        V0over=own[2],
        mirror_V0=mirror[0],
        mirror_V0under=mirror[1],
        mirror_V0over=mirror[2],
        **kwargs,
    )


@pytest.fixture(scope="module")
def examples():
    return {row.name: row for row in load_expected(DATA / "expected_examples.json")}


@pytest.mark.parametrize("name", ["0_1", "4_1", "11n57"])
def test_compute_shipped_complexes(name, examples):
    computed = compute_knot(name)
    assert computed.status == "ok"
    assert computed.source == ResultSource.complex_file.value
    assert compare_row(computed, examples[name]).status == RowStatus.match
    assert computed.ordering_ok()
    assert set(computed.timings) == {"complex", "invariants", "mirror"}


def test_compute_trefoil_from_diagram(examples):
    computed = compute_knot("3_1")
    assert computed.source == ResultSource.diagram.value
    assert compare_row(computed, examples["3_1"]).status in (RowStatus.match, RowStatus.swapped)


def test_compute_from_path():
    computed = compute_knot(COMPLEXES / "trefoil.json")
    assert computed.name == "trefoil"
    assert computed.triple == (1, 1, 1)
    assert computed.mirror_triple == (0, 0, -1)
    assert computed.iota_classes == 1


def test_resolve_knot():
    settings = CfkSettings()
    assert resolve_knot(Parameterization(1, 1, 1, 1), settings).name == "(1,1,1,1)"
    with pytest.raises(PendingKnotData):
        resolve_knot("11n96", settings)
    with pytest.raises(KnotNotFound):
        resolve_knot("13n1", settings)


def test_compute_knot_names_the_knot_in_errors():
    with pytest.raises(KnotNotFound, match=r"\[13n1\]"):
        compute_knot("13n1")


def test_oracle_runs_when_configured():
    computed = compute_knot(COMPLEXES / "trefoil.json", CfkSettings(oracle_truncation=6))
    assert computed.triple == (1, 1, 1)


def test_run_table_serial():
    seen = []
    results = run_table(["4_1", "10_128", "13n1", "0_1"], CfkSettings(max_workers=1), on_result=seen.append)
    assert [r.name for r in results] == ["0_1", "10_128", "13n1", "4_1"]
    by_name = {r.name: r for r in results}
    assert by_name["10_128"].status == RowStatus.skipped.value
    assert by_name["13n1"].status == RowStatus.error.value
    assert by_name["4_1"].triple == (0, 1, 0)
    assert sorted(r.name for r in seen) == ["0_1", "10_128", "4_1"]


def test_compare_row():
    assert compare_row(result(), TREFOIL_ROW).status == RowStatus.match
    assert compare_row(result(own=(0, 0, -1), mirror=(1, 1, 1)), TREFOIL_ROW).status == RowStatus.swapped
    mismatch = compare_row(result(own=(1, 2, 1)), TREFOIL_ROW)
    assert mismatch.status == RowStatus.mismatch
    assert mismatch.columns == ("V0under",)
    assert mismatch.detail == "V0under: expected 1, got 2"
    skipped = KnotResult(name="3_1", status="skipped", error="no data")
    assert compare_row(skipped, TREFOIL_ROW).status == RowStatus.skipped
    failed = KnotResult(name="3_1", status="error", error="boom")
    assert compare_row(failed, TREFOIL_ROW).detail == "boom"
    assert compare_row(None, TREFOIL_ROW).status == RowStatus.missing


def test_compare_with_expected_fails_on_skipped_rows():
    other = TREFOIL_ROW.model_copy(update={"name": "4_1"})
    comparison = compare_with_expected([KnotResult(name="4_1", status="skipped"), result()], [TREFOIL_ROW, other])
    assert not comparison.ok()
    assert [row.name for row in comparison.failures()] == ["4_1"]
    assert comparison.ok(allow_skipped=True)
    assert [row.name for row in comparison.checked()] == ["3_1"]
    frame = comparison.to_frame()
    assert frame["status"].tolist() == ["match", "skipped"]


def test_load_expected_errors(tmp_path):
    path = tmp_path / "expected.json"
    with pytest.raises(ParseError):
        load_expected(path)
    path.write_text("[{")
    with pytest.raises(ParseError):
        load_expected(path)
    path.write_bytes(orjson.dumps([{"name": "3_1", "V0": 1}]))
    with pytest.raises(ParseError) as raised:
        load_expected(path)
    assert raised.value.field == "0.V0under"


def test_shipped_expected_tables():
    assert len(load_expected(DATA / "expected_table1.json")) == 19
    assert len(load_expected(DATA / "expected_examples.json")) == 5


def test_results_file(tmp_path):
    path = tmp_path / "results.json"
    results = [result(), KnotResult(name="10_128", status="skipped", error="no data")]
    write_results(results, path)
    assert read_results(path) == results
    assert orjson.loads(path.read_bytes())[0]["name"] == "3_1"
