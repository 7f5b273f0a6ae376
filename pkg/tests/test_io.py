"""File formats: round-trips are exact and malformed input names its position."""

import csv
import json
import math

import numpy as np
import pytest

from mvdeg import (
    CURVE_CSV_HEADER,
    DimensionError,
    EmbeddingConfig,
    EntropyCurve,
    MultivariateSignal,
    ParseError,
    ScaleRecord,
    StationLayout,
    WeightedGraph,
    build_complete_graph,
    graph_from_json,
    graph_to_json,
    mvdeg_curve,
    read_correlation_json,
    read_graph_json,
    read_signal_csv,
    read_station_csv,
    run_timing_sweep,
    write_curves_csv,
    write_curves_json,
    write_ensemble_report,
    write_graph_json,
    write_signal_csv,
    write_station_csv,
    write_timing_report,
)
from mvdeg.bench import EnsembleReport


# ── signal CSV ───────────────────────────────────────────────────────────────


def test_signal_round_trip_is_bitwise(tmp_path):
    rng = np.random.default_rng(1)
    sig = MultivariateSignal(rng.standard_normal((3, 40)), labels=("ax", "ay", "az"))
    path = tmp_path / "sig.csv"
    write_signal_csv(sig, path)
    back = read_signal_csv(path)
    assert back.labels == ("ax", "ay", "az")
    assert np.array_equal(back.values, sig.values)


def test_signal_default_labels(tmp_path):
    sig = MultivariateSignal(np.ones((2, 3)) * [[1.0], [2.0]])
    path = tmp_path / "sig.csv"
    write_signal_csv(sig, path)
    assert read_signal_csv(path).labels == ("ch1", "ch2")


def test_signal_bad_cell_names_line_and_column(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1.0,2.0\n3.0,oops\n")
    with pytest.raises(ParseError) as err:
        read_signal_csv(path)
    assert err.value.line == 3
    assert err.value.column == 2
    assert "oops" in str(err.value)


def test_signal_ragged_row(tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("a,b\n1.0,2.0\n3.0\n")
    with pytest.raises(ParseError) as err:
        read_signal_csv(path)
    assert err.value.line == 3


def test_signal_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(ParseError):
        read_signal_csv(path)


def test_signal_blank_header_cell(tmp_path):
    path = tmp_path / "head.csv"
    path.write_text("a,,c\n1,2,3\n4,5,6\n")
    with pytest.raises(ParseError) as err:
        read_signal_csv(path)
    assert err.value.line == 1


def test_signal_single_row_too_short(tmp_path):
    path = tmp_path / "short.csv"
    path.write_text("a,b\n1.0,2.0\n")
    with pytest.raises(DimensionError):
        read_signal_csv(path)


def test_signal_blank_lines_skipped(tmp_path):
    path = tmp_path / "gaps.csv"
    path.write_text("a\n1.0\n\n2.0\n\n")
    sig = read_signal_csv(path)
    assert np.array_equal(sig.values, [[1.0, 2.0]])


# ── station CSV ──────────────────────────────────────────────────────────────


def test_station_round_trip(tmp_path):
    layout = StationLayout(
        np.array([[0.0, 0.5], [1.25, -3.75]]), station_ids=("alpha", "beta")
    )
    path = tmp_path / "stations.csv"
    write_station_csv(layout, path)
    back = read_station_csv(path)
    assert back.station_ids == ("alpha", "beta")
    assert np.array_equal(back.positions, layout.positions)


def test_station_header_enforced(tmp_path):
    path = tmp_path / "stations.csv"
    path.write_text("id,x,y\ns1,0,0\n")
    with pytest.raises(ParseError) as err:
        read_station_csv(path)
    assert err.value.line == 1


def test_station_bad_coordinate(tmp_path):
    path = tmp_path / "stations.csv"
    path.write_text("station_id,x,y\ns1,0.0,north\n")
    with pytest.raises(ParseError) as err:
        read_station_csv(path)
    assert err.value.line == 2


def test_station_requires_rows(tmp_path):
    path = tmp_path / "stations.csv"
    path.write_text("station_id,x,y\n")
    with pytest.raises(ParseError):
        read_station_csv(path)


# ── graph JSON ───────────────────────────────────────────────────────────────


def test_graph_json_round_trip(tmp_path):
    graph = build_complete_graph(3)
    path = tmp_path / "g.json"
    write_graph_json(graph, path)
    back = read_graph_json(path)
    assert back.n == 3
    assert back.directed is False
    assert np.array_equal(back.weights, graph.weights)


def test_directed_graph_round_trip():
    w = np.array([[0.0, 1.0], [0.0, 0.0]])
    graph = WeightedGraph(w, directed=True)
    back = graph_from_json(graph_to_json(graph))
    assert back.directed is True
    assert np.array_equal(back.weights, w)


def test_graph_json_missing_keys():
    with pytest.raises(ParseError) as err:
        graph_from_json({"n": 2, "weights": [[0, 1], [1, 0]]})
    assert "directed" in str(err.value)
    with pytest.raises(ParseError):
        graph_from_json([1, 2, 3])


def test_graph_json_size_mismatch():
    with pytest.raises(ParseError):
        graph_from_json({"n": 3, "directed": False, "weights": [[0.0, 1.0], [1.0, 0.0]]})


def test_graph_json_extra_keys_ignored():
    obj = {"n": 1, "directed": False, "weights": [[0.0]], "comment": "spare"}
    assert graph_from_json(obj).n == 1


def test_graph_json_syntax_error_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 1, "directed": false,\n "weights": [[0.0]\n}')
    with pytest.raises(ParseError) as err:
        read_graph_json(path)
    assert err.value.line is not None


# ── correlation JSON ─────────────────────────────────────────────────────────


def test_correlation_json(tmp_path):
    path = tmp_path / "corr.json"
    path.write_text("[[1.0, 0.5], [0.5, 1.0]]\n")
    arr = read_correlation_json(path)
    assert arr.shape == (2, 2)
    assert arr[0, 1] == 0.5


def test_correlation_json_must_be_square(tmp_path):
    path = tmp_path / "corr.json"
    path.write_text("[[1.0, 0.5, 0.0], [0.5, 1.0, 0.0]]\n")
    with pytest.raises(ParseError):
        read_correlation_json(path)
    path.write_text("[1.0, 0.5]\n")
    with pytest.raises(ParseError):
        read_correlation_json(path)


# ── curves ───────────────────────────────────────────────────────────────────


def _sample_curve():
    records = (
        ScaleRecord(1, 0.75, 0.01, 2, True),
        ScaleRecord(2, math.nan, math.nan, 0, False),
    )
    return EntropyCurve(
        method="mvdeg", records=records, m=2, c=3, graph="zero(n=1)", seed=7
    )


def test_curves_csv_layout(tmp_path):
    path = tmp_path / "curves.csv"
    write_curves_csv([_sample_curve()], path)
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == list(CURVE_CSV_HEADER)
    assert rows[1] == ["mvdeg", "1", "0.75", "0.01", "2"]
    assert rows[2][0:2] == ["mvdeg", "2"]
    assert rows[2][2] == "nan" and rows[2][3] == "nan"
    assert rows[2][4] == "0"


def test_curves_csv_values_parse_back(tmp_path):
    sig = MultivariateSignal(np.random.default_rng(0).standard_normal((2, 50)))
    curve = mvdeg_curve(sig, build_complete_graph(2), EmbeddingConfig(2, 3, 4))
    path = tmp_path / "curves.csv"
    write_curves_csv([curve], path)
    with open(path, newline="") as f:
        rows = list(csv.reader(f))[1:]
    for row, record in zip(rows, curve.records):
        assert float(row[2]) == record.mean  # repr round-trips exactly


def test_curves_json_flags_and_config(tmp_path):
    path = tmp_path / "curves.json"
    write_curves_json([_sample_curve()], path, config={"m": 2, "c": 3})
    with open(path) as f:
        payload = json.load(f)
    assert payload["config"] == {"m": 2, "c": 3}
    curve = payload["curves"][0]
    assert curve["method"] == "mvdeg"
    assert curve["seed"] == 7
    scales = curve["scales"]
    assert scales[0] == {
        "tau": 1, "mean": 0.75, "sd": 0.01, "n_realizations": 2, "defined": True,
    }
    assert scales[1]["mean"] is None
    assert scales[1]["defined"] is False


def test_curves_json_without_config(tmp_path):
    path = tmp_path / "curves.json"
    write_curves_json([_sample_curve()], path)
    with open(path) as f:
        payload = json.load(f)
    assert "config" not in payload


# ── reports ──────────────────────────────────────────────────────────────────


def test_timing_report_files(tmp_path):
    report = run_timing_sweep(
        (30,), p=2, m=2, c=3, seed=0, pattern_cap=100, repetitions=1, warmup=0
    )
    json_path = tmp_path / "timing.json"
    csv_path = tmp_path / "timing.csv"
    write_timing_report(report, json_path, csv_path)
    with open(json_path) as f:
        payload = json.load(f)
    assert payload["seed"] == 0
    assert set(payload["environment"]) == {"python", "numpy", "cpu", "threads"}
    outcomes = {cell["method"]: cell["outcome"] for cell in payload["cells"]}
    assert outcomes == {"mvdeg": "ok", "classical": "refused-capacity"}
    with open(csv_path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0][0] == "method"
    refused = [r for r in rows[1:] if r[0] == "classical"][0]
    assert refused[5] == ""  # no wall time for a refused cell


def test_ensemble_report_files(tmp_path):
    report = EnsembleReport(
        label="demo",
        curves=(_sample_curve(),),
        realizations=2,
        seed=3,
        config={"m": 2},
        summary={"max_mean_abs_diff": 0.0},
    )
    json_path = tmp_path / "ens.json"
    csv_path = tmp_path / "ens.csv"
    write_ensemble_report(report, json_path, csv_path)
    with open(json_path) as f:
        payload = json.load(f)
    assert payload["label"] == "demo"
    assert payload["summary"] == {"max_mean_abs_diff": 0.0}
    assert payload["curves"][0]["scales"][0]["mean"] == 0.75
    with open(csv_path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == list(CURVE_CSV_HEADER)
    assert len(rows) == 3
