"""CSV and JSON interchange for signals, layouts, graphs, curves, and reports.

Formats:
  * signal CSV: header of channel names, then one row per time sample.
  * station CSV: header station_id,x,y, one row per site.
  * graph JSON: object with keys n, directed, weights.
  * correlation JSON: plain 2-D array.
  * curve CSV: header method,tau,mean,sd,n_realizations; undefined scales keep
    their row with nan statistics. The JSON mirror carries explicit flags and
    the configuration echo.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

import numpy as np

from .bench import EnsembleReport, TimingReport
from .entropy import EntropyCurve, ScaleRecord
from .errors import DimensionError, ParseError
from .graphs import StationLayout, WeightedGraph
from .signal import MultivariateSignal

CURVE_CSV_HEADER = ("method", "tau", "mean", "sd", "n_realizations")


# ── signals ──────────────────────────────────────────────────────────────────


def read_signal_csv(path: str | Path) -> MultivariateSignal:
    """Signal CSV -> MultivariateSignal; malformed cells name line and column."""
    rows: list[list[float]] = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        labels = tuple(name.strip() for name in header)
        if not labels or any(not name for name in labels):
            raise ParseError(f"{path}: header must name every channel", line=1)
        width = len(labels)
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != width:
                raise ParseError(
                    f"{path}: expected {width} columns, got {len(row)}", line=line_no
                )
            parsed = []
            for col, cell in enumerate(row, start=1):
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise ParseError(
                        f"{path}: {cell!r} is not a number", line=line_no, column=col
                    ) from None
            rows.append(parsed)
    if len(rows) < 2:
        raise DimensionError(f"{path}: need at least 2 samples, got {len(rows)}")
    values = np.array(rows, dtype=float).T
    return MultivariateSignal(values, labels=labels)


def write_signal_csv(signal: MultivariateSignal, path: str | Path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(signal.channel_labels())
        for row in signal.values.T:
            writer.writerow([repr(float(v)) for v in row])


# ── station layouts ──────────────────────────────────────────────────────────


def read_station_csv(path: str | Path) -> StationLayout:
    """Station CSV (station_id,x,y) -> StationLayout."""
    ids: list[str] = []
    coords: list[tuple[float, float]] = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        if [h.strip().lower() for h in header] != ["station_id", "x", "y"]:
            raise ParseError(f"{path}: header must be station_id,x,y", line=1)
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ParseError(
                    f"{path}: expected 3 columns, got {len(row)}", line=line_no
                )
            try:
                coords.append((float(row[1]), float(row[2])))
            except ValueError:
                raise ParseError(
                    f"{path}: coordinates must be numbers", line=line_no
                ) from None
            ids.append(row[0].strip())
    if not ids:
        raise ParseError(f"{path}: no stations listed")
    return StationLayout(np.array(coords), station_ids=tuple(ids))


def write_station_csv(layout: StationLayout, path: str | Path) -> None:
    ids = layout.station_ids or tuple(f"s{i + 1}" for i in range(layout.n))
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["station_id", "x", "y"])
        for sid, (x, y) in zip(ids, layout.positions):
            writer.writerow([sid, repr(float(x)), repr(float(y))])


# ── graphs and correlation matrices ──────────────────────────────────────────


def graph_to_json(graph: WeightedGraph) -> dict:
    return {
        "n": graph.n,
        "directed": graph.directed,
        "weights": graph.weights.tolist(),
    }


def graph_from_json(obj: dict) -> WeightedGraph:
    if not isinstance(obj, dict):
        raise ParseError("graph JSON must be an object")
    missing = {"n", "directed", "weights"} - set(obj)
    if missing:
        raise ParseError(f"graph JSON lacks keys: {sorted(missing)}")
    weights = np.asarray(obj["weights"], dtype=float)
    if weights.shape != (obj["n"], obj["n"]):
        raise ParseError(
            f"graph JSON declares n={obj['n']} but weights have shape {weights.shape}"
        )
    return WeightedGraph(weights, directed=bool(obj["directed"]))


def read_graph_json(path: str | Path) -> WeightedGraph:
    with open(path) as f:
        try:
            obj = json.load(f)
        except json.JSONDecodeError as err:
            raise ParseError(f"{path}: {err.msg}", line=err.lineno, column=err.colno) from None
    return graph_from_json(obj)


def write_graph_json(graph: WeightedGraph, path: str | Path) -> None:
    with open(path, "w") as f:
        json.dump(graph_to_json(graph), f, indent=1)
        f.write("\n")


def read_correlation_json(path: str | Path) -> np.ndarray:
    with open(path) as f:
        try:
            obj = json.load(f)
        except json.JSONDecodeError as err:
            raise ParseError(f"{path}: {err.msg}", line=err.lineno, column=err.colno) from None
    arr = np.asarray(obj, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ParseError(f"{path}: correlation JSON must be a square 2-D array")
    return arr


# ── entropy curves ───────────────────────────────────────────────────────────


def _record_to_row(method: str, record: ScaleRecord) -> list[str]:
    return [
        method,
        str(record.tau),
        repr(float(record.mean)),
        repr(float(record.sd)),
        str(record.n_realizations),
    ]


def write_curves_csv(curves: Sequence[EntropyCurve], path: str | Path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CURVE_CSV_HEADER)
        for curve in curves:
            for record in curve.records:
                writer.writerow(_record_to_row(curve.method, record))


def curve_to_json(curve: EntropyCurve) -> dict:
    return {
        "method": curve.method,
        "m": curve.m,
        "c": curve.c,
        "graph": curve.graph,
        "seed": curve.seed,
        "scales": [
            {
                "tau": r.tau,
                "mean": None if math.isnan(r.mean) else r.mean,
                "sd": None if math.isnan(r.sd) else r.sd,
                "n_realizations": r.n_realizations,
                "defined": r.defined,
            }
            for r in curve.records
        ],
    }


def write_curves_json(
    curves: Sequence[EntropyCurve], path: str | Path, config: dict | None = None
) -> None:
    payload: dict = {"curves": [curve_to_json(c) for c in curves]}
    if config:
        payload["config"] = config
    with open(path, "w") as f:
        json.dump(payload, f, indent=1)
        f.write("\n")


# ── reports ──────────────────────────────────────────────────────────────────


def write_timing_report(report: TimingReport, json_path: str | Path, csv_path: str | Path) -> None:
    payload = {
        "environment": report.environment,
        "seed": report.seed,
        "cells": [asdict(cell) for cell in report.cells],
    }
    with open(json_path, "w") as f:
        json.dump(payload, f, indent=1)
        f.write("\n")
    with open(csv_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(
            [
                "method", "n_samples", "p", "m", "c",
                "wall_time_s", "classical_patterns", "graph_bound_patterns", "outcome",
            ]
        )
        for cell in report.cells:
            writer.writerow(
                [
                    cell.method,
                    cell.n_samples,
                    cell.p,
                    cell.m,
                    cell.c,
                    "" if cell.wall_time_s is None else repr(cell.wall_time_s),
                    cell.classical_patterns,
                    cell.graph_bound_patterns,
                    cell.outcome,
                ]
            )


def write_ensemble_report(
    report: EnsembleReport, json_path: str | Path, csv_path: str | Path
) -> None:
    payload = {
        "label": report.label,
        "realizations": report.realizations,
        "seed": report.seed,
        "config": report.config,
        "summary": report.summary,
        "curves": [curve_to_json(c) for c in report.curves],
    }
    with open(json_path, "w") as f:
        json.dump(payload, f, indent=1)
        f.write("\n")
    write_curves_csv(report.curves, csv_path)
