"""Plot-ready CSV output and the JSON run manifest.

Every aggregate row carries the full grid coordinates, so any figure can
be re-plotted from the CSV alone.  Floats are serialized with 17
significant digits (lossless for doubles), newlines are fixed to \\n,
and rows follow the deterministic grid order of the harness, so equal
runs produce byte-identical files.
"""
from __future__ import annotations

import csv
import json
import os
from dataclasses import asdict
from pathlib import Path

from .harness import RunResult

__all__ = [
    "format_float",
    "write_csv",
    "write_samples_csv",
    "write_manifest",
    "write_outputs",
]

AGGREGATE_COLUMNS = [
    "dim_el",
    "dim_er",
    "tau",
    "lam",
    "rounds",
    "measure",
    "mean",
    "se",
    "m",
    "min",
    "max",
]


def format_float(x: float) -> str:
    return "%.17g" % x


def _point_fields(point) -> list[str]:
    return [
        str(point.dim_el),
        str(point.dim_er),
        format_float(point.tau),
        format_float(point.lam),
        str(point.rounds),
    ]


def write_csv(path: str | Path, result: RunResult) -> None:
    """Aggregate table: one row per (grid point, measure)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(AGGREGATE_COLUMNS)
        for agg in result.aggregates:
            writer.writerow(
                _point_fields(agg.point)
                + [
                    agg.measure,
                    format_float(agg.mean),
                    format_float(agg.se),
                    str(agg.m),
                    format_float(agg.minimum),
                    format_float(agg.maximum),
                ]
            )


def write_samples_csv(path: str | Path, result: RunResult) -> None:
    """Per-sample log: grid point, preparation digests, and every measured value."""
    value_ids = result.config.value_ids()
    header = AGGREGATE_COLUMNS[:5] + [
        "sample",
        "digest_left",
        "digest_right",
        "multi_negative_events",
        "failed",
        "graph_class",
    ] + value_ids
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for rec in result.samples:
            row = _point_fields(rec.point) + [
                str(rec.index),
                rec.digest_left,
                rec.digest_right,
                str(rec.multi_negative_events),
                "1" if rec.failed else "0",
                rec.graph_label or "",
            ]
            row += [format_float(rec.values[v]) if v in rec.values else "" for v in value_ids]
            writer.writerow(row)


def write_manifest(
    path: str | Path,
    result: RunResult,
    outputs: dict[str, str],
    workers: int,
    version: str,
) -> None:
    """JSON record of the run: config echo, seed, timings, failure counts, file paths.

    Written atomically (temp file + rename) and only after the output
    files it points at exist.
    """
    for out in outputs.values():
        if not os.path.exists(out):
            raise FileNotFoundError("manifest references missing output %r" % out)
    doc = {
        "name": result.config.name,
        "version": version,
        "seed": result.config.seed,
        "workers": workers,
        "config": asdict(result.config),
        "grid_points": len(result.config.grid_points()),
        "samples_total": len(result.samples),
        "failures": result.failures,
        "renormalizations": result.renormalizations,
        "multi_negative_total": result.multi_negative_total,
        "started": result.started,
        "finished": result.finished,
        "wall_seconds": result.wall_seconds,
        "outputs": outputs,
    }
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def write_outputs(
    result: RunResult,
    out_dir: str | Path,
    workers: int,
    version: str,
    dump_samples: bool = False,
) -> dict[str, str]:
    """Write the aggregate CSV (plus optional samples CSV), then the manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    name = result.config.name
    paths = {"aggregates": str(out / (name + ".csv"))}
    write_csv(paths["aggregates"], result)
    if dump_samples:
        paths["samples"] = str(out / (name + "_samples.csv"))
        write_samples_csv(paths["samples"], result)
    manifest = str(out / (name + "_manifest.json"))
    write_manifest(manifest, result, paths, workers, version)
    paths["manifest"] = manifest
    return paths
