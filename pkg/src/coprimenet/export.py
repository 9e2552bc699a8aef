"""CSV / JSON writers. Every file starts with the resolved run config."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from . import __version__

STATS_COLUMNS = ["n", "N", "E", "link_density", "avg_degree", "max_degree", "diameter", "avg_clustering"]
CLUSTERING_COLUMNS = ["label", "degree", "triangles", "cc", "asymptotic_cc"]
CYCLE_COLUMNS = ["r", "exact", "walks", "bound", "wpr_estimate"]
HISTOGRAM_COLUMNS = ["degree", "count"]
NODE_COLUMNS = ["label", "degree", "radical", "omega"]
SPECTRAL_COLUMNS = ["family", "n", "N", "E_target", "E_actual", "lambda2", "lambdaN", "ratio",
                    "solver", "iterations", "residual", "seed", "note"]
WPR_COLUMNS = ["n", "N", "deviation", "normalized", "lambda1_ratio", "r_threshold", "r_over_log_n"]


def header_lines(config: Mapping[str, Any]) -> list[str]:
    return [f"coprimenet {__version__}", "config: " + json.dumps(config, sort_keys=True, default=str)]


def _clean(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else str(value)
    if hasattr(value, "item"):
        return value.item()
    return value


def write_table(path: str | Path, columns: Sequence[str], rows: Iterable[Mapping[str, Any]],
                config: Mapping[str, Any], fmt: str = "csv") -> Path:
    """Write rows as CSV (comment-line header block) or JSON (config echo + rows)."""
    path = Path(path)
    rows = [{c: _clean(r.get(c)) for c in columns} for r in rows]
    if fmt == "json":
        path = path.with_suffix(".json")
        doc = {"version": __version__, "config": dict(config), "columns": list(columns), "rows": rows}
        path.write_text(json.dumps(doc, indent=2, sort_keys=False, default=str) + "\n")
        return path
    path = path.with_suffix(".csv")
    with open(path, "w", newline="") as fh:
        for line in header_lines(config):
            fh.write(f"# {line}\n")
        writer = csv.DictWriter(fh, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return path


def read_table(path: str | Path) -> tuple[dict, list[dict[str, str]]]:
    """Read a CSV written by :func:`write_table`; returns (config, rows)."""
    config: dict = {}
    body = []
    with open(path) as fh:
        for line in fh:
            if line.startswith("# config: "):
                config = json.loads(line[len("# config: "):])
            elif not line.startswith("#"):
                body.append(line)
    return config, list(csv.DictReader(body))
