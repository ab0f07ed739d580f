"""Implementations behind the CLI commands: summarize, analyze, tiles.

Reports split into a header (tool name, version, timestamp) and a data block.
Timestamps never appear outside the header, and the tiles command writes no
header at all, so repeated runs of it are byte-identical.
"""

from __future__ import annotations

import csv
import json
import math
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .analysis import (
    Selection,
    bottleneck_domain,
    easiest_domain,
    most_difficult_domain,
    preponderant_domain,
)
from .config import ProbePoint, ProjectConfig
from .core import Importance, Performance, RandomVariable
from .errors import PreftilesError, TooFewDomainsError
from .raster import (
    FLAVORS,
    RenderStyle,
    TileGrid,
    encode_png,
    encode_svg,
    flavor_tile,
    sidecar_metadata,
    value_tile,
    weight_tile,
)
from .summarize import DomainSet, summarize, weights_for_ranking_score
from .twoclass import (
    TWO_CLASS_LABELS,
    canonical_importance,
    canonical_score_value,
    two_class_satisfaction,
)


def _header() -> dict:
    return {
        "tool": "preftiles",
        "version": __version__,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _jsonable(value):
    """Plain JSON types only; non-finite floats become null."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    return value


def _write_json(path: Path, payload) -> None:
    path.write_text(
        json.dumps(_jsonable(payload), indent=2, allow_nan=False) + "\n",
        encoding="utf-8",
    )


def summarize_payload(config: ProjectConfig) -> dict:
    domains = config.domain_set()
    summary = summarize(domains)
    return {
        "domains": [
            {
                "id": entry.id,
                "weight": entry.weight,
                "confusion": entry.performance.as_dict(),
            }
            for entry in domains
        ],
        "summary": summary.as_dict(),
    }


def cmd_summarize(config: ProjectConfig, out_dir: Path) -> dict:
    """Write the weight-normalized mixture as summary.json and summary.csv."""
    out_dir.mkdir(parents=True, exist_ok=True)
    data = summarize_payload(config)
    _write_json(out_dir / "summary.json", {"header": _header(), "data": data})
    with (out_dir / "summary.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(TWO_CLASS_LABELS)
        writer.writerow([str(data["summary"][k]) for k in TWO_CLASS_LABELS])
    return data


def _run_selector(
    flavor: str, domains: DomainSet, importance: Importance, satisfaction: RandomVariable
) -> Selection:
    if flavor == "easiest":
        return easiest_domain(domains, importance, satisfaction)
    if flavor == "most_difficult":
        return most_difficult_domain(domains, importance, satisfaction)
    if flavor == "preponderant":
        return preponderant_domain(domains, importance)
    return bottleneck_domain(domains, importance, satisfaction)


def _analyze_point(
    domains: DomainSet,
    summary: Performance,
    satisfaction: RandomVariable,
    probe: ProbePoint,
) -> dict:
    """Everything about one probe point; failures are recorded, never raised."""
    importance = canonical_importance(probe.point)
    errors: dict[str, str] = {}

    scores: dict[str, float | None] = {}
    for entry in domains:
        try:
            scores[entry.id] = canonical_score_value(entry.performance, probe.point)
        except PreftilesError as exc:
            scores[entry.id] = None
            errors[f"score[{entry.id}]"] = str(exc)
    try:
        summary_score = canonical_score_value(summary, probe.point)
    except PreftilesError as exc:
        summary_score = None
        errors["score[summary]"] = str(exc)

    try:
        weights = weights_for_ranking_score(domains, importance).as_dict()
    except PreftilesError as exc:
        weights = None
        errors["weights"] = str(exc)

    selections: dict[str, dict | None] = {}
    for flavor in FLAVORS:
        try:
            sel = _run_selector(flavor, domains, importance, satisfaction)
            selections[flavor] = {
                "winner": sel.winner,
                "tie_set": list(sel.tie_set),
                "criterion": sel.criterion_values,
            }
        except PreftilesError as exc:
            selections[flavor] = None
            errors[flavor] = str(exc)

    return {
        "label": probe.label,
        "a": probe.point.a,
        "b": probe.point.b,
        "scores": scores,
        "summary_score": summary_score,
        "weights": weights,
        "selections": selections,
        "errors": errors,
    }


def analyze_payload(config: ProjectConfig) -> dict:
    domains = config.domain_set()
    summary = summarize(domains)
    satisfaction = two_class_satisfaction()
    return {
        "domains": [
            {
                "id": entry.id,
                "weight": entry.weight,
                "confusion": entry.performance.as_dict(),
            }
            for entry in domains
        ],
        "summary": summary.as_dict(),
        "points": [
            _analyze_point(domains, summary, satisfaction, probe)
            for probe in config.probe_points()
        ],
    }


def _selection_cell(selection: dict | None) -> str:
    if selection is None:
        return "error"
    if len(selection["tie_set"]) > 1:
        return "tie(" + "+".join(selection["tie_set"]) + ")"
    return selection["winner"]


def cmd_analyze(config: ProjectConfig, out_dir: Path) -> dict:
    """Write the full analysis report as analysis.json and analysis.csv."""
    out_dir.mkdir(parents=True, exist_ok=True)
    data = analyze_payload(config)
    _write_json(out_dir / "analysis.json", {"header": _header(), "data": data})
    with (out_dir / "analysis.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "a", "b", *FLAVORS])
        for point in data["points"]:
            writer.writerow(
                [
                    point["label"],
                    str(point["a"]),
                    str(point["b"]),
                    *[_selection_cell(point["selections"][f]) for f in FLAVORS],
                ]
            )
    return data


def _safe_name(text: str) -> str:
    cleaned = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in text)
    return cleaned or "tile"


def _unique_names(names: list[str]) -> list[str]:
    seen: dict[str, int] = {}
    out = []
    for name in names:
        count = seen.get(name, 0)
        seen[name] = count + 1
        out.append(name if count == 0 else f"{name}_{count + 1}")
    return out


def _grid_payload(grid: TileGrid) -> dict:
    payload = {
        "label": grid.label,
        "kind": grid.kind,
        "resolution": grid.resolution,
    }
    if grid.kind == "scalar":
        payload["values"] = [
            [None if math.isnan(v) else v for v in row]
            for row in grid.values.tolist()
        ]
    else:
        payload["domain_order"] = list(grid.domain_ids)
        payload["codes"] = grid.codes.tolist()
    return payload


def _write_grid_csv(path: Path, grid: TileGrid) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        if grid.kind == "scalar":
            for row in grid.values.tolist():
                writer.writerow(["" if math.isnan(v) else str(v) for v in row])
        else:
            for row in grid.codes.tolist():
                writer.writerow(row)


def cmd_tiles(config: ProjectConfig, out_dir: Path) -> dict:
    """Render every tile of the project and write a manifest.

    For a set of n domains that is one summary value tile, n domain value
    tiles, n weight tiles, and the four flavor tiles. A flavor that cannot be
    computed at all (bottleneck with a single domain) becomes an error entry
    in the manifest instead of aborting the run.
    """
    domains = config.domain_set()
    summary = summarize(domains)
    style = RenderStyle()
    n = config.resolution
    out_dir.mkdir(parents=True, exist_ok=True)

    jobs: list[tuple[str, str, TileGrid | None, str | None]] = [
        ("value", "summary", value_tile(summary, n, label="value:summary"), None)
    ]
    for entry in domains:
        jobs.append(
            (
                "value",
                entry.id,
                value_tile(entry.performance, n, label=f"value:{entry.id}"),
                None,
            )
        )
    for entry in domains:
        jobs.append(
            (
                "weight",
                entry.id,
                weight_tile(domains, entry.id, n, label=f"weight:{entry.id}"),
                None,
            )
        )
    for flavor in FLAVORS:
        try:
            grid = flavor_tile(domains, flavor, n, label=f"flavor:{flavor}")
        except TooFewDomainsError as exc:
            jobs.append(("flavor", flavor, None, str(exc)))
        else:
            jobs.append(("flavor", flavor, grid, None))

    names = _unique_names([_safe_name(f"{kind}_{subject}") for kind, subject, _, _ in jobs])
    tiles = []
    for (kind, subject, grid, error), name in zip(jobs, names):
        entry: dict = {"kind": kind, "subject": subject}
        if grid is None:
            entry["error"] = error
            tiles.append(entry)
            continue
        files: dict[str, str] = {}
        if "png" in config.formats:
            (out_dir / f"{name}.png").write_bytes(encode_png(grid, style))
            files["png"] = f"{name}.png"
        if "svg" in config.formats:
            (out_dir / f"{name}.svg").write_text(encode_svg(grid, style), encoding="utf-8")
            files["svg"] = f"{name}.svg"
        if "json" in config.formats:
            _write_json(out_dir / f"{name}.grid.json", _grid_payload(grid))
            files["json"] = f"{name}.grid.json"
        if "csv" in config.formats:
            _write_grid_csv(out_dir / f"{name}.grid.csv", grid)
            files["csv"] = f"{name}.grid.csv"
        _write_json(out_dir / f"{name}.meta.json", sidecar_metadata(grid, style))
        entry["label"] = grid.label
        entry["files"] = files
        entry["meta"] = f"{name}.meta.json"
        tiles.append(entry)

    manifest = {
        "resolution": n,
        "formats": list(config.formats),
        "domains": list(domains.ids),
        "tiles": tiles,
    }
    _write_json(out_dir / "manifest.json", manifest)
    return manifest
