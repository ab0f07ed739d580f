"""Project configuration: a small JSON document naming domains and outputs."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import ConfigParseError, ConfigValidationError
from .raster import DEFAULT_RESOLUTION, _checked_resolution
from .summarize import DomainEntry, DomainSet
from .twoclass import (
    ConfusionInput,
    TilePoint,
    named_score_points,
    performance_from_confusion,
)

VALID_FORMATS = ("png", "svg", "json", "csv")
DEFAULT_FORMATS = ("png", "svg", "json")

CONFUSION_KEYS = ("tn", "fp", "fn", "tp")


@dataclass(frozen=True)
class ProbePoint:
    """A preference point to analyze, with a human-readable label."""

    label: str
    point: TilePoint


@dataclass(frozen=True)
class DomainSpec:
    id: str
    weight: float
    confusion: ConfusionInput


@dataclass(frozen=True)
class ProjectConfig:
    domains: tuple[DomainSpec, ...]
    resolution: int = DEFAULT_RESOLUTION
    directory: str | None = None
    formats: tuple[str, ...] = DEFAULT_FORMATS
    points: tuple[ProbePoint, ...] | None = None

    def domain_set(self) -> DomainSet:
        return DomainSet(
            tuple(
                DomainEntry(d.id, d.weight, performance_from_confusion(d.confusion))
                for d in self.domains
            )
        )

    def probe_points(self) -> tuple[ProbePoint, ...]:
        """Configured probes, or the classical score points when none are given."""
        if self.points is not None:
            return self.points
        return tuple(
            ProbePoint(name, point) for name, point in named_score_points().items()
        )

    def with_overrides(
        self,
        directory: str | None = None,
        resolution: int | None = None,
        formats: tuple[str, ...] | None = None,
        points: tuple[ProbePoint, ...] | None = None,
    ) -> ProjectConfig:
        cfg = self
        if directory is not None:
            cfg = replace(cfg, directory=directory)
        if resolution is not None:
            cfg = replace(cfg, resolution=_validated_resolution(resolution, "--resolution"))
        if formats is not None:
            cfg = replace(cfg, formats=_validated_formats(formats, "--formats"))
        if points is not None:
            cfg = replace(cfg, points=points)
        return cfg


def _fail(field: str, problem: str):
    raise ConfigValidationError(f"{field}: {problem}")


def _number(raw, field: str) -> float:
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        _fail(field, f"expected a number, got {raw!r}")
    return float(raw)


def _validated_resolution(raw, field: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        _fail(field, f"expected an integer, got {raw!r}")
    try:
        return _checked_resolution(raw)
    except Exception as exc:
        _fail(field, str(exc))


def _validated_formats(raw, field: str) -> tuple[str, ...]:
    if not isinstance(raw, (list, tuple)) or not raw:
        _fail(field, "expected a non-empty list of formats")
    out = []
    for k, item in enumerate(raw):
        if not isinstance(item, str) or item not in VALID_FORMATS:
            _fail(f"{field}[{k}]", f"expected one of {list(VALID_FORMATS)}, got {item!r}")
        if item not in out:
            out.append(item)
    return tuple(out)


def parse_point(raw, field: str) -> ProbePoint:
    """A probe is either a classical score name or an [a, b] pair."""
    named = named_score_points()
    if isinstance(raw, str):
        if raw not in named:
            _fail(field, f"unknown score name {raw!r}, pick one of {sorted(named)}")
        return ProbePoint(raw, named[raw])
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        a = _number(raw[0], f"{field}[0]")
        b = _number(raw[1], f"{field}[1]")
        try:
            point = TilePoint(a, b)
        except ValueError as exc:
            _fail(field, str(exc))
        return ProbePoint(f"({a:g}, {b:g})", point)
    _fail(field, f"expected a score name or an [a, b] pair, got {raw!r}")


def _parse_domain(raw, field: str) -> DomainSpec:
    if not isinstance(raw, dict):
        _fail(field, f"expected an object, got {raw!r}")
    unknown = set(raw) - {"id", "lambda", "confusion"}
    if unknown:
        _fail(field, f"unknown keys {sorted(unknown)}")
    domain_id = raw.get("id")
    if not isinstance(domain_id, str) or not domain_id:
        _fail(f"{field}.id", "expected a non-empty string")
    weight = _number(raw.get("lambda", 1.0), f"{field}.lambda")
    if weight < 0:
        _fail(f"{field}.lambda", f"must be >= 0, got {weight!r}")
    confusion = raw.get("confusion")
    if not isinstance(confusion, dict):
        _fail(f"{field}.confusion", "expected an object with tn, fp, fn, tp")
    missing = [k for k in CONFUSION_KEYS if k not in confusion]
    if missing:
        _fail(f"{field}.confusion", f"missing keys {missing}")
    extra = set(confusion) - set(CONFUSION_KEYS)
    if extra:
        _fail(f"{field}.confusion", f"unknown keys {sorted(extra)}")
    cells = {k: _number(confusion[k], f"{field}.confusion.{k}") for k in CONFUSION_KEYS}
    for k, v in cells.items():
        if v < 0:
            _fail(f"{field}.confusion.{k}", f"must be >= 0, got {v!r}")
    if sum(cells.values()) <= 0:
        _fail(f"{field}.confusion", "entries are all zero")
    return DomainSpec(domain_id, weight, ConfusionInput(**cells))


def parse_config(text: str) -> ProjectConfig:
    """Parse and validate a configuration document.

    Syntax problems raise ConfigParseError (with line and column); documents
    that parse but break an invariant raise ConfigValidationError naming the
    offending field.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        _fail("<root>", "expected a JSON object")
    unknown = set(doc) - {"domains", "grid", "outputs", "points"}
    if unknown:
        _fail("<root>", f"unknown keys {sorted(unknown)}")

    raw_domains = doc.get("domains")
    if not isinstance(raw_domains, list) or not raw_domains:
        _fail("domains", "expected a non-empty list")
    domains = tuple(
        _parse_domain(raw, f"domains[{k}]") for k, raw in enumerate(raw_domains)
    )
    ids = [d.id for d in domains]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        _fail("domains", f"duplicate ids {dupes}")
    if sum(d.weight for d in domains) <= 0:
        _fail("domains", "weights sum to zero")

    resolution = DEFAULT_RESOLUTION
    grid = doc.get("grid", {})
    if not isinstance(grid, dict):
        _fail("grid", "expected an object")
    if set(grid) - {"resolution"}:
        _fail("grid", f"unknown keys {sorted(set(grid) - {'resolution'})}")
    if "resolution" in grid:
        resolution = _validated_resolution(grid["resolution"], "grid.resolution")

    directory = None
    formats = DEFAULT_FORMATS
    outputs = doc.get("outputs", {})
    if not isinstance(outputs, dict):
        _fail("outputs", "expected an object")
    if set(outputs) - {"directory", "formats"}:
        _fail("outputs", f"unknown keys {sorted(set(outputs) - {'directory', 'formats'})}")
    if "directory" in outputs:
        directory = outputs["directory"]
        if not isinstance(directory, str) or not directory:
            _fail("outputs.directory", "expected a non-empty string")
    if "formats" in outputs:
        formats = _validated_formats(outputs["formats"], "outputs.formats")

    points = None
    if "points" in doc:
        raw_points = doc["points"]
        if not isinstance(raw_points, list) or not raw_points:
            _fail("points", "expected a non-empty list")
        points = tuple(
            parse_point(raw, f"points[{k}]") for k, raw in enumerate(raw_points)
        )

    return ProjectConfig(
        domains=domains,
        resolution=resolution,
        directory=directory,
        formats=formats,
        points=points,
    )


def load_config(path: str | Path) -> ProjectConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))
