"""Tile rasters over the preference square, plus PNG and SVG encoders.

A tile samples the square at pixel centers ((i + 0.5) / N along each axis),
never at the boundary. The a coordinate increases rightward, b increases
upward, and image row 0 is the top of the picture (b closest to 1). That
convention is fixed and restated in every sidecar.

Scalar tiles hold values in [0, 1] with NaN marking undefined pixels.
Categorical tiles hold int32 codes: a domain index into ``domain_ids``,
TIE (-2), or UNDEFINED (-1).
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass

import numpy as np
from PIL import Image

from . import kernels
from .core import Performance, _check_same_space
from .errors import (
    BadResolutionError,
    PaletteTooSmallError,
    TooFewDomainsError,
    UnknownDomainError,
    ZeroTotalError,
)
from .kernels import TIE, UNDEFINED
from .summarize import DomainSet, summarize
from .twoclass import TilePoint, two_class_space

FLAVORS = ("easiest", "most_difficult", "preponderant", "bottleneck")

DEFAULT_RESOLUTION = 256

DEFAULT_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)

# Single-hue light-to-dark ramps; low values light, high values dark.
_COLORMAPS = {
    "blues": ("#f7fbff", "#08306b"),
    "greens": ("#f7fcf5", "#00441b"),
    "oranges": ("#fff5eb", "#7f2704"),
    "grays": ("#ffffff", "#0a0a0a"),
}

_HEX_RE = re.compile(r"#[0-9a-fA-F]{6}\Z")

AXIS_CONVENTION = {
    "a": "pixel centers (i + 0.5) / resolution, increasing rightward",
    "b": "pixel centers (j + 0.5) / resolution, increasing upward",
    "rows": "image row 0 is the top of the picture (b closest to 1)",
}


def _rgb(color: str) -> tuple[int, int, int]:
    if not _HEX_RE.match(color):
        raise ValueError(f"not a #rrggbb color: {color!r}")
    return tuple(int(color[i : i + 2], 16) for i in (1, 3, 5))


def _hex(rgb) -> str:
    return "#{:02x}{:02x}{:02x}".format(int(rgb[0]), int(rgb[1]), int(rgb[2]))


@dataclass(frozen=True)
class RenderStyle:
    """How a tile is turned into pixels: ramp, palette, sentinel colors, size."""

    colormap: str = "blues"
    palette: tuple[str, ...] = DEFAULT_PALETTE
    undefined_color: str = "#ffffff"
    tie_color: str = "#3d3d3d"
    image_size: int = 512

    def __post_init__(self):
        if self.colormap not in _COLORMAPS:
            raise ValueError(
                f"unknown colormap {self.colormap!r}, pick one of {sorted(_COLORMAPS)}"
            )
        palette = tuple(self.palette)
        if not palette:
            raise ValueError("palette must not be empty")
        for color in (*palette, self.undefined_color, self.tie_color):
            _rgb(color)
        lowered = [c.lower() for c in (*palette, self.undefined_color, self.tie_color)]
        if len(set(lowered)) != len(lowered):
            raise ValueError("palette, undefined, and tie colors must all be distinct")
        if int(self.image_size) < 1:
            raise ValueError("image_size must be >= 1")
        object.__setattr__(self, "palette", palette)
        object.__setattr__(self, "image_size", int(self.image_size))


DEFAULT_STYLE = RenderStyle()


@dataclass(frozen=True, eq=False)
class TileGrid:
    """An N x N raster of the preference square."""

    resolution: int
    kind: str
    values: np.ndarray | None = None
    codes: np.ndarray | None = None
    domain_ids: tuple[str, ...] = ()
    flavor: str | None = None
    label: str = ""

    def __post_init__(self):
        n = _checked_resolution(self.resolution)
        object.__setattr__(self, "resolution", n)
        if self.kind == "scalar":
            if self.values is None or self.codes is not None:
                raise ValueError("scalar grids carry values, not codes")
            vals = np.array(self.values, dtype=float)
            if vals.shape != (n, n):
                raise ValueError(f"expected shape {(n, n)}, got {vals.shape}")
            finite = vals[~np.isnan(vals)]
            if finite.size and (finite.min() < 0.0 or finite.max() > 1.0):
                raise ValueError("scalar tile values must lie in [0, 1] or be NaN")
            vals.setflags(write=False)
            object.__setattr__(self, "values", vals)
        elif self.kind == "categorical":
            if self.codes is None or self.values is not None:
                raise ValueError("categorical grids carry codes, not values")
            if not self.domain_ids:
                raise ValueError("categorical grids need the domain order")
            codes = np.array(self.codes, dtype=np.int32)
            if codes.shape != (n, n):
                raise ValueError(f"expected shape {(n, n)}, got {codes.shape}")
            if codes.min() < TIE or codes.max() >= len(self.domain_ids):
                raise ValueError("codes must be TIE, UNDEFINED, or a domain index")
            codes.setflags(write=False)
            object.__setattr__(self, "codes", codes)
            object.__setattr__(self, "domain_ids", tuple(self.domain_ids))
        else:
            raise ValueError(f"unknown grid kind {self.kind!r}")


def _checked_resolution(resolution) -> int:
    if isinstance(resolution, bool) or not isinstance(resolution, (int, np.integer)):
        raise BadResolutionError(f"resolution must be an integer, got {resolution!r}")
    if resolution < 2:
        raise BadResolutionError(f"resolution must be >= 2, got {resolution}")
    return int(resolution)


def grid_axes(resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """(a per column left to right, b per row top to bottom)."""
    n = _checked_resolution(resolution)
    a = (np.arange(n) + 0.5) / n
    b = (np.arange(n - 1, -1, -1) + 0.5) / n
    return a, b


def _flat_coords(resolution: int) -> tuple[np.ndarray, np.ndarray]:
    a, b = grid_axes(resolution)
    bb, aa = np.meshgrid(b, a, indexing="ij")
    return aa.ravel(), bb.ravel()


def grid_points(resolution: int) -> list[TilePoint]:
    """All pixel-center points in row-major order (top row first, a varying fastest)."""
    aa, bb = _flat_coords(resolution)
    return [TilePoint(x, y) for x, y in zip(aa.tolist(), bb.tolist())]


def value_tile(
    performance: Performance,
    resolution: int = DEFAULT_RESOLUTION,
    label: str = "",
) -> TileGrid:
    """Ranking-score value of one performance at every pixel."""
    _check_same_space(performance.space, two_class_space())
    aa, bb = _flat_coords(resolution)
    num, den = kernels.score_components(performance.masses, aa, bb)
    values = kernels.value_grid(num, den).reshape(resolution, resolution)
    return TileGrid(resolution, "scalar", values=values, label=label)


def weight_tile(
    domains: DomainSet,
    domain_id: str,
    resolution: int = DEFAULT_RESOLUTION,
    label: str = "",
) -> TileGrid:
    """One domain's summarization weight at every pixel."""
    _check_same_space(domains.space, two_class_space())
    if domain_id not in domains.ids:
        raise UnknownDomainError(f"no domain with id {domain_id!r}")
    index = domains.ids.index(domain_id)
    aa, bb = _flat_coords(resolution)
    dens = np.stack(
        [
            kernels.score_components(entry.performance.masses, aa, bb)[1]
            for entry in domains
        ]
    )
    values = kernels.weight_grid(domains.weights(), dens, index)
    return TileGrid(
        resolution, "scalar", values=values.reshape(resolution, resolution), label=label
    )


def flavor_tile(
    domains: DomainSet,
    flavor: str,
    resolution: int = DEFAULT_RESOLUTION,
    label: str = "",
) -> TileGrid:
    """Selected domain at every pixel for one selection flavor.

    Pixels where the selector would fail are UNDEFINED rather than an error;
    the scalar selectors themselves stay loud.
    """
    _check_same_space(domains.space, two_class_space())
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}, pick one of {FLAVORS}")
    aa, bb = _flat_coords(resolution)
    n = resolution

    if flavor == "preponderant":
        dens = np.stack(
            [
                kernels.score_components(entry.performance.masses, aa, bb)[1]
                for entry in domains
            ]
        )
        codes = kernels.preponderance_codes(domains.weights(), dens)
    elif flavor == "bottleneck":
        if len(domains) < 2:
            raise TooFewDomainsError(
                f"bottleneck needs at least 2 domains, got {len(domains)}"
            )
        try:
            ablated = [summarize(domains.without(entry.id)) for entry in domains]
        except ZeroTotalError:
            # Some ablation has no weight left; the selector fails everywhere.
            codes = np.full(aa.shape, UNDEFINED, dtype=np.int32)
        else:
            parts = [
                kernels.score_components(perf.masses, aa, bb) for perf in ablated
            ]
            nums = np.stack([p[0] for p in parts])
            dens = np.stack([p[1] for p in parts])
            codes = kernels.extremum_codes(nums, dens, True)
    else:
        parts = [
            kernels.score_components(entry.performance.masses, aa, bb)
            for entry in domains
        ]
        nums = np.stack([p[0] for p in parts])
        dens = np.stack([p[1] for p in parts])
        codes = kernels.extremum_codes(nums, dens, flavor == "easiest")

    return TileGrid(
        n,
        "categorical",
        codes=codes.reshape(n, n),
        domain_ids=domains.ids,
        flavor=flavor,
        label=label,
    )


def _scalar_cells(grid: TileGrid, style: RenderStyle) -> np.ndarray:
    lo = np.array(_rgb(_COLORMAPS[style.colormap][0]), dtype=float)
    hi = np.array(_rgb(_COLORMAPS[style.colormap][1]), dtype=float)
    vals = grid.values
    nan = np.isnan(vals)
    t = np.where(nan, 0.0, vals)
    cells = np.rint(lo + (hi - lo) * t[..., None]).astype(np.uint8)
    cells[nan] = _rgb(style.undefined_color)
    return cells


def _categorical_cells(grid: TileGrid, style: RenderStyle) -> np.ndarray:
    n = len(grid.domain_ids)
    if n > len(style.palette):
        raise PaletteTooSmallError(
            f"{n} domains but only {len(style.palette)} palette colors"
        )
    lut = np.zeros((n + 2, 3), dtype=np.uint8)
    lut[0] = _rgb(style.tie_color)
    lut[1] = _rgb(style.undefined_color)
    for k in range(n):
        lut[k + 2] = _rgb(style.palette[k])
    return lut[grid.codes + 2]


def _cells(grid: TileGrid, style: RenderStyle) -> np.ndarray:
    if grid.kind == "scalar":
        return _scalar_cells(grid, style)
    return _categorical_cells(grid, style)


def encode_png(grid: TileGrid, style: RenderStyle = DEFAULT_STYLE) -> bytes:
    """Deterministic PNG bytes; same grid and style always give the same bytes."""
    cells = _cells(grid, style)
    size = style.image_size
    idx = (np.arange(size) * grid.resolution) // size
    img = Image.fromarray(cells[np.ix_(idx, idx)], "RGB")
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def _fmt(value: float) -> str:
    text = f"{value:.2f}".rstrip("0").rstrip(".")
    return text or "0"


def encode_svg(grid: TileGrid, style: RenderStyle = DEFAULT_STYLE) -> str:
    """Deterministic SVG: one filled rect per pixel plus the two axis labels."""
    cells = _cells(grid, style)
    n = grid.resolution
    side = style.image_size
    left, bottom = 26, 22
    width, height = side + left, side + bottom
    xs = [left + i * side / n for i in range(n + 1)]
    ys = [i * side / n for i in range(n + 1)]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}"'
        f' viewBox="0 0 {width} {height}">'
    ]
    for r in range(n):
        y = _fmt(ys[r])
        h = _fmt(ys[r + 1] - ys[r])
        for c in range(n):
            parts.append(
                f'<rect x="{_fmt(xs[c])}" y="{y}" width="{_fmt(xs[c + 1] - xs[c])}"'
                f' height="{h}" fill="{_hex(cells[r, c])}"/>'
            )
    parts.append(
        f'<text x="{_fmt(left + side / 2)}" y="{height - 5}" text-anchor="middle"'
        f' font-family="sans-serif" font-size="13">a</text>'
    )
    parts.append(
        f'<text x="11" y="{_fmt(side / 2)}" text-anchor="middle"'
        f' font-family="sans-serif" font-size="13">b</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def sidecar_metadata(grid: TileGrid, style: RenderStyle = DEFAULT_STYLE) -> dict:
    """Everything needed to read the image: sampling, orientation, colors."""
    meta = {
        "label": grid.label,
        "kind": grid.kind,
        "resolution": grid.resolution,
        "axis_convention": dict(AXIS_CONVENTION),
        "image_size": style.image_size,
    }
    if grid.kind == "scalar":
        meta["render"] = {
            "colormap": style.colormap,
            "undefined_color": style.undefined_color,
        }
    else:
        meta["flavor"] = grid.flavor
        meta["domain_order"] = list(grid.domain_ids)
        meta["codes"] = {"tie": TIE, "undefined": UNDEFINED}
        meta["render"] = {
            "palette": list(style.palette[: len(grid.domain_ids)]),
            "tie_color": style.tie_color,
            "undefined_color": style.undefined_color,
        }
    return meta
