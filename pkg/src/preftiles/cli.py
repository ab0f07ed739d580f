"""Command line interface: summarize, analyze, and tiles subcommands."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .config import ProbePoint, load_config, parse_point, _validated_formats
from .errors import ConfigValidationError, PreftilesError
from .report import cmd_analyze, cmd_summarize, cmd_tiles

ENV_OUT_DIR = "PREFTILES_OUT"
FALLBACK_OUT_DIR = "preftiles-out"


def _parse_points_arg(text: str) -> tuple[ProbePoint, ...]:
    """Comma-separated probes: score names or a:b pairs, e.g. accuracy,0.9:0.25."""
    probes = []
    for k, token in enumerate(t.strip() for t in text.split(",")):
        if not token:
            continue
        field = f"--points[{k}]"
        if ":" in token:
            a_text, _, b_text = token.partition(":")
            try:
                raw = [float(a_text), float(b_text)]
            except ValueError:
                raise ConfigValidationError(
                    f"{field}: expected NAME or A:B, got {token!r}"
                ) from None
            probes.append(parse_point(raw, field))
        else:
            probes.append(parse_point(token, field))
    if not probes:
        raise ConfigValidationError("--points: no probe points given")
    return tuple(probes)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="preftiles",
        description="Summarize multi-domain two-class performance and map it over the preference square.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("summarize", "write the weight-normalized mixture of the domains"),
        ("analyze", "write scores, weights, and selections at probe points"),
        ("tiles", "render value, weight, and flavor tiles"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", required=True, help="path to the JSON config")
        cmd.add_argument("--out", help="output directory (overrides config and env)")
        cmd.add_argument("--resolution", type=int, help="grid resolution override")
        cmd.add_argument("--formats", help="comma-separated subset of png,svg,json,csv")
        cmd.add_argument("--points", help="comma-separated probes (names or a:b pairs)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        config = config.with_overrides(
            resolution=args.resolution,
            formats=_validated_formats(args.formats.split(","), "--formats")
            if args.formats
            else None,
            points=_parse_points_arg(args.points) if args.points else None,
        )
        out_dir = Path(
            args.out
            or config.directory
            or os.environ.get(ENV_OUT_DIR)
            or FALLBACK_OUT_DIR
        )
        if args.command == "summarize":
            data = cmd_summarize(config, out_dir)
            masses = " ".join(f"{k}={v:.6g}" for k, v in data["summary"].items())
            print(f"summary: {masses}")
            print(f"wrote {out_dir / 'summary.json'} and {out_dir / 'summary.csv'}")
        elif args.command == "analyze":
            data = cmd_analyze(config, out_dir)
            soft = sum(1 for point in data["points"] if point["errors"])
            note = f" ({soft} point(s) with partial results)" if soft else ""
            print(f"analyzed {len(data['points'])} point(s){note}")
            print(f"wrote {out_dir / 'analysis.json'} and {out_dir / 'analysis.csv'}")
        else:
            manifest = cmd_tiles(config, out_dir)
            rendered = sum(1 for t in manifest["tiles"] if "files" in t)
            skipped = len(manifest["tiles"]) - rendered
            note = f" ({skipped} skipped)" if skipped else ""
            print(f"rendered {rendered} tile(s){note} into {out_dir}")
    except (PreftilesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
