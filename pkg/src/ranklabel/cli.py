"""Command-line interface.

Exit codes: 0 on success, 2 on usage errors (argparse), 1 on data or
validation errors, which are reported to stderr as one machine-parsable
line ``<code>: <message>``. Machine output goes only to --out or stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .dataset import column_descriptor, load_csv
from .errors import RankLabelError
from .fairness import FairnessConfig
from .html import render_html
from .label import build_label, render_json
from .scoring import ScoringSpec, build_ranking


def _parse_weights(text: str) -> dict[str, float]:
    weights: dict[str, float] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or not name:
            raise argparse.ArgumentTypeError(
                f"weight {part!r} is not of the form attribute=value"
            )
        try:
            weights[name] = float(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"weight value {value!r} is not a number")
    if not weights:
        raise argparse.ArgumentTypeError("no weights given")
    return weights


def _parse_attr_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ranklabel",
        description="Rank a CSV with a linear scoring function and emit a nutritional label.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    label = sub.add_parser("label", help="build a ranking and write its label")
    label.add_argument("--input", required=True, help="CSV file to rank")
    label.add_argument(
        "--weights",
        required=True,
        type=_parse_weights,
        help="comma-separated attribute=weight pairs, e.g. PubCount=1.0,GRE=0.3",
    )
    label.add_argument(
        "--normalize",
        choices=["none", "minmax", "zscore"],
        default="none",
        help="attribute normalization applied before scoring",
    )
    label.add_argument("--sensitive", required=True, help="binary categorical attribute")
    label.add_argument(
        "--diversity",
        type=_parse_attr_list,
        default=[],
        help="extra categorical attributes for the diversity widget",
    )
    label.add_argument("--k", type=int, default=10, help="top-k focus size")
    label.add_argument("--alpha", type=float, default=0.05, help="significance level")
    label.add_argument(
        "--p", type=float, default=None, help="override the protected proportion"
    )
    label.add_argument("--format", choices=["json", "html"], default="json")
    label.add_argument("--out", default=None, help="output path (default: stdout)")

    stats = sub.add_parser("stats", help="print schema and per-attribute statistics")
    stats.add_argument("--input", required=True, help="CSV file to inspect")
    stats.add_argument("--attr", default=None, help="restrict output to one attribute")

    serve = sub.add_parser("serve", help="run the HTTP service until interrupted")
    serve.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("RANKLABEL_PORT", "8000")),
        help="listen port (env RANKLABEL_PORT)",
    )
    serve.add_argument(
        "--data-dir",
        default=os.environ.get("RANKLABEL_DATA_DIR", "ranklabel_data"),
        help="session store directory (env RANKLABEL_DATA_DIR)",
    )
    serve.add_argument(
        "--ui-dir",
        default=os.environ.get("RANKLABEL_UI_DIR"),
        help="static UI assets to serve at / (env RANKLABEL_UI_DIR)",
    )
    return parser


def _write_output(data: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(out).write_bytes(data)


def _cmd_label(args: argparse.Namespace) -> int:
    data = Path(args.input).read_bytes()
    dataset = load_csv(data)
    spec = ScoringSpec(args.weights, args.normalize)
    annotated, ranking = build_ranking(dataset, spec, args.k, require=[args.sensitive])
    config = FairnessConfig(alpha=args.alpha, p=args.p, k=ranking.k)
    label = build_label(annotated, ranking, args.sensitive, args.diversity, config)
    rendered = render_json(label) if args.format == "json" else render_html(label)
    _write_output(rendered, args.out)
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    dataset = load_csv(Path(args.input).read_bytes())
    names = dataset.column_names
    if args.attr is not None:
        dataset.column(args.attr)
        names = [args.attr]
    doc = {
        "source_digest": dataset.source_digest,
        "row_count": dataset.row_count,
        "columns": [column_descriptor(dataset, n) for n in names],
    }
    _write_output((json.dumps(doc, indent=2) + "\n").encode("utf-8"), None)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import http_service  # deferred: pulls in the web stack

    http_service(port=args.port, data_dir=args.data_dir, ui_dir=args.ui_dir)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "label":
            return _cmd_label(args)
        if args.command == "stats":
            return _cmd_stats(args)
        return _cmd_serve(args)
    except RankLabelError as e:
        print(f"{e.code}: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"io_error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
