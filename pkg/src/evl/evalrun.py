"""Coverage harness: per-keyword-group source percentages, emitted as CSV.

For each keyword the top caption-bearing search result is fetched, its
subtitle annotated, and every distinct entity enriched; each non-empty
knowledge record counts one result for its source. A group's report is the
percentage split of those counts across wikipedia, dbpedia, and wolfram.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EvlError
from .enrich import SOURCES
from .subtitles import SubtitleError
from .service.config import load_config
from .service.engine import Engine

CSV_HEADER = (
    "group",
    "wikipedia_pct",
    "dbpedia_pct",
    "wolfram_pct",
    "wikipedia_n",
    "dbpedia_n",
    "wolfram_n",
    "errors",
)


@dataclass(frozen=True)
class KeywordGroup:
    group_name: str
    keywords: tuple[str, ...]

    def __post_init__(self):
        if not self.keywords:
            raise ValueError(f"group {self.group_name!r} has no keywords")


@dataclass
class CoverageReport:
    group_name: str
    counts: dict[str, int]
    errors: list[str] = field(default_factory=list)
    warning: bool = False

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def percentages(self) -> dict[str, float]:
        total = self.total
        if total == 0:
            return {source: 0.0 for source in SOURCES}
        return {source: 100.0 * self.counts[source] / total for source in SOURCES}


def load_groups(path: str | Path) -> list[KeywordGroup]:
    """Groups file: JSON list of {"group_name", "keywords": [...]}."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    groups = [
        KeywordGroup(group_name=g["group_name"], keywords=tuple(g["keywords"]))
        for g in data
    ]
    names = [g.group_name for g in groups]
    if len(set(names)) != len(names):
        raise ValueError("group names must be unique within a run")
    return groups


def keyword_coverage(engine: Engine, keyword: str) -> dict[str, int]:
    """Non-empty record counts per source for one keyword's top video."""
    counts = {source: 0 for source in SOURCES}
    top = engine.top_video(keyword)
    if top is None:
        return counts
    cues = engine.video_cues(top.video_id)
    annotations = engine.annotate_video(cues)
    seen: set[str] = set()
    for ann in annotations:
        if ann.surface in seen:
            continue
        seen.add(ann.surface)
        bundle = engine.enrich_surface(ann.surface)
        for record in bundle.records:
            if not record.is_empty():
                counts[record.source] += 1
    return counts


def run_coverage(
    groups: list[KeywordGroup], engine: Engine, max_workers: int = 4
) -> list[CoverageReport]:
    """One report per group, assembled in keyword order regardless of timing."""
    reports = []
    for group in groups:
        counts = {source: 0 for source in SOURCES}
        errors: list[str] = []

        def one(keyword: str):
            try:
                return keyword_coverage(engine, keyword), None
            except (EvlError, SubtitleError, ValueError) as exc:
                return None, f"{keyword}: {type(exc).__name__}"

        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            outcomes = list(pool.map(one, group.keywords))
        for keyword_counts, error in outcomes:
            if error is not None:
                errors.append(error)
                continue
            for source in SOURCES:
                counts[source] += keyword_counts[source]
        warning = sum(counts.values()) == 0
        reports.append(
            CoverageReport(
                group_name=group.group_name, counts=counts, errors=errors, warning=warning
            )
        )
    return reports


def emit_csv(reports: list[CoverageReport]) -> str:
    """Two-decimal percentages, fixed column order, rows in input order.

    The errors column carries per-keyword failures and the no-results flag;
    it is empty on clean rows.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for report in reports:
        pct = report.percentages
        notes = list(report.errors)
        if report.warning:
            notes.append("warning: no results")
        writer.writerow(
            [
                report.group_name,
                f"{pct['wikipedia']:.2f}",
                f"{pct['dbpedia']:.2f}",
                f"{pct['wolfram']:.2f}",
                report.counts["wikipedia"],
                report.counts["dbpedia"],
                report.counts["wolfram"],
                "; ".join(notes),
            ]
        )
    return buffer.getvalue()


def solve_counts(
    percentages: tuple[float, float, float],
    max_total: int = 40,
    tolerance: float = 0.05,
) -> tuple[tuple[int, int, int], int] | None:
    """Smallest integer counts whose percentage split reproduces a row.

    Brute-force over totals 1..max_total: per cell, enumerate every count
    landing within the tolerance, then keep the first triple summing to the
    total. Returns (counts, total) or None when no denominator fits.
    """
    for total in range(1, max_total + 1):
        windows = []
        for p in percentages:
            low = max(0, math.ceil((p - tolerance) * total / 100.0 - 1e-9))
            high = math.floor((p + tolerance) * total / 100.0 + 1e-9)
            windows.append(range(low, high + 1))
        for a in windows[0]:
            for b in windows[1]:
                c = total - a - b
                if c in windows[2]:
                    return (a, b, c), total
    return None


def overall_split(reports: list[CoverageReport]) -> dict[str, float]:
    totals = {source: 0 for source in SOURCES}
    for report in reports:
        for source in SOURCES:
            totals[source] += report.counts[source]
    grand = sum(totals.values())
    if grand == 0:
        return {source: 0.0 for source in SOURCES}
    return {source: 100.0 * totals[source] / grand for source in SOURCES}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evl-eval",
        description="Run keyword groups through the enrichment pipeline and report per-group source coverage",
    )
    parser.add_argument("--groups", required=True, help="JSON file of keyword groups")
    parser.add_argument("--replay", metavar="FIXTURE_DIR", help="Replay recorded fixtures (hermetic)")
    parser.add_argument("--live", action="store_true", help="Use live upstream APIs")
    parser.add_argument("--out", help="CSV output path (default: stdout)")
    parser.add_argument("--state-dir", help="Cache directory (default: a fresh temp dir)")
    parser.add_argument("--workers", type=int, default=4, help="Concurrent keywords per group")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if bool(args.replay) == bool(args.live):
        print("exactly one of --replay or --live is required", file=sys.stderr)
        return 2
    try:
        groups = load_groups(args.groups)
    except (OSError, ValueError, KeyError) as exc:
        print(f"config error: cannot load groups: {exc}", file=sys.stderr)
        return 2
    state_dir = args.state_dir or tempfile.mkdtemp(prefix="evl-eval-")
    try:
        config = load_config(
            mode="replay" if args.replay else "live",
            fixture_dir=args.replay,
            state_dir=state_dir,
        )
        engine = Engine(config)
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    reports = run_coverage(groups, engine, max_workers=args.workers)
    text = emit_csv(reports)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)

    split = overall_split(reports)
    print(
        "overall: "
        + " ".join(f"{source}={split[source]:.2f}%" for source in SOURCES)
        + f" (records={sum(r.total for r in reports)})",
        file=sys.stderr,
    )
    if any(report.errors for report in reports):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
