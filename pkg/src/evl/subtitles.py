"""SRT/WebVTT parsing, time-slot segmentation, and time-to-cue lookup.

Cues use millisecond timestamps and half-open [start_ms, end_ms) intervals.
Markup is stripped at parse time; cue text is whitespace-normalized prose so
downstream annotation always sees plain sentences.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass

DEFAULT_GAP_THRESHOLD_MS = 4000

_TAG_RE = re.compile(r"<[^>]*>")
_SRT_TIMING_RE = re.compile(
    r"^(\d{2}):(\d{2}):(\d{2}),(\d{3})\s*-->\s*(\d{2}):(\d{2}):(\d{2}),(\d{3})\s*$"
)
_VTT_TIMING_RE = re.compile(
    r"^(?:(\d{1,2}):)?(\d{2}):(\d{2})\.(\d{3})\s*-->\s*"
    r"(?:(\d{1,2}):)?(\d{2}):(\d{2})\.(\d{3})(?:[ \t].*)?$"
)
_SEQUENCE_RE = re.compile(r"^\d+$")


class SubtitleError(ValueError):
    """Subtitle document error carrying the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedTimestamp(SubtitleError):
    pass


class InvertedRange(SubtitleError):
    pass


class MissingSignature(SubtitleError):
    pass


@dataclass(frozen=True)
class SubtitleCue:
    """One time-coded subtitle unit. Indices are contiguous from 0."""

    index: int
    start_ms: int
    end_ms: int
    text: str


@dataclass(frozen=True)
class SubtitleSegment:
    """A contiguous run of cues grouped by a time-gap threshold."""

    segment_index: int
    cue_indices: tuple[int, ...]
    start_ms: int
    end_ms: int
    title: str = ""


def _clean_text(raw: str) -> str:
    return " ".join(_TAG_RE.sub(" ", raw).split())


def _strip_bom(document: str) -> str:
    return document[1:] if document.startswith("﻿") else document


def _blocks(lines: list[str], start: int = 0):
    """Yield (first_line_number, block_lines) for runs of non-blank lines."""
    i = start
    n = len(lines)
    while i < n:
        while i < n and not lines[i].strip():
            i += 1
        if i >= n:
            return
        first = i
        block = []
        while i < n and lines[i].strip():
            block.append(lines[i])
            i += 1
        yield first + 1, block


def _finalize(raw_cues: list[tuple[int, int, str]]) -> list[SubtitleCue]:
    raw_cues.sort(key=lambda c: c[0])  # stable: ties keep document order
    return [
        SubtitleCue(index=i, start_ms=s, end_ms=e, text=t)
        for i, (s, e, t) in enumerate(raw_cues)
    ]


def _srt_ms(h: str, m: str, s: str, ms: str) -> int:
    return ((int(h) * 60 + int(m)) * 60 + int(s)) * 1000 + int(ms)


def parse_srt(document: str) -> list[SubtitleCue]:
    """Parse an SRT body into validated cues.

    File sequence numbers are ignored and cues are re-indexed from 0. Raises
    MalformedTimestamp or InvertedRange with the offending line number.
    """
    lines = _strip_bom(document).splitlines()
    raw: list[tuple[int, int, str]] = []
    for first_line, block in _blocks(lines):
        pos = 0
        if _SEQUENCE_RE.match(block[0].strip()) and len(block) > 1:
            pos = 1
        timing_line_no = first_line + pos
        m = _SRT_TIMING_RE.match(block[pos].strip())
        if not m:
            raise MalformedTimestamp(
                f"timing line does not match HH:MM:SS,mmm --> HH:MM:SS,mmm: {block[pos].strip()!r}",
                timing_line_no,
            )
        start = _srt_ms(*m.groups()[0:4])
        end = _srt_ms(*m.groups()[4:8])
        if start >= end:
            raise InvertedRange(f"start {start}ms >= end {end}ms", timing_line_no)
        text = _clean_text(" ".join(block[pos + 1 :]))
        if text:
            raw.append((start, end, text))
    return _finalize(raw)


def _vtt_ms(h: str | None, m: str, s: str, ms: str) -> int:
    hours = int(h) if h else 0
    return ((hours * 60 + int(m)) * 60 + int(s)) * 1000 + int(ms)


def parse_vtt(document: str) -> list[SubtitleCue]:
    """Parse a WebVTT body into validated cues (same cue contract as parse_srt).

    NOTE/STYLE/REGION blocks are skipped; cue settings after the arrow and cue
    identifier lines are ignored.
    """
    lines = _strip_bom(document).splitlines()
    if not lines or not (lines[0].strip() == "WEBVTT" or lines[0].startswith("WEBVTT ") or lines[0].startswith("WEBVTT\t")):
        raise MissingSignature("document does not begin with WEBVTT", 1)

    # Header block: the signature line plus metadata until the first blank
    # line. Stop early at a timing line so a missing separator loses no cue.
    i = 1
    while i < len(lines) and lines[i].strip() and "-->" not in lines[i]:
        i += 1

    raw: list[tuple[int, int, str]] = []
    for first_line, block in _blocks(lines, start=i):
        head = block[0].strip()
        if head.startswith(("NOTE", "STYLE", "REGION")):
            continue
        pos = 0
        if "-->" not in block[0]:
            pos = 1  # cue identifier line
        timing_line_no = first_line + pos
        if pos >= len(block) or "-->" not in block[pos]:
            raise MalformedTimestamp("expected timing line", timing_line_no)
        m = _VTT_TIMING_RE.match(block[pos].strip())
        if not m:
            raise MalformedTimestamp(
                f"timing line does not match [HH:]MM:SS.mmm --> [HH:]MM:SS.mmm: {block[pos].strip()!r}",
                timing_line_no,
            )
        g = m.groups()
        start = _vtt_ms(g[0], g[1], g[2], g[3])
        end = _vtt_ms(g[4], g[5], g[6], g[7])
        if start >= end:
            raise InvertedRange(f"start {start}ms >= end {end}ms", timing_line_no)
        text = _clean_text(" ".join(block[pos + 1 :]))
        if text:
            raw.append((start, end, text))
    return _finalize(raw)


def cue_at(cues: list[SubtitleCue], t_ms: int) -> int | None:
    """Index of the cue whose [start_ms, end_ms) contains t_ms, or None.

    With overlapping cues the earliest-starting match wins. Uses a prefix
    running-maximum of end times: the first index where it exceeds t is the
    only candidate that can be the earliest match.
    """
    if not cues:
        return None
    prefix_max_end = []
    running = 0
    for cue in cues:
        running = max(running, cue.end_ms)
        prefix_max_end.append(running)
    i = bisect.bisect_right(prefix_max_end, t_ms)
    if i < len(cues) and cues[i].start_ms <= t_ms:
        return i
    return None


def segment_cues(
    cues: list[SubtitleCue], gap_threshold_ms: int = DEFAULT_GAP_THRESHOLD_MS
) -> list[SubtitleSegment]:
    """Partition cues into time-slot segments.

    A new segment starts whenever the silence between consecutive cues
    exceeds gap_threshold_ms. Titles are left empty; a topic pass fills them.
    """
    if gap_threshold_ms <= 0:
        raise ValueError("gap_threshold_ms must be positive")
    segments: list[SubtitleSegment] = []
    run: list[SubtitleCue] = []
    for cue in cues:
        if run and (cue.start_ms - run[-1].end_ms) > gap_threshold_ms:
            segments.append(_segment_from_run(len(segments), run))
            run = []
        run.append(cue)
    if run:
        segments.append(_segment_from_run(len(segments), run))
    return segments


def _segment_from_run(segment_index: int, run: list[SubtitleCue]) -> SubtitleSegment:
    return SubtitleSegment(
        segment_index=segment_index,
        cue_indices=tuple(c.index for c in run),
        start_ms=run[0].start_ms,
        end_ms=max(c.end_ms for c in run),
    )


def format_srt_timestamp(ms: int) -> str:
    if ms < 0:
        raise ValueError("negative timestamp")
    hours, rem = divmod(ms, 3_600_000)
    if hours > 99:
        raise ValueError("timestamp exceeds 99 hours; not representable in SRT")
    minutes, rem = divmod(rem, 60_000)
    seconds, millis = divmod(rem, 1000)
    return f"{hours:02d}:{minutes:02d}:{seconds:02d},{millis:03d}"


def to_canonical_srt(cues: list[SubtitleCue]) -> str:
    """Canonical SRT rendering; parse_srt(to_canonical_srt(cues)) == cues."""
    blocks = []
    for i, cue in enumerate(cues):
        blocks.append(
            f"{i + 1}\n"
            f"{format_srt_timestamp(cue.start_ms)} --> {format_srt_timestamp(cue.end_ms)}\n"
            f"{cue.text}\n"
        )
    return "\n".join(blocks)


def cue_to_json(cue: SubtitleCue) -> dict:
    return {
        "index": cue.index,
        "start_ms": cue.start_ms,
        "end_ms": cue.end_ms,
        "text": cue.text,
    }


def segment_to_json(segment: SubtitleSegment) -> dict:
    return {
        "segment_index": segment.segment_index,
        "cue_indices": list(segment.cue_indices),
        "start_ms": segment.start_ms,
        "end_ms": segment.end_ms,
        "title": segment.title,
    }
