"""Named-entity extraction behind a pluggable annotator interface.

Two backends ship: a client for a remote pre-trained NER model, and a
deterministic offline gazetteer annotator used for tests and air-gapped runs.
The module-level annotate() enforces the output contract (sorted, verbatim
spans, non-overlapping, confidence-filtered) regardless of backend.
"""

from __future__ import annotations

import json
import os
import re
import threading
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Protocol

import requests

from .errors import AnnotatorUnavailable, QuotaExceeded
from .subtitles import SubtitleCue

CATEGORIES = ("person", "place", "organization", "event", "time", "product", "other")
DEFAULT_MIN_CONFIDENCE = 0.5


@dataclass(frozen=True)
class EntityAnnotation:
    """A recognized entity: verbatim surface, character span, category label."""

    surface: str
    start: int
    end: int
    category: str
    confidence: float
    cue_index: int = 0


@dataclass(frozen=True)
class GazetteerEntry:
    surface_forms: tuple[str, ...]
    category: str
    canonical: str

    def __post_init__(self):
        if not self.surface_forms:
            raise ValueError("surface_forms must be non-empty")
        if not self.canonical:
            raise ValueError("canonical must be non-empty")


class Annotator(Protocol):
    def annotate(self, text: str) -> list[EntityAnnotation]: ...


def load_gazetteer(path: str | Path) -> list[GazetteerEntry]:
    """Gazetteer file: JSON list of {surface_forms, category, canonical}."""
    entries = json.loads(Path(path).read_text(encoding="utf-8"))
    return [
        GazetteerEntry(
            surface_forms=tuple(e["surface_forms"]),
            category=e.get("category", "other"),
            canonical=e["canonical"],
        )
        for e in entries
    ]


class GazetteerAnnotator:
    """Deterministic dictionary matcher.

    Case-insensitive, word-boundary matching; overlap conflicts resolve
    leftmost-then-longest, so "New York" beats "York". A pure function of
    (text, gazetteer): identical outputs on repeated calls.
    """

    def __init__(self, entries: list[GazetteerEntry]):
        self._by_surface: dict[str, tuple[str, str]] = {}
        for entry in entries:
            for surface in entry.surface_forms:
                key = surface.casefold()
                # first entry wins for a duplicated surface form
                self._by_surface.setdefault(key, (entry.category, entry.canonical))
        if self._by_surface:
            alternatives = sorted(self._by_surface, key=lambda s: (-len(s), s))
            joined = "|".join(re.escape(s) for s in alternatives)
            self._pattern = re.compile(rf"(?<!\w)(?:{joined})(?!\w)", re.IGNORECASE)
        else:
            self._pattern = None

    def annotate(self, text: str) -> list[EntityAnnotation]:
        if not self._pattern or not text:
            return []
        out = []
        for m in self._pattern.finditer(text):
            category, _canonical = self._by_surface[m.group(0).casefold()]
            out.append(
                EntityAnnotation(
                    surface=m.group(0),
                    start=m.start(),
                    end=m.end(),
                    category=category,
                    confidence=1.0,
                )
            )
        return out


def _default_transport(endpoint: str, text: str, api_key: str | None, timeout: float):
    headers = {"Content-Type": "text/plain"}
    if api_key:
        headers["X-Api-Key"] = api_key
    resp = requests.post(endpoint, data=text.encode("utf-8"), headers=headers, timeout=timeout)
    return resp.status_code, resp.text


class RemoteAnnotator:
    """Client for a remote pre-trained NER model.

    Expects a JSON response {"entities": [{surface, start, end, category,
    confidence}]}. Concurrent calls are capped by an in-flight semaphore; the
    transport is injectable for tests and recording.
    """

    def __init__(
        self,
        endpoint: str,
        api_key: str | None = None,
        api_key_env: str = "EVL_NER_API_KEY",
        timeout: float = 5.0,
        max_in_flight: int = 4,
        transport: Callable[[str, str, str | None, float], tuple[int, str]] | None = None,
    ):
        self.endpoint = endpoint
        self._api_key = api_key if api_key is not None else os.environ.get(api_key_env)
        self._timeout = timeout
        self._sem = threading.Semaphore(max_in_flight)
        self._transport = transport or _default_transport

    def annotate(self, text: str) -> list[EntityAnnotation]:
        if not text:
            return []
        with self._sem:
            try:
                status, body = self._transport(self.endpoint, text, self._api_key, self._timeout)
            except requests.RequestException as exc:
                raise AnnotatorUnavailable(f"annotator request failed: {exc}") from exc
        if status == 429:
            raise QuotaExceeded("annotator rejected request on rate")
        if status != 200:
            raise AnnotatorUnavailable(f"annotator returned status {status}")
        try:
            payload = json.loads(body)
            raw = payload["entities"]
        except (ValueError, KeyError, TypeError) as exc:
            raise AnnotatorUnavailable(f"unparseable annotator response: {exc}") from exc
        out = []
        for e in raw:
            category = e.get("category", "other")
            out.append(
                EntityAnnotation(
                    surface=e.get("surface", ""),
                    start=int(e.get("start", -1)),
                    end=int(e.get("end", -1)),
                    category=category if category in CATEGORIES else "other",
                    confidence=float(e.get("confidence", 0.0)),
                )
            )
        return out


def _resolve_overlaps(hits: list[EntityAnnotation]) -> list[EntityAnnotation]:
    # Leftmost first; for equal starts the longest match wins.
    ordered = sorted(hits, key=lambda a: (a.start, -(a.end - a.start)))
    out: list[EntityAnnotation] = []
    last_end = -1
    for hit in ordered:
        if hit.start >= last_end:
            out.append(hit)
            last_end = hit.end
    return out


def annotate(
    text: str,
    annotator: Annotator,
    min_confidence: float = DEFAULT_MIN_CONFIDENCE,
) -> list[EntityAnnotation]:
    """Extract entities from plain prose, enforcing the output contract.

    Annotations come back sorted by span start, non-overlapping, with
    confidence clamped to [0, 1] and low-confidence hits dropped. Spans that
    are not verbatim slices of the input are discarded.
    """
    if not text:
        return []
    candidates = []
    for hit in annotator.annotate(text):
        if not (0 <= hit.start < hit.end <= len(text)):
            continue
        if text[hit.start : hit.end] != hit.surface:
            continue
        confidence = min(1.0, max(0.0, hit.confidence))
        if confidence < min_confidence:
            continue
        candidates.append(replace(hit, confidence=confidence))
    return _resolve_overlaps(candidates)


def annotate_cues(
    cues: list[SubtitleCue],
    annotator: Annotator,
    min_confidence: float = DEFAULT_MIN_CONFIDENCE,
) -> list[EntityAnnotation]:
    """Union of per-cue annotations, each tagged with its owning cue index."""
    out: list[EntityAnnotation] = []
    for cue in cues:
        try:
            hits = annotate(cue.text, annotator, min_confidence)
        except (AnnotatorUnavailable, QuotaExceeded) as exc:
            exc.cue_index = cue.index
            exc.args = (f"{exc.args[0]} (cue {cue.index})",) if exc.args else (f"cue {cue.index}",)
            raise
        out.extend(replace(hit, cue_index=cue.index) for hit in hits)
    return out
