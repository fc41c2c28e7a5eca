"""Whitelist projection and keyword safety screening.

CleanVideoView is blocked-by-construction: the type has no place for
comments, ratings, recommendations, channel promotion, or ad markers, so the
service cannot leak them. The safety screen is a word-boundary term filter
acting as a parental control, with exclude and redact actions.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from pathlib import Path

from .subtitles import SubtitleCue, SubtitleSegment, cue_to_json, segment_to_json
from .titles import SmartTitle
from .videos import VideoMeta

REDACTION_CHAR = "■"  # filled square


@dataclass(frozen=True)
class CleanVideoView:
    """The whitelisted projection served to learners; nothing else exists here."""

    video_id: str
    title: str
    duration_ms: int
    cues: tuple[SubtitleCue, ...]
    segments: tuple[SubtitleSegment, ...]
    smart_titles: tuple[SmartTitle, ...]


@dataclass(frozen=True)
class BlockedTerm:
    term: str
    category: str


@dataclass(frozen=True)
class SafetyPolicy:
    """Parental-control term list. The repo ships no terms; operators supply them."""

    action: str = "exclude"  # "exclude" or "redact"
    terms: tuple[BlockedTerm, ...] = ()

    def __post_init__(self):
        if self.action not in ("exclude", "redact"):
            raise ValueError(f"unknown policy action {self.action!r}")

    @property
    def enabled(self) -> bool:
        return bool(self.terms)


@dataclass(frozen=True)
class ScreeningVerdict:
    status: str  # "pass", "excluded", or "redacted"
    view: CleanVideoView | None = None
    term: str | None = None
    category: str | None = None
    cue_index: int | None = None


def load_policy(path: str | Path) -> SafetyPolicy:
    """Policy file: JSON {"action": ..., "terms": [{"term", "category"}]}."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    terms = tuple(
        BlockedTerm(term=t["term"], category=t.get("category", "uncategorized"))
        for t in data.get("terms", [])
        if t.get("term", "").strip()
    )
    return SafetyPolicy(action=data.get("action", "exclude"), terms=terms)


def project_clean(
    meta: VideoMeta,
    cues: list[SubtitleCue],
    segments: list[SubtitleSegment],
    titles: list[SmartTitle],
) -> CleanVideoView:
    """Pure projection onto the whitelist.

    The platform description is deliberately dropped: promotion, channel
    plugs, and off-site links live there.
    """
    return CleanVideoView(
        video_id=meta.video_id,
        title=meta.title,
        duration_ms=meta.duration_ms,
        cues=tuple(cues),
        segments=tuple(segments),
        smart_titles=tuple(titles),
    )


def view_to_json(view: CleanVideoView) -> dict:
    return {
        "video_id": view.video_id,
        "title": view.title,
        "duration_ms": view.duration_ms,
        "cues": [cue_to_json(c) for c in view.cues],
        "segments": [segment_to_json(s) for s in view.segments],
        "smart_titles": [
            {"term": t.term, "weight_percent": round(t.weight_percent, 4)}
            for t in view.smart_titles
        ],
    }


def _policy_pattern(policy: SafetyPolicy) -> re.Pattern:
    ordered = sorted({t.term for t in policy.terms}, key=lambda s: (-len(s), s))
    joined = "|".join(re.escape(term) for term in ordered)
    return re.compile(rf"(?<!\w)(?:{joined})(?!\w)", re.IGNORECASE)


def _category_of(policy: SafetyPolicy, matched: str) -> str:
    folded = matched.casefold()
    for term in policy.terms:
        if term.term.casefold() == folded:
            return term.category
    return "uncategorized"


def redact_text(text: str, policy: SafetyPolicy) -> str:
    """Replace each blocked word with a same-length run of block characters."""
    if not policy.enabled:
        return text
    pattern = _policy_pattern(policy)
    return pattern.sub(lambda m: REDACTION_CHAR * len(m.group(0)), text)


def safety_screen(view: CleanVideoView, policy: SafetyPolicy) -> ScreeningVerdict:
    """Screen a view against the policy.

    exclude: the first word-boundary, case-insensitive hit in the title, any
    cue, a segment title, or a smart title refuses the whole view, reporting
    term, category, and cue index. redact: every hit is masked in place; cue
    timings never change.
    """
    if not policy.enabled:
        return ScreeningVerdict(status="pass", view=view)
    pattern = _policy_pattern(policy)

    def first_hit(text: str) -> str | None:
        m = pattern.search(text)
        return m.group(0) if m else None

    if policy.action == "exclude":
        hit = first_hit(view.title)
        if hit:
            return ScreeningVerdict(
                status="excluded", term=hit, category=_category_of(policy, hit)
            )
        for cue in view.cues:
            hit = first_hit(cue.text)
            if hit:
                return ScreeningVerdict(
                    status="excluded",
                    term=hit,
                    category=_category_of(policy, hit),
                    cue_index=cue.index,
                )
        for segment in view.segments:
            hit = first_hit(segment.title)
            if hit:
                return ScreeningVerdict(
                    status="excluded", term=hit, category=_category_of(policy, hit)
                )
        for title in view.smart_titles:
            hit = first_hit(title.term)
            if hit:
                return ScreeningVerdict(
                    status="excluded", term=hit, category=_category_of(policy, hit)
                )
        return ScreeningVerdict(status="pass", view=view)

    # redact
    changed = False

    def mask(text: str) -> str:
        nonlocal changed
        masked = pattern.sub(lambda m: REDACTION_CHAR * len(m.group(0)), text)
        if masked != text:
            changed = True
        return masked

    redacted = CleanVideoView(
        video_id=view.video_id,
        title=mask(view.title),
        duration_ms=view.duration_ms,
        cues=tuple(replace(c, text=mask(c.text)) for c in view.cues),
        segments=tuple(replace(s, title=mask(s.title)) for s in view.segments),
        smart_titles=tuple(replace(t, term=mask(t.term)) for t in view.smart_titles),
    )
    if not changed:
        return ScreeningVerdict(status="pass", view=view)
    return ScreeningVerdict(status="redacted", view=redacted)
