from __future__ import annotations

import json

import pytest

from evl.cleanview import (
    BlockedTerm,
    SafetyPolicy,
    load_policy,
    project_clean,
    redact_text,
    safety_screen,
    view_to_json,
)
from evl.subtitles import SubtitleCue, SubtitleSegment
from evl.titles import SmartTitle
from evl.videos import VideoMeta

BLOCKED_KEYS = ("comments", "likes", "recommendations", "channel", "subscribe", "ads")


def meta(description="promo text with subscribe links"):
    return VideoMeta(
        video_id="vid1",
        title="Sample lesson",
        duration_ms=60_000,
        thumbnail_ref="thumb://vid1",
        has_captions=True,
        description=description,
    )


def sample_view(cue_texts=("history of narcotics trade", "peaceful farming")):
    cues = [
        SubtitleCue(index=i, start_ms=i * 1000, end_ms=i * 1000 + 900, text=t)
        for i, t in enumerate(cue_texts)
    ]
    segments = [
        SubtitleSegment(
            segment_index=0,
            cue_indices=tuple(range(len(cues))),
            start_ms=0,
            end_ms=cues[-1].end_ms,
            title="history",
        )
    ]
    titles = [SmartTitle("history", 60.0), SmartTitle("trade", 40.0)]
    return project_clean(meta(), cues, segments, titles)


def policy(action="exclude", terms=(("narcotics", "drugs"),)):
    return SafetyPolicy(
        action=action, terms=tuple(BlockedTerm(t, c) for t, c in terms)
    )


def all_keys(obj):
    keys = set()
    if isinstance(obj, dict):
        for k, v in obj.items():
            keys.add(k)
            keys |= all_keys(v)
    elif isinstance(obj, list):
        for v in obj:
            keys |= all_keys(v)
    return keys


class TestProjectClean:
    def test_exactly_six_fields(self):
        body = view_to_json(sample_view())
        assert set(body) == {
            "video_id",
            "title",
            "duration_ms",
            "cues",
            "segments",
            "smart_titles",
        }

    def test_description_dropped(self):
        body = json.dumps(view_to_json(sample_view()))
        assert "promo text" not in body
        assert "description" not in all_keys(view_to_json(sample_view()))

    def test_no_blocked_keys_anywhere(self):
        keys = all_keys(view_to_json(sample_view()))
        assert not keys & set(BLOCKED_KEYS)

    def test_pure_projection(self):
        view = sample_view()
        m = meta()
        assert view.video_id == m.video_id
        assert view.title == m.title
        assert view.duration_ms == m.duration_ms


class TestSafetyScreen:
    def test_disabled_policy_passes(self):
        verdict = safety_screen(sample_view(), SafetyPolicy(terms=()))
        assert verdict.status == "pass"
        assert verdict.view == sample_view()

    def test_exclude_reports_term_category_and_cue(self):
        verdict = safety_screen(sample_view(), policy(action="exclude"))
        assert verdict.status == "excluded"
        assert verdict.term == "narcotics"
        assert verdict.category == "drugs"
        assert verdict.cue_index == 0

    def test_word_boundary_not_substring(self):
        view = sample_view(cue_texts=("the classification of plants",))
        verdict = safety_screen(view, policy(terms=(("class", "school"),)))
        assert verdict.status == "pass"

    def test_case_insensitive(self):
        view = sample_view(cue_texts=("NARCOTICS history",))
        verdict = safety_screen(view, policy())
        assert verdict.status == "excluded"

    def test_redact_replaces_with_blocks(self):
        verdict = safety_screen(sample_view(), policy(action="redact"))
        assert verdict.status == "redacted"
        assert verdict.view.cues[0].text == "history of ■■■■■■■■■ trade"

    def test_redaction_preserves_timings(self):
        original = sample_view()
        verdict = safety_screen(original, policy(action="redact"))
        for before, after in zip(original.cues, verdict.view.cues):
            assert (before.start_ms, before.end_ms) == (after.start_ms, after.end_ms)
        for before, after in zip(original.segments, verdict.view.segments):
            assert (before.start_ms, before.end_ms) == (after.start_ms, after.end_ms)

    def test_redact_without_matches_passes(self):
        view = sample_view(cue_texts=("entirely benign words",))
        verdict = safety_screen(view, policy(action="redact"))
        assert verdict.status == "pass"

    def test_pass_implies_no_matches_by_independent_scan(self):
        import re

        pol = policy()
        view = sample_view(cue_texts=("calm waters", "gentle breeze"))
        verdict = safety_screen(view, pol)
        assert verdict.status == "pass"
        scan = re.compile(r"(?i)\bnarcotics\b")
        body = json.dumps(view_to_json(verdict.view))
        assert not scan.search(body)

    def test_redacted_view_has_no_matches(self):
        import re

        verdict = safety_screen(sample_view(), policy(action="redact"))
        body = json.dumps(view_to_json(verdict.view), ensure_ascii=False)
        assert not re.search(r"(?i)\bnarcotics\b", body)

    def test_smart_title_hit_excludes(self):
        view = sample_view(cue_texts=("benign text",))
        view = project_clean(
            meta(), list(view.cues), list(view.segments), [SmartTitle("narcotics", 100.0)]
        )
        verdict = safety_screen(view, policy())
        assert verdict.status == "excluded"
        assert verdict.cue_index is None


class TestPolicyFile:
    def test_load(self, tmp_path):
        path = tmp_path / "policy.json"
        path.write_text(
            json.dumps(
                {"action": "redact", "terms": [{"term": "x", "category": "test"}]}
            )
        )
        pol = load_policy(path)
        assert pol.action == "redact"
        assert pol.terms == (BlockedTerm("x", "test"),)
        assert pol.enabled

    def test_bad_action_rejected(self):
        with pytest.raises(ValueError):
            SafetyPolicy(action="obliterate", terms=())

    def test_redact_text_helper(self):
        pol = policy(action="redact")
        assert redact_text("no hits here", pol) == "no hits here"
        assert redact_text("narcotics", pol) == "■" * 9
