from __future__ import annotations

import json
import random

import pytest
import requests

from evl.annotate import (
    EntityAnnotation,
    GazetteerAnnotator,
    GazetteerEntry,
    RemoteAnnotator,
    annotate,
    annotate_cues,
    load_gazetteer,
)
from evl.errors import AnnotatorUnavailable, QuotaExceeded
from evl.subtitles import SubtitleCue


def gaz(*pairs: tuple[str, str]) -> GazetteerAnnotator:
    return GazetteerAnnotator(
        [GazetteerEntry(surface_forms=(s,), category=c, canonical=s) for s, c in pairs]
    )


class TestGazetteer:
    def test_empty_text(self):
        assert annotate("", gaz(("Kobe Bryant", "person"))) == []

    def test_simple_hit_with_hand_counted_span(self):
        anns = annotate("Kobe Bryant played.", gaz(("Kobe Bryant", "person")))
        assert anns == [
            EntityAnnotation(
                surface="Kobe Bryant", start=0, end=11, category="person", confidence=1.0
            )
        ]

    def test_longest_match_wins(self):
        annotator = gaz(("New York", "place"), ("York", "place"))
        anns = annotate("in New York", annotator)
        assert [a.surface for a in anns] == ["New York"]

    def test_exhaustive_match_oracle_agreement(self):
        # oracle: scan every surface at every offset, keep leftmost-longest
        surfaces = {"new york": "place", "york": "place", "zoom": "product"}
        annotator = gaz(*((s, c) for s, c in surfaces.items()))
        text = "we zoom into new york from york"
        lower = text.lower()
        expected = []
        pos = 0
        while pos < len(text):
            best = None
            for surface in surfaces:
                if lower.startswith(surface, pos):
                    before_ok = pos == 0 or not lower[pos - 1].isalnum()
                    after = pos + len(surface)
                    after_ok = after >= len(lower) or not (
                        lower[after].isalnum() or lower[after] == "_"
                    )
                    if before_ok and after_ok and (best is None or len(surface) > len(best)):
                        best = surface
            if best:
                expected.append((pos, pos + len(best)))
                pos += len(best)
            else:
                pos += 1
        anns = annotate(text, annotator)
        assert [(a.start, a.end) for a in anns] == expected

    def test_case_insensitive_word_boundary(self):
        annotator = gaz(("zoom", "product"))
        assert [a.surface for a in annotate("ZOOM is used", annotator)] == ["ZOOM"]
        assert annotate("zooming along", annotator) == []

    def test_deterministic(self):
        annotator = gaz(("Coronavirus", "other"), ("Zoom", "product"))
        text = "Coronavirus closed schools so Zoom took over"
        assert annotate(text, annotator) == annotate(text, annotator)

    def test_surface_is_verbatim_slice_and_no_overlap(self):
        annotator = gaz(("alpha beta", "other"), ("beta gamma", "other"), ("beta", "other"))
        rng = random.Random(7)
        words = ["alpha", "beta", "gamma", "delta"]
        for _ in range(100):
            text = " ".join(rng.choice(words) for _ in range(12))
            anns = annotate(text, annotator)
            for a in anns:
                assert text[a.start : a.end] == a.surface
            for a, b in zip(anns, anns[1:]):
                assert a.end <= b.start

    def test_gazetteer_file_loading(self, tmp_path):
        path = tmp_path / "gaz.json"
        path.write_text(
            json.dumps(
                [{"surface_forms": ["IPL"], "category": "event", "canonical": "IPL"}]
            )
        )
        entries = load_gazetteer(path)
        assert entries[0].surface_forms == ("IPL",)
        assert annotate("IPL starts", GazetteerAnnotator(entries))[0].category == "event"


class TestAnnotateCues:
    def test_empty(self):
        assert annotate_cues([], gaz(("x y", "other"))) == []

    def test_cue_index_tagging(self):
        cues = [
            SubtitleCue(index=0, start_ms=0, end_ms=1000, text="nothing here"),
            SubtitleCue(index=1, start_ms=1000, end_ms=2000, text="Zoom call"),
        ]
        anns = annotate_cues(cues, gaz(("Zoom", "product")))
        assert [a.cue_index for a in anns] == [1]

    def test_concatenation_property(self):
        annotator = gaz(("Coronavirus", "other"), ("Zoom", "product"))
        cues = [
            SubtitleCue(index=0, start_ms=0, end_ms=1000, text="Coronavirus spreads"),
            SubtitleCue(index=1, start_ms=1000, end_ms=2000, text="classes on Zoom"),
            SubtitleCue(index=2, start_ms=2000, end_ms=3000, text="Coronavirus and Zoom"),
        ]
        combined = annotate_cues(cues, annotator)
        expected = []
        for cue in cues:
            for a in annotate(cue.text, annotator):
                expected.append(
                    EntityAnnotation(
                        surface=a.surface,
                        start=a.start,
                        end=a.end,
                        category=a.category,
                        confidence=a.confidence,
                        cue_index=cue.index,
                    )
                )
        assert combined == expected


class _StubTransport:
    def __init__(self, status=200, body="", exc=None):
        self.status = status
        self.body = body
        self.exc = exc
        self.calls = 0

    def __call__(self, endpoint, text, api_key, timeout):
        self.calls += 1
        if self.exc:
            raise self.exc
        return self.status, self.body


class TestRemoteAnnotator:
    def _payload(self, entities):
        return json.dumps({"entities": entities})

    def test_parses_and_filters_by_confidence(self):
        text = "Kobe Bryant and Zoom"
        body = self._payload(
            [
                {"surface": "Kobe Bryant", "start": 0, "end": 11, "category": "person", "confidence": 0.9},
                {"surface": "Zoom", "start": 16, "end": 20, "category": "product", "confidence": 0.2},
            ]
        )
        remote = RemoteAnnotator("http://ner.test", transport=_StubTransport(body=body))
        anns = annotate(text, remote, min_confidence=0.5)
        assert [a.surface for a in anns] == ["Kobe Bryant"]

    def test_confidence_clamped(self):
        body = self._payload(
            [{"surface": "Zoom", "start": 0, "end": 4, "category": "product", "confidence": 7.5}]
        )
        remote = RemoteAnnotator("http://ner.test", transport=_StubTransport(body=body))
        anns = annotate("Zoom", remote)
        assert anns[0].confidence == 1.0

    def test_bad_span_dropped(self):
        body = self._payload(
            [{"surface": "Zoom", "start": 2, "end": 6, "category": "product", "confidence": 1.0}]
        )
        remote = RemoteAnnotator("http://ner.test", transport=_StubTransport(body=body))
        assert annotate("Zoom here", remote) == []

    def test_unknown_category_mapped_to_other(self):
        body = self._payload(
            [{"surface": "Zoom", "start": 0, "end": 4, "category": "widget", "confidence": 1.0}]
        )
        remote = RemoteAnnotator("http://ner.test", transport=_StubTransport(body=body))
        assert annotate("Zoom", remote)[0].category == "other"

    def test_timeout_raises_unavailable(self):
        remote = RemoteAnnotator(
            "http://ner.test", transport=_StubTransport(exc=requests.ConnectTimeout("slow"))
        )
        with pytest.raises(AnnotatorUnavailable):
            remote.annotate("text")

    def test_rate_limit_raises_quota(self):
        remote = RemoteAnnotator("http://ner.test", transport=_StubTransport(status=429))
        with pytest.raises(QuotaExceeded):
            remote.annotate("text")

    def test_server_error_raises_unavailable(self):
        remote = RemoteAnnotator("http://ner.test", transport=_StubTransport(status=500))
        with pytest.raises(AnnotatorUnavailable):
            remote.annotate("text")

    def test_cue_error_tagged_with_cue_index(self):
        remote = RemoteAnnotator("http://ner.test", transport=_StubTransport(status=500))
        cues = [SubtitleCue(index=3, start_ms=0, end_ms=1000, text="words")]
        with pytest.raises(AnnotatorUnavailable) as excinfo:
            annotate_cues(cues, remote)
        assert excinfo.value.cue_index == 3
