from __future__ import annotations

import json
import random

import pytest

from evl.errors import AuthFailure, NoCaptionTrack, QuotaExceeded, ReplayMiss
from evl.fixtures import FixtureStore, Interaction
from evl.videos import (
    ReplayVideoClient,
    SearchQuery,
    fetch_captions,
    meta_to_json,
    parse_iso_duration_ms,
    search,
    video_meta,
)


def item(video_id, has_captions=True, **overrides):
    base = {
        "video_id": video_id,
        "title": f"video {video_id}",
        "duration": "PT4M13S",
        "thumbnail_ref": f"thumb://{video_id}",
        "has_captions": has_captions,
        "description": "",
    }
    base.update(overrides)
    return base


def store_with_search(items, keyword="coronavirus"):
    return FixtureStore([Interaction("search", keyword, 200, {"items": items})])


class TestSearchQuery:
    def test_blank_keyword_rejected(self):
        with pytest.raises(ValueError):
            SearchQuery(keyword="   ").validate()

    def test_max_results_bounds(self):
        with pytest.raises(ValueError):
            SearchQuery(keyword="x", max_results=0).validate()
        with pytest.raises(ValueError):
            SearchQuery(keyword="x", max_results=51).validate()


class TestDurationParsing:
    def test_hand_checked_values(self):
        assert parse_iso_duration_ms("PT4M13S") == (4 * 60 + 13) * 1000
        assert parse_iso_duration_ms("PT1H2M3S") == ((1 * 60 + 2) * 60 + 3) * 1000
        assert parse_iso_duration_ms("PT45S") == 45_000
        assert parse_iso_duration_ms("P1DT1S") == 24 * 3600 * 1000 + 1000

    def test_garbage_is_zero(self):
        assert parse_iso_duration_ms("banana") == 0
        assert parse_iso_duration_ms("") == 0


class TestSearch:
    def test_fixture_order_preserved(self):
        client = ReplayVideoClient(
            store_with_search([item("a"), item("b"), item("c")])
        )
        metas = search(SearchQuery(keyword="coronavirus"), client)
        assert [m.video_id for m in metas] == ["a", "b", "c"]

    def test_caption_filter_default_on(self):
        client = ReplayVideoClient(
            store_with_search([item("a"), item("b", has_captions=False), item("c")])
        )
        with_filter = search(SearchQuery(keyword="coronavirus"), client)
        without = search(
            SearchQuery(keyword="coronavirus"), client, require_captions=False
        )
        assert [m.video_id for m in with_filter] == ["a", "c"]
        assert [m.video_id for m in without] == ["a", "b", "c"]

    def test_max_results_cap(self):
        client = ReplayVideoClient(
            store_with_search([item(f"v{i}") for i in range(10)])
        )
        metas = search(SearchQuery(keyword="coronavirus", max_results=3), client)
        assert len(metas) == 3

    def test_replay_determinism_byte_identical(self):
        items = [item("a"), item("b")]
        one = search(
            SearchQuery(keyword="coronavirus"), ReplayVideoClient(store_with_search(items))
        )
        two = search(
            SearchQuery(keyword="coronavirus"), ReplayVideoClient(store_with_search(items))
        )
        assert json.dumps([meta_to_json(m) for m in one]) == json.dumps(
            [meta_to_json(m) for m in two]
        )

    def test_adversarial_fields_still_satisfy_invariants(self):
        rng = random.Random(31)
        junk_values = [None, "", 0, -5, "PT4M13S", "banana", [], {}, True, 1e9]
        for _ in range(200):
            raw = {
                "video_id": rng.choice(["ok", "", None, "x1"]),
                "title": rng.choice(junk_values),
                "duration": rng.choice(junk_values),
                "thumbnail_ref": rng.choice(junk_values),
                "has_captions": rng.choice([True, False, None, "yes", 0]),
                "description": rng.choice(junk_values),
            }
            client = ReplayVideoClient(store_with_search([raw]))
            metas = search(
                SearchQuery(keyword="coronavirus"), client, require_captions=False
            )
            for m in metas:
                assert m.video_id
                assert m.duration_ms >= 0
                assert isinstance(m.title, str)
                assert isinstance(m.has_captions, bool)

    def test_recorded_auth_and_quota_failures(self):
        auth_client = ReplayVideoClient(
            FixtureStore([Interaction("search", "coronavirus", 403, None)])
        )
        with pytest.raises(AuthFailure):
            search(SearchQuery(keyword="coronavirus"), auth_client)
        quota_client = ReplayVideoClient(
            FixtureStore([Interaction("search", "coronavirus", 429, None)])
        )
        with pytest.raises(QuotaExceeded):
            search(SearchQuery(keyword="coronavirus"), quota_client)


class TestCaptions:
    def test_fixture_body_and_format(self):
        store = FixtureStore(
            [Interaction("captions", "abc", 200, {"format": "vtt", "body": "WEBVTT\n"})]
        )
        body, fmt = fetch_captions("abc", ReplayVideoClient(store))
        assert fmt == "vtt"
        assert body.startswith("WEBVTT")

    def test_unknown_id_replay_miss(self):
        with pytest.raises(ReplayMiss):
            fetch_captions("nope", ReplayVideoClient(FixtureStore([])))

    def test_no_caption_track(self):
        store = FixtureStore([Interaction("captions", "abc", 404, None)])
        with pytest.raises(NoCaptionTrack):
            fetch_captions("abc", ReplayVideoClient(store))


class TestVideoMeta:
    def test_lookup_by_id(self):
        store = FixtureStore([Interaction("video", "abc", 200, item("abc"))])
        meta = video_meta("abc", ReplayVideoClient(store))
        assert meta.video_id == "abc"
        assert meta.duration_ms == (4 * 60 + 13) * 1000

    def test_missing_video(self):
        store = FixtureStore([Interaction("video", "abc", 404, None)])
        assert video_meta("abc", ReplayVideoClient(store)) is None
