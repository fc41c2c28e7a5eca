from __future__ import annotations

import json

import pytest

from evl.enrich import (
    SOURCES,
    EnrichmentBundle,
    EnrichmentCache,
    OntologyRecord,
    RecordingKnowledgeClient,
    ReplayKnowledgeClient,
    SourceLookupError,
    enrich,
    merge_related,
    record_fixture,
    replay_from_fixture,
)
from evl.errors import AllSourcesFailed, ReplayMiss
from evl.fixtures import FixtureStore, Interaction, Recorder


def body(label="", synonyms=(), description="", image=None):
    return {
        "label": label,
        "synonyms": list(synonyms),
        "description": description,
        "image_ref": image,
        "fetched_at": 0.0,
    }


class _CountingClient:
    """Wraps a replay client and counts outbound lookups (cache-miss traffic)."""

    def __init__(self, inner):
        self.source = inner.source
        self._inner = inner
        self.calls = 0

    def lookup(self, surface):
        self.calls += 1
        return self._inner.lookup(surface)


def zoom_store() -> FixtureStore:
    return FixtureStore(
        [
            Interaction("wikipedia", "zoom", 200, body("Zoom", [], "a video conferencing tool")),
            Interaction("dbpedia", "zoom", 404, None),
            Interaction("wolfram", "zoom", 404, None),
        ]
    )


class TestEnrich:
    def test_blank_surface_rejected(self):
        with pytest.raises(ValueError):
            enrich("  ", SOURCES, {})

    def test_empty_sources_rejected(self):
        with pytest.raises(ValueError):
            enrich("Zoom", (), {})

    def test_single_non_empty_record(self):
        clients = replay_from_fixture(zoom_store())
        bundle = enrich("Zoom", SOURCES, clients)
        non_empty = [r for r in bundle.records if not r.is_empty()]
        assert len(non_empty) == 1
        assert non_empty[0].source == "wikipedia"
        assert non_empty[0].description == "a video conferencing tool"
        # dbpedia and wolfram answered with no knowledge: empty records present
        assert len(bundle.records) == 3

    def test_records_in_fixed_source_order(self):
        clients = replay_from_fixture(zoom_store())
        bundle = enrich("Zoom", ("wolfram", "wikipedia", "dbpedia"), clients)
        assert [r.source for r in bundle.records] == ["wikipedia", "dbpedia", "wolfram"]

    def test_cache_hit_skips_network(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "cache")
        clients = {
            s: _CountingClient(c) for s, c in replay_from_fixture(zoom_store()).items()
        }
        first = enrich("Zoom", SOURCES, clients, cache=cache)
        calls_after_first = sum(c.calls for c in clients.values())
        hits_before = cache.hits
        second = enrich("Zoom", SOURCES, clients, cache=cache)
        assert second == first
        assert sum(c.calls for c in clients.values()) == calls_after_first
        assert cache.hits == hits_before + 3

    def test_cache_key_normalizes_surface(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "cache")
        clients = {
            s: _CountingClient(c) for s, c in replay_from_fixture(zoom_store()).items()
        }
        enrich("Zoom", SOURCES, clients, cache=cache)
        calls = sum(c.calls for c in clients.values())
        enrich("  zoom ", SOURCES, clients, cache=cache)
        assert sum(c.calls for c in clients.values()) == calls

    def test_cache_layout_one_file_per_source_and_key(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "cache")
        enrich("Zoom", SOURCES, replay_from_fixture(zoom_store()), cache=cache)
        for source in SOURCES:
            files = list((tmp_path / "cache" / source).glob("*.json"))
            assert len(files) == 1

    def test_cache_ttl_expiry(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "cache", ttl_seconds=-1)
        clients = {
            s: _CountingClient(c) for s, c in replay_from_fixture(zoom_store()).items()
        }
        enrich("Zoom", SOURCES, clients, cache=cache)
        enrich("Zoom", SOURCES, clients, cache=cache)
        assert all(c.calls == 2 for c in clients.values())

    def test_source_failure_yields_absent_record(self):
        store = FixtureStore(
            [
                Interaction("wikipedia", "zoom", 200, body("Zoom", [], "desc")),
                Interaction("dbpedia", "zoom", 500, None),
                Interaction("wolfram", "zoom", 404, None),
            ]
        )
        bundle = enrich("Zoom", SOURCES, replay_from_fixture(store))
        assert bundle.record_for("dbpedia") is None
        assert bundle.record_for("wikipedia").label == "Zoom"

    def test_source_isolation(self):
        healthy = FixtureStore(
            [
                Interaction("wikipedia", "zoom", 200, body("Zoom", ["call"], "desc")),
                Interaction("dbpedia", "zoom", 200, body("Zoom", [], "other desc")),
                Interaction("wolfram", "zoom", 200, body("Zoom", [], "third")),
            ]
        )
        broken = FixtureStore(
            [
                Interaction("wikipedia", "zoom", 200, body("Zoom", ["call"], "desc")),
                Interaction("dbpedia", "zoom", 500, None),
                Interaction("wolfram", "zoom", 200, body("Zoom", [], "third")),
            ]
        )
        full = enrich("Zoom", SOURCES, replay_from_fixture(healthy))
        degraded = enrich("Zoom", SOURCES, replay_from_fixture(broken))
        assert degraded.record_for("wikipedia") == full.record_for("wikipedia")
        assert degraded.record_for("wolfram") == full.record_for("wolfram")

    def test_all_sources_failed(self):
        store = FixtureStore(
            [Interaction(s, "zoom", 500, None) for s in SOURCES]
        )
        with pytest.raises(AllSourcesFailed):
            enrich("Zoom", SOURCES, replay_from_fixture(store))

    def test_disabled_source_is_not_a_failure(self):
        clients = replay_from_fixture(zoom_store())
        del clients["wolfram"]
        bundle = enrich("Zoom", SOURCES, clients)
        assert bundle.record_for("wolfram") is None
        assert bundle.record_for("wikipedia") is not None


class TestReplay:
    def test_empty_fixture_raises_replay_miss(self):
        clients = replay_from_fixture(FixtureStore([]))
        with pytest.raises(ReplayMiss):
            clients["wikipedia"].lookup("anything")

    def test_record_then_replay_identical(self, tmp_path):
        class FakeLive:
            source = "wikipedia"

            def lookup(self, surface):
                return OntologyRecord(
                    entity_surface=surface,
                    source="wikipedia",
                    label="Coronavirus",
                    synonyms=("virus",),
                    description="a family of viruses",
                    fetched_at=1234.5,
                )

        recorder = Recorder()
        recording = RecordingKnowledgeClient(FakeLive(), recorder)
        live_record = recording.lookup("Coronavirus")
        path = tmp_path / "fixture.json"
        record_fixture(recorder.interactions, path)

        replayed = replay_from_fixture(path)["wikipedia"].lookup("Coronavirus")
        assert replayed == live_record

    def test_three_source_bundle_order(self):
        store = FixtureStore(
            [
                Interaction("wolfram", "coronavirus", 200, body("Coronavirus", [], "w")),
                Interaction("wikipedia", "coronavirus", 200, body("Coronavirus", [], "k")),
                Interaction("dbpedia", "coronavirus", 200, body("Coronavirus", [], "d")),
            ]
        )
        bundle = enrich("Coronavirus", SOURCES, replay_from_fixture(store))
        assert [r.source for r in bundle.records] == ["wikipedia", "dbpedia", "wolfram"]
        assert len(bundle.records) == 3

    def test_recorded_error_replays_as_failure(self, tmp_path):
        class FailingLive:
            source = "dbpedia"

            def lookup(self, surface):
                raise SourceLookupError("boom")

        recorder = Recorder()
        recording = RecordingKnowledgeClient(FailingLive(), recorder)
        with pytest.raises(SourceLookupError):
            recording.lookup("Zoom")
        path = tmp_path / "fixture.json"
        record_fixture(recorder.interactions, path)
        with pytest.raises(SourceLookupError):
            ReplayKnowledgeClient("dbpedia", FixtureStore.from_file(path)).lookup("Zoom")


class TestMergeRelated:
    def _bundle(self, wikipedia=(), dbpedia=(), wolfram=()):
        records = []
        for source, synonyms in (
            ("wikipedia", wikipedia),
            ("dbpedia", dbpedia),
            ("wolfram", wolfram),
        ):
            records.append(
                OntologyRecord(
                    entity_surface="Coronavirus",
                    source=source,
                    label="Coronavirus",
                    synonyms=tuple(synonyms),
                    description="d",
                )
            )
        return EnrichmentBundle(entity_surface="Coronavirus", records=tuple(records))

    def test_no_records(self):
        assert merge_related(EnrichmentBundle("x", ()), limit=5) == []

    def test_case_insensitive_union_in_source_order(self):
        bundle = self._bundle(
            wikipedia=["virus", "pathogen"], dbpedia=["Pathogen", "microbe"]
        )
        assert merge_related(bundle, limit=10) == ["virus", "pathogen", "microbe"]

    def test_truncation(self):
        bundle = self._bundle(
            wikipedia=["virus", "pathogen"], dbpedia=["Pathogen", "microbe"]
        )
        assert merge_related(bundle, limit=1) == ["virus"]

    def test_never_contains_parent_surface(self):
        bundle = self._bundle(wikipedia=["Coronavirus", "CORONAVIRUS", "virus"])
        merged = merge_related(bundle, limit=10)
        assert "virus" in merged
        assert all(m.lower() != "coronavirus" for m in merged)

    def test_limit_must_be_positive(self):
        with pytest.raises(ValueError):
            merge_related(EnrichmentBundle("x", ()), limit=0)


class TestFixtureFileFormat:
    def test_round_trip_preserves_schema(self, tmp_path):
        path = tmp_path / "f.json"
        record_fixture(
            [Interaction("wikipedia", "zoom", 200, body("Zoom", [], "d"))], path
        )
        raw = json.loads(path.read_text())
        assert set(raw[0]) == {"source", "request_key", "status", "response_body"}
