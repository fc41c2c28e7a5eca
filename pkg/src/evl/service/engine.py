"""Pipeline orchestration shared by the HTTP layer and the coverage harness.

The engine owns the clients, caches, policy, and notes store for one session
configuration. It holds no playback state: pausing and seeking are purely
client-side concerns.
"""

from __future__ import annotations

import threading
from dataclasses import replace
from pathlib import Path

from .. import annotate as annotate_mod
from ..annotate import GazetteerAnnotator, load_gazetteer
from ..cleanview import (
    CleanVideoView,
    SafetyPolicy,
    ScreeningVerdict,
    load_policy,
    project_clean,
    redact_text,
    safety_screen,
)
from ..enrich import (
    EnrichmentBundle,
    EnrichmentCache,
    enrich,
    live_clients,
    replay_from_fixture,
)
from ..errors import EvlError
from ..fixtures import FixtureStore
from ..graph import EntityGraph, build_graph
from ..subtitles import cue_at as cue_lookup
from ..subtitles import parse_srt, parse_vtt, segment_cues
from ..titles import extract_topics, relevance_check, title_segment
from ..videos import (
    LiveVideoClient,
    ReplayVideoClient,
    SearchQuery,
    VideoMeta,
    fetch_captions,
    search,
    video_meta,
)
from .config import SessionConfig
from .notes import NotesStore


class UnknownVideo(EvlError):
    pass


class UnknownSegment(EvlError):
    pass


class SafetyExcluded(EvlError):
    def __init__(self, category: str):
        super().__init__(f"excluded by safety policy (category: {category})")
        self.category = category


class _CountingCache:
    """In-memory cache with a hit counter, keyed by (key..., config fingerprint)."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()
        self.hits = 0

    def get(self, key):
        with self._lock:
            if key in self._data:
                self.hits += 1
                return self._data[key]
        return None

    def put(self, key, value):
        with self._lock:
            self._data[key] = value


class Engine:
    def __init__(self, config: SessionConfig):
        config.validate()
        self.config = config
        self._fingerprint = config.fingerprint()
        state = Path(config.state_dir)

        if config.mode == "replay":
            fixture_dir = Path(config.fixture_dir)
            self._video_client = ReplayVideoClient(
                FixtureStore.from_file(fixture_dir / "videos.json")
            )
            self._knowledge_clients = replay_from_fixture(fixture_dir / "knowledge.json")
            gazetteer_path = config.gazetteer_path or str(fixture_dir / "gazetteer.json")
            self._annotator = GazetteerAnnotator(load_gazetteer(gazetteer_path))
            self._fallback_annotator = None
            policy_path = config.safety_policy_path
            if policy_path is None:
                candidate = fixture_dir / "policy.json"
                policy_path = str(candidate) if candidate.exists() else None
        else:
            self._video_client = LiveVideoClient()
            self._knowledge_clients = live_clients(config.sources)
            gazetteer = (
                load_gazetteer(config.gazetteer_path) if config.gazetteer_path else []
            )
            if config.annotator_endpoint:
                self._annotator = annotate_mod.RemoteAnnotator(config.annotator_endpoint)
                self._fallback_annotator = GazetteerAnnotator(gazetteer) if gazetteer else None
            else:
                self._annotator = GazetteerAnnotator(gazetteer)
                self._fallback_annotator = None
            policy_path = config.safety_policy_path

        self.policy = load_policy(policy_path) if policy_path else SafetyPolicy(terms=())
        self.kb_cache = EnrichmentCache(state / "kb_cache", ttl_seconds=config.cache_ttl_seconds)
        self.notes = NotesStore(state / "notes.sqlite3")
        self.view_cache = _CountingCache()
        self.graph_cache = _CountingCache()

    # -- search ---------------------------------------------------------

    def search_videos(self, keyword: str, max_results: int | None = None) -> list[VideoMeta]:
        query = SearchQuery(
            keyword=keyword, max_results=max_results or self.config.default_max_results
        )
        return search(query, self._video_client, require_captions=self.config.require_captions)

    # -- full video view --------------------------------------------------

    def _annotate_cues(self, cues):
        try:
            return annotate_mod.annotate_cues(
                cues, self._annotator, min_confidence=self.config.min_confidence
            )
        except annotate_mod.AnnotatorUnavailable:
            if self._fallback_annotator is None:
                raise
            return annotate_mod.annotate_cues(
                cues, self._fallback_annotator, min_confidence=self.config.min_confidence
            )

    def _screened_view(self, video_id: str) -> tuple[ScreeningVerdict, float]:
        meta = video_meta(video_id, self._video_client)
        if meta is None:
            raise UnknownVideo(video_id)
        document, fmt = fetch_captions(video_id, self._video_client)
        cues = parse_vtt(document) if fmt == "vtt" else parse_srt(document)
        segments = segment_cues(cues, self.config.gap_threshold_ms)
        full_text = " ".join(c.text for c in cues)
        topics = extract_topics(full_text, top_n=self.config.top_n_topics)
        titled = []
        for segment in segments:
            segment_text = " ".join(cues[i].text for i in segment.cue_indices)
            titled.append(replace(segment, title=title_segment(segment_text)))
        relevance = relevance_check(meta.title, topics)
        view = project_clean(meta, cues, titled, topics)
        verdict = safety_screen(view, self.policy)
        return verdict, relevance

    def get_view(self, video_id: str) -> tuple[CleanVideoView, float]:
        """Screened view plus title relevance; raises SafetyExcluded on refusal."""
        key = (video_id, self._fingerprint)
        cached = self.view_cache.get(key)
        if cached is None:
            cached = self._screened_view(video_id)
            self.view_cache.put(key, cached)
        verdict, relevance = cached
        if verdict.status == "excluded":
            raise SafetyExcluded(verdict.category or "uncategorized")
        return verdict.view, relevance

    # -- per-segment graph ------------------------------------------------

    def get_graph(self, video_id: str, segment_index: int) -> EntityGraph:
        key = (video_id, segment_index, self._fingerprint)
        cached = self.graph_cache.get(key)
        if cached is not None:
            return cached
        view, _ = self.get_view(video_id)
        if not 0 <= segment_index < len(view.segments):
            raise UnknownSegment(f"{video_id} has no segment {segment_index}")
        segment = view.segments[segment_index]
        segment_cue_list = [view.cues[i] for i in segment.cue_indices]
        annotations = self._annotate_cues(segment_cue_list)
        bundles: dict[str, EnrichmentBundle] = {}
        for ann in annotations:
            if ann.surface not in bundles:
                bundles[ann.surface] = self.enrich_surface(ann.surface)
        graph = build_graph(
            segment_index, annotations, bundles, related_limit=self.config.related_limit
        )
        self.graph_cache.put(key, graph)
        return graph

    def enrich_surface(self, surface: str) -> EnrichmentBundle:
        return enrich(
            surface,
            sources=self.config.sources,
            clients=self._knowledge_clients,
            cache=self.kb_cache,
        )

    # -- cue lookup and notes ---------------------------------------------

    def cue_index_at(self, video_id: str, t_ms: int) -> int | None:
        view, _ = self.get_view(video_id)
        return cue_lookup(list(view.cues), t_ms)

    def add_note(self, video_id: str, t_ms: int, text: str) -> dict:
        if self.policy.enabled:
            text = redact_text(text, self.policy)
        return self.notes.add(video_id, t_ms, text)

    def list_notes(self, video_id: str) -> list[dict]:
        return self.notes.list(video_id)

    # -- coverage-harness hooks -------------------------------------------

    def top_video(self, keyword: str) -> VideoMeta | None:
        results = self.search_videos(keyword, max_results=1)
        return results[0] if results else None

    def video_cues(self, video_id: str):
        document, fmt = fetch_captions(video_id, self._video_client)
        return parse_vtt(document) if fmt == "vtt" else parse_srt(document)

    def annotate_video(self, cues):
        return self._annotate_cues(cues)
