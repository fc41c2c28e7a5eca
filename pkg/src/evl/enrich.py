"""Multi-source knowledge enrichment with an on-disk cache.

Each entity surface is looked up against up to three knowledge sources in the
fixed order wikipedia, dbpedia, wolfram. Per-source failures degrade to an
absent record; only a total failure with a cold cache raises.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol
from urllib.parse import quote

import requests

from .errors import AllSourcesFailed, ReplayMiss
from .fixtures import FixtureStore, Interaction, Recorder, load_fixture, write_fixture
from .textutil import normalize_key

SOURCES = ("wikipedia", "dbpedia", "wolfram")
DEFAULT_TTL_SECONDS = 7 * 24 * 3600
DEFAULT_TIMEOUT = 5.0
DEFAULT_RETRIES = 2

SOURCE_KEY_ENV = {
    "wikipedia": "EVL_WIKIPEDIA_API_KEY",
    "dbpedia": "EVL_DBPEDIA_API_KEY",
    "wolfram": "EVL_WOLFRAM_API_KEY",
}


class SourceLookupError(RuntimeError):
    """One knowledge source could not be asked (network, quota, replay miss)."""


@dataclass(frozen=True)
class OntologyRecord:
    """One source's enrichment of an entity.

    A record is "non-empty" iff label or description is non-blank; that
    predicate is the unit the coverage harness counts.
    """

    entity_surface: str
    source: str
    label: str = ""
    synonyms: tuple[str, ...] = ()
    description: str = ""
    image_ref: str | None = None
    fetched_at: float = 0.0

    def is_empty(self) -> bool:
        return not (self.label.strip() or self.description.strip())


@dataclass(frozen=True)
class EnrichmentBundle:
    """At most one record per source, listed in fixed source order."""

    entity_surface: str
    records: tuple[OntologyRecord, ...]

    def record_for(self, source: str) -> OntologyRecord | None:
        for record in self.records:
            if record.source == source:
                return record
        return None


class KnowledgeClient(Protocol):
    source: str

    def lookup(self, entity_surface: str) -> OntologyRecord: ...


def _record_to_body(record: OntologyRecord) -> dict:
    return {
        "label": record.label,
        "synonyms": list(record.synonyms),
        "description": record.description,
        "image_ref": record.image_ref,
        "fetched_at": record.fetched_at,
    }


def _record_from_body(surface: str, source: str, body: dict | None) -> OntologyRecord:
    body = body or {}
    return OntologyRecord(
        entity_surface=surface,
        source=source,
        label=body.get("label", "") or "",
        synonyms=tuple(body.get("synonyms") or ()),
        description=body.get("description", "") or "",
        image_ref=body.get("image_ref"),
        fetched_at=float(body.get("fetched_at", 0.0)),
    )


class ReplayKnowledgeClient:
    """Replays recorded lookups; raises ReplayMiss for unknown requests."""

    def __init__(self, source: str, store: FixtureStore):
        self.source = source
        self._store = store

    def lookup(self, entity_surface: str) -> OntologyRecord:
        interaction = self._store.lookup(self.source, normalize_key(entity_surface))
        if interaction.status == 404:
            return OntologyRecord(entity_surface=entity_surface, source=self.source)
        if interaction.status != 200:
            raise SourceLookupError(
                f"{self.source} recorded status {interaction.status} for {entity_surface!r}"
            )
        return _record_from_body(entity_surface, self.source, interaction.response_body)


class RecordingKnowledgeClient:
    """Wraps a live client and records every lookup for later replay."""

    def __init__(self, inner: KnowledgeClient, recorder: Recorder):
        self.source = inner.source
        self._inner = inner
        self._recorder = recorder

    def lookup(self, entity_surface: str) -> OntologyRecord:
        key = normalize_key(entity_surface)
        try:
            record = self._inner.lookup(entity_surface)
        except SourceLookupError:
            self._recorder.record(Interaction(self.source, key, 502, None))
            raise
        status = 404 if record.is_empty() and not record.synonyms else 200
        self._recorder.record(Interaction(self.source, key, status, _record_to_body(record)))
        return record


def _get_with_retries(url: str, params: dict, timeout: float, retries: int) -> requests.Response:
    delay = 0.5
    for attempt in range(retries + 1):
        try:
            return requests.get(url, params=params, timeout=timeout)
        except requests.RequestException:
            if attempt == retries:
                raise
            time.sleep(delay)
            delay *= 2


class WikipediaClient:
    """REST summary lookup; label from the page title, description from the extract."""

    source = "wikipedia"
    base_url = "https://en.wikipedia.org/api/rest_v1/page/summary/"

    def __init__(self, timeout: float = DEFAULT_TIMEOUT, retries: int = DEFAULT_RETRIES):
        self._timeout = timeout
        self._retries = retries

    def lookup(self, entity_surface: str) -> OntologyRecord:
        title = quote(entity_surface.strip().replace(" ", "_"), safe="")
        try:
            resp = _get_with_retries(self.base_url + title, {}, self._timeout, self._retries)
        except requests.RequestException as exc:
            raise SourceLookupError(f"wikipedia unreachable: {exc}") from exc
        if resp.status_code == 404:
            return OntologyRecord(entity_surface=entity_surface, source=self.source)
        if resp.status_code != 200:
            raise SourceLookupError(f"wikipedia status {resp.status_code}")
        data = resp.json()
        image = (data.get("thumbnail") or {}).get("source")
        return OntologyRecord(
            entity_surface=entity_surface,
            source=self.source,
            label=data.get("title", "") or "",
            description=data.get("extract", "") or "",
            image_ref=image,
            fetched_at=time.time(),
        )


class DBpediaClient:
    """Keyword lookup against the public DBpedia Lookup API."""

    source = "dbpedia"
    base_url = "https://lookup.dbpedia.org/api/search"

    def __init__(self, timeout: float = DEFAULT_TIMEOUT, retries: int = DEFAULT_RETRIES):
        self._timeout = timeout
        self._retries = retries

    def lookup(self, entity_surface: str) -> OntologyRecord:
        params = {"query": entity_surface, "maxResults": "3", "format": "json"}
        try:
            resp = _get_with_retries(self.base_url, params, self._timeout, self._retries)
        except requests.RequestException as exc:
            raise SourceLookupError(f"dbpedia unreachable: {exc}") from exc
        if resp.status_code != 200:
            raise SourceLookupError(f"dbpedia status {resp.status_code}")
        docs = (resp.json() or {}).get("docs") or []
        if not docs:
            return OntologyRecord(entity_surface=entity_surface, source=self.source)
        top = docs[0]

        def first(field):
            value = top.get(field)
            return value[0] if isinstance(value, list) and value else (value or "")

        related = []
        for doc in docs[1:]:
            label = doc.get("label")
            if isinstance(label, list) and label:
                related.append(label[0])
        return OntologyRecord(
            entity_surface=entity_surface,
            source=self.source,
            label=first("label"),
            synonyms=tuple(related),
            description=first("comment"),
            fetched_at=time.time(),
        )


class WolframClient:
    """Short-answers lookup; requires an API key and is disabled without one."""

    source = "wolfram"
    base_url = "https://api.wolframalpha.com/v1/result"

    def __init__(self, api_key: str, timeout: float = DEFAULT_TIMEOUT, retries: int = DEFAULT_RETRIES):
        self._api_key = api_key
        self._timeout = timeout
        self._retries = retries

    def lookup(self, entity_surface: str) -> OntologyRecord:
        params = {"i": entity_surface, "appid": self._api_key}
        try:
            resp = _get_with_retries(self.base_url, params, self._timeout, self._retries)
        except requests.RequestException as exc:
            raise SourceLookupError(f"wolfram unreachable: {exc}") from exc
        if resp.status_code == 501:  # no short answer available
            return OntologyRecord(entity_surface=entity_surface, source=self.source)
        if resp.status_code != 200:
            raise SourceLookupError(f"wolfram status {resp.status_code}")
        return OntologyRecord(
            entity_surface=entity_surface,
            source=self.source,
            label=entity_surface,
            description=resp.text.strip(),
            fetched_at=time.time(),
        )


def live_clients(
    sources: tuple[str, ...] = SOURCES, env: dict | None = None
) -> dict[str, KnowledgeClient]:
    """Build live clients for the requested sources.

    Wolfram needs its API key env var and is silently disabled without it;
    the public wikipedia and dbpedia endpoints take no credential.
    """
    env = os.environ if env is None else env
    clients: dict[str, KnowledgeClient] = {}
    for source in sources:
        if source == "wikipedia":
            clients[source] = WikipediaClient()
        elif source == "dbpedia":
            clients[source] = DBpediaClient()
        elif source == "wolfram":
            key = env.get(SOURCE_KEY_ENV["wolfram"])
            if key:
                clients[source] = WolframClient(key)
        else:
            raise ValueError(f"unknown knowledge source {source!r}")
    return clients


def replay_from_fixture(path_or_store: str | Path | FixtureStore) -> dict[str, KnowledgeClient]:
    """Client set that replays a recorded fixture file."""
    store = (
        path_or_store
        if isinstance(path_or_store, FixtureStore)
        else FixtureStore.from_file(path_or_store)
    )
    return {source: ReplayKnowledgeClient(source, store) for source in SOURCES}


def record_fixture(interactions: list[Interaction], path: str | Path) -> None:
    write_fixture(path, interactions)


class EnrichmentCache:
    """Disk cache: one JSON file per (source, normalized surface), with TTL.

    Writes are atomic (temp file + rename), so concurrent writers for the
    same key settle on last-write-wins, which is safe because records for
    one key are interchangeable within the TTL.
    """

    def __init__(self, cache_dir: str | Path, ttl_seconds: float = DEFAULT_TTL_SECONDS):
        self.cache_dir = Path(cache_dir)
        self.ttl_seconds = ttl_seconds
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()

    def _path(self, source: str, surface: str) -> Path:
        return self.cache_dir / source / (quote(normalize_key(surface), safe="") + ".json")

    def get(self, source: str, surface: str) -> OntologyRecord | None:
        path = self._path(source, surface)
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            with self._lock:
                self.misses += 1
            return None
        if time.time() - payload.get("stored_at", 0) > self.ttl_seconds:
            with self._lock:
                self.misses += 1
            return None
        with self._lock:
            self.hits += 1
        return _record_from_body(payload.get("entity_surface", surface), source, payload["record"])

    def put(self, source: str, surface: str, record: OntologyRecord) -> None:
        path = self._path(source, surface)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            "entity_surface": record.entity_surface,
            "stored_at": time.time(),
            "record": _record_to_body(record),
        }
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, ensure_ascii=False)
            os.replace(tmp, path)
        except OSError:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


def enrich(
    entity_surface: str,
    sources: tuple[str, ...],
    clients: dict[str, KnowledgeClient],
    cache: EnrichmentCache | None = None,
    concurrent: bool = True,
) -> EnrichmentBundle:
    """Look the entity up against each requested source, cache first.

    Per-source failures yield an absent record; AllSourcesFailed is raised
    only when every requested source errors and nothing was cached, which
    separates "no knowledge exists" from "could not ask".
    """
    if not entity_surface.strip():
        raise ValueError("entity_surface must be non-blank")
    if not sources:
        raise ValueError("sources must be non-empty")
    for source in sources:
        if source not in SOURCES:
            raise ValueError(f"unknown knowledge source {source!r}")

    ordered = [s for s in SOURCES if s in sources]

    def fetch(source: str) -> OntologyRecord | None:
        if cache is not None:
            cached = cache.get(source, entity_surface)
            if cached is not None:
                return cached
        client = clients.get(source)
        if client is None:
            return None  # source disabled; not a failure
        record = client.lookup(entity_surface)
        if cache is not None:
            cache.put(source, entity_surface, record)
        return record

    results: dict[str, OntologyRecord | None] = {}
    failures: dict[str, Exception] = {}

    def safe_fetch(source: str):
        try:
            results[source] = fetch(source)
        except (SourceLookupError, ReplayMiss) as exc:
            results[source] = None
            failures[source] = exc

    if concurrent and len(ordered) > 1:
        with ThreadPoolExecutor(max_workers=len(ordered)) as pool:
            list(pool.map(safe_fetch, ordered))
    else:
        for source in ordered:
            safe_fetch(source)

    records = tuple(results[s] for s in ordered if results[s] is not None)
    if not records and failures and len(failures) == len(ordered):
        detail = "; ".join(f"{s}: {e}" for s, e in sorted(failures.items()))
        raise AllSourcesFailed(f"every source failed for {entity_surface!r} ({detail})")
    return EnrichmentBundle(entity_surface=entity_surface, records=records)


def merge_related(bundle: EnrichmentBundle, limit: int = 6) -> list[str]:
    """Deduplicated union of synonyms across sources, in source order.

    Case-insensitive dedup; never contains the entity surface itself;
    truncated to limit.
    """
    if limit <= 0:
        raise ValueError("limit must be positive")
    surface_key = normalize_key(bundle.entity_surface)
    seen: set[str] = set()
    merged: list[str] = []
    for source in SOURCES:
        record = bundle.record_for(source)
        if record is None:
            continue
        for synonym in record.synonyms:
            key = normalize_key(synonym)
            if not key or key == surface_key or key in seen:
                continue
            seen.add(key)
            merged.append(synonym)
            if len(merged) >= limit:
                return merged
    return merged
