"""Keyword search and caption retrieval against the video platform.

Two clients share one interface: a live client speaking the platform's data
API (two-phase: keyword to IDs, then IDs to metadata) and a replay client fed
by recorded fixtures. Platform duration encodings are converted to
milliseconds at the client boundary so nothing downstream sees them.
"""

from __future__ import annotations

import os
import re
import threading
import time
from dataclasses import dataclass
from typing import Any, Protocol

import requests

from .errors import AuthFailure, NetworkFailure, NoCaptionTrack, QuotaExceeded
from .fixtures import FixtureStore
from .textutil import normalize_key

DEFAULT_MAX_RESULTS = 10
DEFAULT_API_KEY_ENV = "EVL_YOUTUBE_API_KEY"

_ISO_DURATION_RE = re.compile(
    r"^P(?:(?P<days>\d+)D)?(?:T(?:(?P<h>\d+)H)?(?:(?P<m>\d+)M)?(?:(?P<s>\d+)S)?)?$"
)


@dataclass(frozen=True)
class VideoMeta:
    video_id: str
    title: str
    duration_ms: int
    thumbnail_ref: str
    has_captions: bool
    description: str


@dataclass(frozen=True)
class SearchQuery:
    keyword: str
    max_results: int = DEFAULT_MAX_RESULTS
    api_key_ref: str = DEFAULT_API_KEY_ENV

    def validate(self) -> None:
        if not self.keyword.strip():
            raise ValueError("keyword must be non-blank")
        if not 1 <= self.max_results <= 50:
            raise ValueError("max_results must be in 1..50")


def parse_iso_duration_ms(value: str) -> int:
    """ISO-8601 duration (PT#H#M#S) to milliseconds; 0 for unparseable input."""
    m = _ISO_DURATION_RE.match(value.strip()) if isinstance(value, str) else None
    if not m:
        return 0
    days = int(m.group("days") or 0)
    hours = int(m.group("h") or 0)
    minutes = int(m.group("m") or 0)
    seconds = int(m.group("s") or 0)
    return (((days * 24 + hours) * 60 + minutes) * 60 + seconds) * 1000


def _item_to_meta(item: dict) -> VideoMeta | None:
    """Convert one raw platform item, coercing adversarial fields.

    Items without a usable video id are dropped; everything else is coerced
    so every returned VideoMeta satisfies its invariants.
    """
    video_id = str(item.get("video_id") or "").strip()
    if not video_id:
        return None
    duration = item.get("duration", 0)
    if isinstance(duration, str):
        duration_ms = parse_iso_duration_ms(duration)
    elif isinstance(duration, (int, float)) and duration >= 0:
        duration_ms = int(duration)
    else:
        duration_ms = 0
    return VideoMeta(
        video_id=video_id,
        title=str(item.get("title") or ""),
        duration_ms=duration_ms,
        thumbnail_ref=str(item.get("thumbnail_ref") or ""),
        has_captions=bool(item.get("has_captions", False)),
        description=str(item.get("description") or ""),
    )


class VideoClient(Protocol):
    def search_raw(self, keyword: str, max_results: int) -> list[dict]: ...

    def video_raw(self, video_id: str) -> dict | None: ...

    def captions(self, video_id: str) -> tuple[str, str]: ...


class TokenBucket:
    """Simple shared rate limiter for live API calls."""

    def __init__(self, rate_per_second: float = 5.0, capacity: int = 10):
        self._rate = rate_per_second
        self._capacity = capacity
        self._tokens = float(capacity)
        self._updated = time.monotonic()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        while True:
            with self._lock:
                now = time.monotonic()
                self._tokens = min(self._capacity, self._tokens + (now - self._updated) * self._rate)
                self._updated = now
                if self._tokens >= 1:
                    self._tokens -= 1
                    return
                wait = (1 - self._tokens) / self._rate
            time.sleep(wait)


class LiveVideoClient:
    """Data API v3 client. Needs an API key from the environment."""

    search_url = "https://www.googleapis.com/youtube/v3/search"
    videos_url = "https://www.googleapis.com/youtube/v3/videos"
    timedtext_url = "https://video.google.com/timedtext"

    def __init__(
        self,
        api_key: str | None = None,
        api_key_env: str = DEFAULT_API_KEY_ENV,
        timeout: float = 10.0,
        rate_limiter: TokenBucket | None = None,
        caption_language: str = "en",
    ):
        self._api_key = api_key if api_key is not None else os.environ.get(api_key_env)
        self._timeout = timeout
        self._bucket = rate_limiter or TokenBucket()
        self._caption_language = caption_language

    def _get(self, url: str, params: dict) -> requests.Response:
        self._bucket.acquire()
        try:
            resp = requests.get(url, params=params, timeout=self._timeout)
        except requests.RequestException as exc:
            raise NetworkFailure(f"platform request failed: {exc}") from exc
        if resp.status_code in (401, 403):
            if "quota" in resp.text.lower():
                raise QuotaExceeded("platform quota exhausted")
            raise AuthFailure(f"platform rejected credential (status {resp.status_code})")
        if resp.status_code == 429:
            raise QuotaExceeded("platform rate limit hit")
        if resp.status_code != 200:
            raise NetworkFailure(f"platform status {resp.status_code}")
        return resp

    def search_raw(self, keyword: str, max_results: int) -> list[dict]:
        if not self._api_key:
            raise AuthFailure("no platform API key configured")
        id_resp = self._get(
            self.search_url,
            {
                "key": self._api_key,
                "q": keyword,
                "part": "id",
                "type": "video",
                "maxResults": max_results,
            },
        )
        ids = [
            item["id"]["videoId"]
            for item in id_resp.json().get("items", [])
            if item.get("id", {}).get("videoId")
        ]
        if not ids:
            return []
        meta_resp = self._get(
            self.videos_url,
            {
                "key": self._api_key,
                "id": ",".join(ids),
                "part": "snippet,contentDetails",
            },
        )
        by_id = {item["id"]: item for item in meta_resp.json().get("items", [])}
        items = []
        for video_id in ids:  # keep platform relevance order
            item = by_id.get(video_id)
            if not item:
                continue
            snippet = item.get("snippet", {})
            details = item.get("contentDetails", {})
            thumbs = snippet.get("thumbnails", {})
            thumb = (thumbs.get("medium") or thumbs.get("default") or {}).get("url", "")
            items.append(
                {
                    "video_id": video_id,
                    "title": snippet.get("title", ""),
                    "duration": details.get("duration", ""),
                    "thumbnail_ref": thumb,
                    "has_captions": str(details.get("caption", "false")).lower() == "true",
                    "description": snippet.get("description", ""),
                }
            )
        return items

    def video_raw(self, video_id: str) -> dict | None:
        items = self._by_ids([video_id])
        return items[0] if items else None

    def _by_ids(self, ids: list[str]) -> list[dict]:
        resp = self._get(
            self.videos_url,
            {"key": self._api_key, "id": ",".join(ids), "part": "snippet,contentDetails"},
        )
        out = []
        for item in resp.json().get("items", []):
            snippet = item.get("snippet", {})
            details = item.get("contentDetails", {})
            thumbs = snippet.get("thumbnails", {})
            out.append(
                {
                    "video_id": item.get("id", ""),
                    "title": snippet.get("title", ""),
                    "duration": details.get("duration", ""),
                    "thumbnail_ref": (thumbs.get("medium") or thumbs.get("default") or {}).get("url", ""),
                    "has_captions": str(details.get("caption", "false")).lower() == "true",
                    "description": snippet.get("description", ""),
                }
            )
        return out

    def captions(self, video_id: str) -> tuple[str, str]:
        """Best-effort public caption track fetch; returns (document, format)."""
        self._bucket.acquire()
        try:
            resp = requests.get(
                self.timedtext_url,
                params={"v": video_id, "lang": self._caption_language, "fmt": "vtt"},
                timeout=self._timeout,
            )
        except requests.RequestException as exc:
            raise NetworkFailure(f"caption request failed: {exc}") from exc
        if resp.status_code != 200 or not resp.text.strip():
            raise NoCaptionTrack(f"no caption track for {video_id}")
        return resp.text, "vtt"


class ReplayVideoClient:
    """Replays recorded platform interactions from a fixture store."""

    def __init__(self, store: FixtureStore):
        self._store = store

    def _check(self, interaction) -> None:
        if interaction.status in (401, 403):
            raise AuthFailure(f"recorded auth failure (status {interaction.status})")
        if interaction.status == 429:
            raise QuotaExceeded("recorded quota failure")
        if interaction.status >= 500:
            raise NetworkFailure(f"recorded upstream failure (status {interaction.status})")

    def search_raw(self, keyword: str, max_results: int) -> list[dict]:
        interaction = self._store.lookup("search", normalize_key(keyword))
        self._check(interaction)
        items = (interaction.response_body or {}).get("items", [])
        return items[:max_results]

    def video_raw(self, video_id: str) -> dict | None:
        interaction = self._store.lookup("video", video_id)
        self._check(interaction)
        if interaction.status == 404:
            return None
        return interaction.response_body

    def captions(self, video_id: str) -> tuple[str, str]:
        interaction = self._store.lookup("captions", video_id)
        self._check(interaction)
        if interaction.status == 404:
            raise NoCaptionTrack(f"no caption track for {video_id}")
        body = interaction.response_body or {}
        return body.get("body", ""), body.get("format", "vtt")


def search(
    query: SearchQuery, client: VideoClient, require_captions: bool = True
) -> list[VideoMeta]:
    """Keyword search returning at most max_results validated VideoMeta.

    Caption-less videos are filtered out by default because the whole
    pipeline is subtitle-driven; platform relevance order is preserved.
    """
    query.validate()
    items = client.search_raw(query.keyword, query.max_results)
    metas = []
    for item in items:
        meta = _item_to_meta(item if isinstance(item, dict) else {})
        if meta is None:
            continue
        if require_captions and not meta.has_captions:
            continue
        metas.append(meta)
        if len(metas) >= query.max_results:
            break
    return metas


def video_meta(video_id: str, client: VideoClient) -> VideoMeta | None:
    raw = client.video_raw(video_id)
    return _item_to_meta(raw) if raw else None


def fetch_captions(video_id: str, client: VideoClient) -> tuple[str, str]:
    """Raw caption document and its format tag ("srt" or "vtt")."""
    if not video_id.strip():
        raise ValueError("video_id must be non-blank")
    return client.captions(video_id)


def meta_to_json(meta: VideoMeta) -> dict:
    return {
        "video_id": meta.video_id,
        "title": meta.title,
        "duration_ms": meta.duration_ms,
        "thumbnail_ref": meta.thumbnail_ref,
        "has_captions": meta.has_captions,
        "description": meta.description,
    }
