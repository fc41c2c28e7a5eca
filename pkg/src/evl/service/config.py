"""Session configuration: one immutable object drives every pipeline knob.

Values load from an optional JSON config file, overridden by EVL_* environment
variables, overridden again by explicit keyword arguments. Caches are keyed by
the config fingerprint so a config change invalidates them cleanly.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from ..enrich import SOURCES

ENV_PREFIX = "EVL_"


@dataclass(frozen=True)
class SessionConfig:
    mode: str = "replay"  # "live" or "replay"
    fixture_dir: str | None = None
    state_dir: str = ".evl-state"
    gap_threshold_ms: int = 4000
    top_n_topics: int = 10
    related_limit: int = 6
    min_confidence: float = 0.5
    relevance_threshold: float = 0.2
    safety_policy_path: str | None = None
    sources: tuple[str, ...] = SOURCES
    require_captions: bool = True
    default_max_results: int = 10
    cache_ttl_seconds: float = 7 * 24 * 3600
    gazetteer_path: str | None = None
    annotator_endpoint: str | None = None
    request_log_path: str | None = None

    def validate(self) -> None:
        if self.mode not in ("live", "replay"):
            raise ValueError(f"mode must be live or replay, got {self.mode!r}")
        if self.mode == "replay" and not self.fixture_dir:
            raise ValueError("replay mode requires fixture_dir")
        for name in (
            "gap_threshold_ms",
            "top_n_topics",
            "related_limit",
            "default_max_results",
            "cache_ttl_seconds",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 <= self.min_confidence <= 1.0:
            raise ValueError("min_confidence must be in [0, 1]")
        unknown = [s for s in self.sources if s not in SOURCES]
        if unknown:
            raise ValueError(f"unknown sources: {unknown}")
        if not self.sources:
            raise ValueError("sources must be non-empty")

    def fingerprint(self) -> str:
        """Hash of the cache-relevant fields; state paths stay out of it."""
        payload = asdict(self)
        payload.pop("state_dir")
        payload.pop("request_log_path")
        payload["sources"] = list(self.sources)
        canonical = json.dumps(payload, sort_keys=True)
        return hashlib.sha1(canonical.encode("utf-8")).hexdigest()[:12]


_BOOL_TRUE = {"1", "true", "yes", "on"}

_ENV_KINDS = {
    "mode": str,
    "fixture_dir": str,
    "state_dir": str,
    "gap_threshold_ms": int,
    "top_n_topics": int,
    "related_limit": int,
    "min_confidence": float,
    "relevance_threshold": float,
    "safety_policy_path": str,
    "sources": "csv",
    "require_captions": bool,
    "default_max_results": int,
    "cache_ttl_seconds": float,
    "gazetteer_path": str,
    "annotator_endpoint": str,
    "request_log_path": str,
}


def _coerce(kind, raw: str):
    if kind is bool:
        return raw.strip().lower() in _BOOL_TRUE
    if kind is int:
        return int(raw)
    if kind is float:
        return float(raw)
    if kind == "csv":
        return tuple(s.strip() for s in raw.split(",") if s.strip())
    return raw


def load_config(
    path: str | Path | None = None,
    env: dict | None = None,
    **overrides,
) -> SessionConfig:
    env = os.environ if env is None else env
    values: dict = {}
    if path:
        values.update(json.loads(Path(path).read_text(encoding="utf-8")))
    for f in fields(SessionConfig):
        raw = env.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            values[f.name] = _coerce(_ENV_KINDS[f.name], raw)
    values.update({k: v for k, v in overrides.items() if v is not None})
    if "sources" in values and not isinstance(values["sources"], tuple):
        values["sources"] = tuple(values["sources"])
    config = SessionConfig(**values)
    config.validate()
    return config
