"""Record-and-replay of external API interactions for hermetic runs.

One fixture file is a JSON array of interaction records:

    {"source": "...", "request_key": "...", "status": 200, "response_body": ...}

The same format backs the knowledge-source clients and the video platform
client; replaying a recorded file reproduces the original results exactly.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import ReplayMiss


@dataclass(frozen=True)
class Interaction:
    source: str
    request_key: str
    status: int
    response_body: Any


def load_fixture(path: str | Path) -> list[Interaction]:
    records = json.loads(Path(path).read_text(encoding="utf-8"))
    return [
        Interaction(
            source=r["source"],
            request_key=r["request_key"],
            status=int(r["status"]),
            response_body=r.get("response_body"),
        )
        for r in records
    ]


def write_fixture(path: str | Path, interactions: list[Interaction]) -> None:
    records = [
        {
            "source": i.source,
            "request_key": i.request_key,
            "status": i.status,
            "response_body": i.response_body,
        }
        for i in interactions
    ]
    Path(path).write_text(json.dumps(records, indent=2, ensure_ascii=False) + "\n", "utf-8")


class FixtureStore:
    """Keyed lookup over recorded interactions; later duplicates win."""

    def __init__(self, interactions: list[Interaction] | None = None):
        self._by_key: dict[tuple[str, str], Interaction] = {}
        for i in interactions or []:
            self._by_key[(i.source, i.request_key)] = i

    @classmethod
    def from_file(cls, path: str | Path) -> "FixtureStore":
        return cls(load_fixture(path))

    @classmethod
    def from_files(cls, *paths: str | Path) -> "FixtureStore":
        store = cls()
        for path in paths:
            for i in load_fixture(path):
                store._by_key[(i.source, i.request_key)] = i
        return store

    def lookup(self, source: str, request_key: str) -> Interaction:
        try:
            return self._by_key[(source, request_key)]
        except KeyError:
            raise ReplayMiss(source, request_key) from None

    def __len__(self) -> int:
        return len(self._by_key)


class Recorder:
    """Collects interactions during a live run for later replay."""

    def __init__(self):
        self._lock = threading.Lock()
        self._interactions: list[Interaction] = []

    def record(self, interaction: Interaction) -> None:
        with self._lock:
            self._interactions.append(interaction)

    @property
    def interactions(self) -> list[Interaction]:
        with self._lock:
            return list(self._interactions)

    def write(self, path: str | Path) -> None:
        write_fixture(path, self.interactions)
