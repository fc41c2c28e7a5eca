"""Sticky notes persisted per video in a single-file embedded store."""

from __future__ import annotations

import sqlite3
import threading
from pathlib import Path

MAX_NOTE_BYTES = 4096


class NoteTooLarge(ValueError):
    pass


class NotesStore:
    """SQLite-backed note storage; safe for concurrent callers."""

    def __init__(self, path: str | Path):
        self._path = str(path)
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        with self._connect() as conn:
            conn.execute(
                """
                CREATE TABLE IF NOT EXISTS notes (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    video_id TEXT NOT NULL,
                    t_ms INTEGER NOT NULL,
                    text TEXT NOT NULL
                )
                """
            )

    def _connect(self) -> sqlite3.Connection:
        return sqlite3.connect(self._path)

    def add(self, video_id: str, t_ms: int, text: str) -> dict:
        if not isinstance(t_ms, int) or isinstance(t_ms, bool) or t_ms < 0:
            raise ValueError("t_ms must be a non-negative integer")
        if not isinstance(text, str) or not text.strip():
            raise ValueError("text must be a non-empty string")
        if len(text.encode("utf-8")) > MAX_NOTE_BYTES:
            raise NoteTooLarge(f"note exceeds {MAX_NOTE_BYTES} bytes")
        with self._lock, self._connect() as conn:
            conn.execute(
                "INSERT INTO notes (video_id, t_ms, text) VALUES (?, ?, ?)",
                (video_id, t_ms, text),
            )
        return {"t_ms": t_ms, "text": text}

    def list(self, video_id: str) -> list[dict]:
        """Notes for one video, sorted by t_ms (insertion order on ties)."""
        with self._lock, self._connect() as conn:
            rows = conn.execute(
                "SELECT t_ms, text FROM notes WHERE video_id = ? ORDER BY t_ms ASC, id ASC",
                (video_id,),
            ).fetchall()
        return [{"t_ms": t, "text": text} for t, text in rows]
