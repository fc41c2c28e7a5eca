"""Text normalization shared by the annotation, enrichment, and topic layers."""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from pathlib import Path

_WORD_RE = re.compile(r"\w+")
_CHUNK_SPLIT_RE = re.compile(r"[.!?;\n\r]+")


def normalize_key(s: str) -> str:
    """Trim, collapse internal whitespace, casefold. Used for cache and dedup keys."""
    return " ".join(s.split()).casefold()


def tokenize(text: str) -> list[str]:
    return _WORD_RE.findall(text)


def sentence_chunks(text: str) -> list[list[str]]:
    """Token runs that do not cross sentence punctuation or line breaks."""
    chunks = []
    for part in _CHUNK_SPLIT_RE.split(text):
        tokens = tokenize(part)
        if tokens:
            chunks.append(tokens)
    return chunks


def stem(word: str) -> str:
    """Lightweight suffix stripping (ing/ed/es/s); full stemmers are out of scope."""
    w = word.lower()
    for suffix in ("ing", "ed", "es", "s"):
        if w.endswith(suffix):
            root = w[: -len(suffix)]
            if len(root) >= 3 and not (suffix == "s" and w.endswith("ss")):
                return root
    return w


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    data = resources.files("evl.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(w.strip().lower() for w in data.splitlines() if w.strip())


def load_stopwords(path: str | Path) -> frozenset[str]:
    """One word per line, UTF-8."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return frozenset(w.strip().lower() for w in lines if w.strip())
