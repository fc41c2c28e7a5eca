"""Percentage-weighted topic terms for whole subtitles and per-segment titles.

The default scorer is deliberately lightweight (frequency times a term-length
weight over stemmed unigrams and adjacent bigrams) and sits behind a strategy
seam so a heavier topic model can be swapped in without touching callers.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .textutil import default_stopwords, sentence_chunks, stem


@dataclass(frozen=True)
class SmartTitle:
    term: str
    weight_percent: float


class TopicStrategy:
    """Candidate generation plus scoring for one topic-extraction flavor."""

    name = "base"
    include_bigrams = True

    def score(self, term: str, freq: int) -> float:
        raise NotImplementedError

    def candidates(self, text: str, stopwords: frozenset[str]) -> dict[str, tuple[int, str]]:
        """Map candidate key -> (frequency, display surface).

        Keys are stems (bigrams: two stems joined by a space); the display
        surface is the most frequent lowercase surface form, ties resolved
        lexicographically. Bigrams never span sentence or line boundaries,
        which keeps the candidate set stable when a document is repeated.
        """
        freq: Counter[str] = Counter()
        surfaces: dict[str, Counter[str]] = {}

        def add(key: str, surface: str) -> None:
            freq[key] += 1
            surfaces.setdefault(key, Counter())[surface] += 1

        for chunk in sentence_chunks(text):
            # One slot per token; None marks stopwords so bigram adjacency
            # reflects the original token stream.
            kept: list[tuple[str, str] | None] = []
            for token in chunk:
                lower = token.lower()
                if lower in stopwords or len(lower) < 2:
                    kept.append(None)
                else:
                    kept.append((lower, stem(lower)))
            for item in kept:
                if item:
                    add(item[1], item[0])
            if self.include_bigrams:
                for a, b in zip(kept, kept[1:]):
                    if a and b:
                        add(f"{a[1]} {b[1]}", f"{a[0]} {b[0]}")

        out: dict[str, tuple[int, str]] = {}
        for key, n in freq.items():
            best = min(surfaces[key].items(), key=lambda kv: (-kv[1], kv[0]))[0]
            out[key] = (n, best)
        return out


class BlendedStrategy(TopicStrategy):
    """Frequency times log(1 + term length); unigrams and adjacent bigrams."""

    name = "blended"
    include_bigrams = True

    def score(self, term: str, freq: int) -> float:
        return freq * math.log(1 + len(term))


class FrequencyStrategy(TopicStrategy):
    """Pure word-frequency scoring over unigrams only."""

    name = "frequency"
    include_bigrams = False

    def score(self, term: str, freq: int) -> float:
        return float(freq)


_STRATEGIES = {"blended": BlendedStrategy(), "frequency": FrequencyStrategy()}


def _resolve(strategy: str | TopicStrategy) -> TopicStrategy:
    if isinstance(strategy, str):
        try:
            return _STRATEGIES[strategy]
        except KeyError:
            raise ValueError(f"unknown topic strategy {strategy!r}") from None
    return strategy


def extract_topics(
    full_text: str,
    top_n: int = 10,
    stopwords: frozenset[str] | None = None,
    strategy: str | TopicStrategy = "blended",
) -> list[SmartTitle]:
    """Top-N topic terms with weights renormalized to sum to 100.

    Result is sorted by weight descending, ties broken lexicographically by
    term. Empty list iff the text yields no candidates.
    """
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    strat = _resolve(strategy)
    words = default_stopwords() if stopwords is None else stopwords
    cands = strat.candidates(full_text, words)
    if not cands:
        return []
    scored = [
        (strat.score(display, freq), display)
        for freq, display in cands.values()
    ]
    scored.sort(key=lambda sd: (-sd[0], sd[1]))
    kept = scored[:top_n]
    total = sum(s for s, _ in kept)
    return [SmartTitle(term=d, weight_percent=100.0 * s / total) for s, d in kept]


def title_segment(
    segment_text: str,
    stopwords: frozenset[str] | None = None,
    strategy: str | TopicStrategy = "blended",
) -> str:
    """Short heading for one segment: its top topic term.

    Falls back to the first four non-stopword words when scoring yields no
    candidate; empty text titles to the empty string.
    """
    topics = extract_topics(segment_text, top_n=1, stopwords=stopwords, strategy=strategy)
    if topics:
        return topics[0].term
    words = default_stopwords() if stopwords is None else stopwords
    content = [
        tok.lower()
        for chunk in sentence_chunks(segment_text)
        for tok in chunk
        if tok.lower() not in words
    ]
    return " ".join(content[:4])


def relevance_check(video_title: str, topics: list[SmartTitle]) -> float:
    """Fraction of the title's content words covered by topic-term words.

    Comparison happens on stems; bigram topic terms contribute both words.
    Returns 0.0 for an empty title or empty topic list.
    """
    if not topics:
        return 0.0
    words = default_stopwords()
    title_stems = [
        stem(tok.lower())
        for chunk in sentence_chunks(video_title)
        for tok in chunk
        if tok.lower() not in words and len(tok) >= 2
    ]
    if not title_stems:
        return 0.0
    topic_stems = {
        stem(word) for t in topics for word in t.term.split()
    }
    matched = sum(1 for s in title_stems if s in topic_stems)
    return matched / len(title_stems)
