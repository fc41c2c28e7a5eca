from __future__ import annotations

import random
from collections import Counter

import pytest

from evl.textutil import stem, tokenize
from evl.titles import SmartTitle, extract_topics, relevance_check, title_segment

WORD_POOL = [
    "coronavirus", "vaccine", "spread", "cell", "protein", "immune",
    "history", "empire", "trade", "river", "battle", "treaty",
    "algebra", "equation", "matrix", "vector", "proof", "theorem",
    "the", "of", "and", "to", "in", "is", "it", "for",
]


def random_text(rng: random.Random, n_words: int = 60) -> str:
    words = [rng.choice(WORD_POOL) for _ in range(n_words)]
    # sprinkle sentence boundaries
    out = []
    for i, w in enumerate(words):
        out.append(w)
        if rng.random() < 0.15:
            out[-1] = w + "."
    return " ".join(out)


class TestExtractTopics:
    def test_empty_text(self):
        assert extract_topics("") == []

    def test_all_stopwords(self):
        assert extract_topics("the of and") == []

    def test_pure_frequency_example(self):
        # brute-force counter oracle: coronavirus 2, vaccine 1 -> 2:1 split
        counts = Counter(tokenize("coronavirus vaccine coronavirus"))
        assert counts == {"coronavirus": 2, "vaccine": 1}
        topics = extract_topics(
            "coronavirus vaccine coronavirus", top_n=2, strategy="frequency"
        )
        assert [t.term for t in topics] == ["coronavirus", "vaccine"]
        assert topics[0].weight_percent == pytest.approx(66.67, abs=0.01)
        assert topics[1].weight_percent == pytest.approx(33.33, abs=0.01)

    def test_top_n_must_be_positive(self):
        with pytest.raises(ValueError):
            extract_topics("words here", top_n=0)

    def test_weights_sum_to_100(self):
        rng = random.Random(11)
        for _ in range(100):
            topics = extract_topics(random_text(rng), top_n=rng.randint(1, 8))
            if topics:
                assert sum(t.weight_percent for t in topics) == pytest.approx(100, abs=0.01)

    def test_sorted_desc_with_lexicographic_ties(self):
        rng = random.Random(12)
        for _ in range(50):
            topics = extract_topics(random_text(rng), top_n=6)
            for a, b in zip(topics, topics[1:]):
                assert a.weight_percent > b.weight_percent or (
                    a.weight_percent == b.weight_percent and a.term < b.term
                )

    def test_duplication_preserves_ranking(self):
        rng = random.Random(13)
        for _ in range(100):
            text = random_text(rng)
            once = extract_topics(text, top_n=5)
            twice = extract_topics(text + "\n" + text, top_n=5)
            assert [t.term for t in once] == [t.term for t in twice]

    def test_deterministic(self):
        rng = random.Random(14)
        for _ in range(20):
            text = random_text(rng)
            assert extract_topics(text, top_n=5) == extract_topics(text, top_n=5)

    def test_terms_unique(self):
        rng = random.Random(15)
        for _ in range(50):
            topics = extract_topics(random_text(rng), top_n=10)
            terms = [t.term for t in topics]
            assert len(terms) == len(set(terms))


class TestTitleSegment:
    def test_empty(self):
        assert title_segment("") == ""

    def test_frequency_winner(self):
        # oracle: "coronavirus" appears twice, everything else once
        counts = Counter(tokenize("coronavirus vaccine coronavirus trials begin"))
        assert counts["coronavirus"] == 2
        assert title_segment("coronavirus vaccine coronavirus trials begin") == "coronavirus"

    def test_all_stopwords(self):
        assert title_segment("the of and to") == ""


class TestRelevanceCheck:
    def test_empty_title(self):
        assert relevance_check("", [SmartTitle("coronavirus", 100.0)]) == 0.0

    def test_empty_topics(self):
        assert relevance_check("Coronavirus update", []) == 0.0

    def test_full_overlap(self):
        topics = [SmartTitle("coronavirus", 60.0), SmartTitle("update", 40.0)]
        assert relevance_check("Coronavirus update", topics) == 1.0

    def test_half_overlap(self):
        topics = [SmartTitle("coronavirus", 100.0)]
        assert relevance_check("Coronavirus update", topics) == 0.5

    def test_bounded_and_monotone(self):
        rng = random.Random(16)
        for _ in range(50):
            title = random_text(rng, n_words=6)
            terms = [SmartTitle(w, 1.0) for w in {rng.choice(WORD_POOL) for _ in range(5)}]
            score_few = relevance_check(title, terms[:2])
            score_all = relevance_check(title, terms)
            assert 0.0 <= score_few <= 1.0
            assert 0.0 <= score_all <= 1.0
            assert score_all >= score_few

    def test_stem_matching(self):
        topics = [SmartTitle("trial", 100.0)]
        assert relevance_check("Trials", topics) == 1.0
