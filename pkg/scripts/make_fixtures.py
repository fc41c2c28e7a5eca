#!/usr/bin/env python3
"""Generate the shipped replay fixtures.

Two sets come out of this script, both committed to the repo:

  fixtures/eval/  keyword groups plus platform/knowledge fixtures engineered
                  so the coverage harness reproduces the reference per-group
                  source-percentage table exactly (counts come from the
                  solve_counts denominator search).
  fixtures/demo/  a small six-video catalog exercising every service path:
                  multi-segment captions, SRT and VTT, a safety-policy hit,
                  a caption-less video, and an entity-free video.

Re-running the script is deterministic and must leave committed files
unchanged.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from evl.evalrun import solve_counts  # noqa: E402
from evl.fixtures import Interaction, write_fixture  # noqa: E402
from evl.graph import build_graph, graph_to_dict  # noqa: E402
from evl.annotate import EntityAnnotation  # noqa: E402
from evl.enrich import EnrichmentBundle, OntologyRecord  # noqa: E402
from evl.subtitles import format_srt_timestamp  # noqa: E402
from evl.textutil import normalize_key  # noqa: E402

# Reference coverage table: per-group percentage of non-empty records by
# source (wikipedia, dbpedia, wolfram).
COVERAGE_TARGETS = [
    ("Searches", (35.7, 14.3, 50.0)),
    ("News", (36.85, 26.3, 36.85)),
    ("Actors", (37.05, 33.35, 29.6)),
    ("Athletes", (32.15, 32.15, 35.7)),
    ("Games", (52.94, 41.17, 5.89)),
    ("Loss", (33.33, 33.33, 33.33)),
    ("Lyrics", (33.33, 27.78, 38.89)),
    ("Movies", (47.62, 9.52, 42.86)),
    ("People", (34.48, 31.04, 34.48)),
    ("Recipes", (34.48, 34.48, 31.04)),
    ("TV Shows", (45.46, 31.82, 22.72)),
]

# The 2020 trend phrases shipped for the first group; the remaining groups
# were not published as lists and ship as placeholders.
SEARCHES_KEYWORDS = [
    "Coronavirus",
    "Election result",
    "Kobe Bryant",
    "Zoom",
    "IPL",
    "India vs New Zealand",
    "Coronavirus update",
    "Coronavirus symptoms",
    "Joe Biden",
    "Google Classroom",
]

CATEGORIES = ("person", "place", "organization", "event", "product", "other")


def vtt_timestamp(ms: int) -> str:
    hours, rem = divmod(ms, 3_600_000)
    minutes, rem = divmod(rem, 60_000)
    seconds, millis = divmod(rem, 1000)
    return f"{hours:02d}:{minutes:02d}:{seconds:02d}.{millis:03d}"


def to_vtt(cues: list[tuple[int, int, str]]) -> str:
    blocks = ["WEBVTT", ""]
    for start, end, text in cues:
        blocks.append(f"{vtt_timestamp(start)} --> {vtt_timestamp(end)}")
        blocks.append(text)
        blocks.append("")
    return "\n".join(blocks)


def to_srt(cues: list[tuple[int, int, str]]) -> str:
    blocks = []
    for i, (start, end, text) in enumerate(cues):
        blocks.append(
            f"{i + 1}\n{format_srt_timestamp(start)} --> {format_srt_timestamp(end)}\n{text}\n"
        )
    return "\n".join(blocks)


def video_item(video_id: str, title: str, duration: str = "PT4M30S", has_captions: bool = True, description: str = "") -> dict:
    return {
        "video_id": video_id,
        "title": title,
        "duration": duration,
        "thumbnail_ref": f"thumb://{video_id}",
        "has_captions": has_captions,
        "description": description,
    }


def knowledge_body(label: str, synonyms: list[str], description: str, image: str | None = None) -> dict:
    return {
        "label": label,
        "synonyms": synonyms,
        "description": description,
        "image_ref": image,
        "fetched_at": 0.0,
    }


def make_eval_fixtures(out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    groups = []
    videos: list[Interaction] = []
    knowledge: list[Interaction] = []
    gazetteer = []

    for group_index, (group_name, percentages) in enumerate(COVERAGE_TARGETS):
        solved = solve_counts(percentages)
        if solved is None:
            raise SystemExit(f"no integer counts reproduce group {group_name}")
        (n_wikipedia, n_dbpedia, n_wolfram), total = solved
        if max(n_wikipedia, n_dbpedia, n_wolfram) > 10:
            raise SystemExit(f"group {group_name} needs more than ten keywords")

        if group_name == "Searches":
            keywords = list(SEARCHES_KEYWORDS)
        else:
            keywords = [f"{group_name} phrase {i + 1}" for i in range(10)]
        groups.append({"group_name": group_name, "keywords": keywords})

        slug = "".join(ch for ch in group_name.lower() if ch.isalnum())
        for i, keyword in enumerate(keywords):
            video_id = f"{slug}{i:02d}"
            item = video_item(video_id, f"{keyword} explained")
            videos.append(
                Interaction("search", normalize_key(keyword), 200, {"items": [item]})
            )
            videos.append(Interaction("video", video_id, 200, item))
            body = to_vtt(
                [
                    (0, 4000, f"Today we take a close look at {keyword} in this lesson"),
                    (4200, 8000, "Further context follows in the next part"),
                ]
            )
            videos.append(
                Interaction("captions", video_id, 200, {"format": "vtt", "body": body})
            )
            gazetteer.append(
                {
                    "surface_forms": [keyword],
                    "category": CATEGORIES[(group_index + i) % len(CATEGORIES)],
                    "canonical": keyword,
                }
            )
            key = normalize_key(keyword)
            for source, quota in (
                ("wikipedia", n_wikipedia),
                ("dbpedia", n_dbpedia),
                ("wolfram", n_wolfram),
            ):
                if i < quota:
                    knowledge.append(
                        Interaction(
                            source,
                            key,
                            200,
                            knowledge_body(
                                keyword, [], f"{keyword}: reference notes from {source}"
                            ),
                        )
                    )
                else:
                    knowledge.append(Interaction(source, key, 404, None))

    (out_dir / "groups.json").write_text(
        json.dumps(groups, indent=2, ensure_ascii=False) + "\n", "utf-8"
    )
    write_fixture(out_dir / "videos.json", videos)
    write_fixture(out_dir / "knowledge.json", knowledge)
    (out_dir / "gazetteer.json").write_text(
        json.dumps(gazetteer, indent=2, ensure_ascii=False) + "\n", "utf-8"
    )


DEMO_ENTITIES = {
    "Coronavirus": {
        "category": "other",
        "wikipedia": knowledge_body(
            "Coronavirus",
            ["virus", "pathogen"],
            "A family of RNA viruses that cause respiratory illness.",
            image="img://coronavirus",
        ),
        "dbpedia": knowledge_body(
            "Coronavirus",
            ["Pathogen", "microbe"],
            "Group of related viruses affecting mammals and birds.",
        ),
        "wolfram": knowledge_body(
            "Coronavirus", [], "Virus family; enveloped, positive-sense RNA."
        ),
    },
    "Zoom": {
        "category": "product",
        "wikipedia": knowledge_body(
            "Zoom", ["videotelephony"], "A video conferencing platform used for remote classes."
        ),
        "dbpedia": None,
        "wolfram": None,
    },
    "Kobe Bryant": {
        "category": "person",
        "wikipedia": knowledge_body(
            "Kobe Bryant", ["basketball"], "American professional basketball player."
        ),
        "dbpedia": knowledge_body("", [], ""),
        "wolfram": knowledge_body("Kobe Bryant", [], "Basketball guard, five championships."),
    },
    "Joe Biden": {
        "category": "person",
        "wikipedia": knowledge_body(
            "Joe Biden", ["politician"], "American politician and statesman."
        ),
        "dbpedia": knowledge_body(
            "Joseph R. Biden", ["senator"], "Politician from Delaware."
        ),
        "wolfram": knowledge_body("Joe Biden", [], "Political figure, United States."),
    },
    "Google Classroom": {
        "category": "product",
        "wikipedia": None,
        "dbpedia": knowledge_body(
            "Google Classroom", ["learning platform"], "Free blended learning platform."
        ),
        "wolfram": None,
    },
}


def make_demo_fixtures(out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    videos: list[Interaction] = []
    knowledge: list[Interaction] = []

    catalog = {
        "edu001": video_item(
            "edu001",
            "Coronavirus Explained for Students",
            duration="PT6M10S",
            description="Like and subscribe! Visit our channel shop.",
        ),
        "edu002": video_item("edu002", "History of Trade Routes", duration="PT5M00S"),
        "edu003": video_item("edu003", "Joe Biden Biography", duration="PT3M45S"),
        "edu004": video_item("edu004", "Google Classroom Tutorial", duration="PT8M20S"),
        "edu005": video_item(
            "edu005", "Silent Mountain Footage", duration="PT2M00S", has_captions=False
        ),
        "edu006": video_item("edu006", "Rainforest Ambience", duration="PT10M00S"),
    }

    videos.append(
        Interaction(
            "search",
            "coronavirus",
            200,
            {"items": [catalog["edu001"], catalog["edu002"], catalog["edu003"]]},
        )
    )
    videos.append(
        Interaction(
            "search",
            "learning",
            200,
            {"items": [catalog["edu004"], catalog["edu005"], catalog["edu006"]]},
        )
    )
    for video_id, item in catalog.items():
        videos.append(Interaction("video", video_id, 200, item))

    captions = {
        "edu001": (
            "vtt",
            to_vtt(
                [
                    (0, 4000, "Welcome to this lesson about the Coronavirus outbreak"),
                    (4200, 8000, "Schools moved their classes online very quickly"),
                    (8200, 12000, "Teachers relied on Zoom to keep lessons going"),
                    (22000, 26000, "Sports also stopped around the world that year"),
                    (26200, 30000, "Fans mourned Kobe Bryant and honored his career"),
                    (30200, 34000, "Communities found new ways to stay connected"),
                ]
            ),
        ),
        "edu002": (
            "srt",
            to_srt(
                [
                    (0, 3500, "Trade routes shaped entire civilizations"),
                    (3700, 7400, "The history of narcotics trade is a dark chapter"),
                    (7600, 11000, "Merchants carried goods across continents"),
                ]
            ),
        ),
        "edu003": (
            "vtt",
            to_vtt(
                [
                    (0, 3000, "Joe Biden grew up in Scranton Pennsylvania"),
                    (3200, 6500, "He served decades in the United States Senate"),
                    (6700, 9900, "Joe Biden later became vice president"),
                    (10100, 13000, "His career spans half a century of politics"),
                ]
            ),
        ),
        "edu004": (
            "vtt",
            to_vtt(
                [
                    (0, 3800, "Google Classroom organizes assignments for your class"),
                    (4000, 7600, "Students submit work and receive feedback online"),
                    (7800, 11500, "Grading flows back to the gradebook automatically"),
                ]
            ),
        ),
        "edu006": (
            "vtt",
            to_vtt(
                [
                    (0, 5000, "Gentle rain falls over the canopy"),
                    (5200, 10000, "Distant thunder rolls across the valley"),
                ]
            ),
        ),
    }
    for video_id, (fmt, body) in captions.items():
        videos.append(
            Interaction("captions", video_id, 200, {"format": fmt, "body": body})
        )
    videos.append(Interaction("captions", "edu005", 404, None))

    for surface, info in DEMO_ENTITIES.items():
        key = normalize_key(surface)
        for source in ("wikipedia", "dbpedia", "wolfram"):
            body = info[source]
            if body is None:
                knowledge.append(Interaction(source, key, 404, None))
            else:
                knowledge.append(Interaction(source, key, 200, body))

    gazetteer = [
        {"surface_forms": [surface], "category": info["category"], "canonical": surface}
        for surface, info in DEMO_ENTITIES.items()
    ]

    write_fixture(out_dir / "videos.json", videos)
    write_fixture(out_dir / "knowledge.json", knowledge)
    (out_dir / "gazetteer.json").write_text(
        json.dumps(gazetteer, indent=2, ensure_ascii=False) + "\n", "utf-8"
    )
    (out_dir / "policy.json").write_text(
        json.dumps(
            {"action": "exclude", "terms": [{"term": "narcotics", "category": "drugs"}]},
            indent=2,
        )
        + "\n",
        "utf-8",
    )
    (out_dir / "policy_redact.json").write_text(
        json.dumps(
            {"action": "redact", "terms": [{"term": "narcotics", "category": "drugs"}]},
            indent=2,
        )
        + "\n",
        "utf-8",
    )


def make_sample_graphs(out_dir: Path) -> None:
    """Ten serialized graphs for the widget rendering tests."""
    surfaces = list(DEMO_ENTITIES)
    graphs = []
    for i in range(10):
        annotations = []
        bundles = {}
        for j in range(i % 3 + 1):
            surface = surfaces[(i + j) % len(surfaces)]
            info = DEMO_ENTITIES[surface]
            annotations.append(
                EntityAnnotation(
                    surface=surface,
                    start=0,
                    end=len(surface),
                    category=info["category"],
                    confidence=1.0,
                    cue_index=j,
                )
            )
            records = []
            for source in ("wikipedia", "dbpedia", "wolfram"):
                body = info[source]
                if body is None:
                    continue
                records.append(
                    OntologyRecord(
                        entity_surface=surface,
                        source=source,
                        label=body["label"],
                        synonyms=tuple(body["synonyms"]),
                        description=body["description"],
                        image_ref=body["image_ref"],
                    )
                )
            bundles[surface] = EnrichmentBundle(entity_surface=surface, records=tuple(records))
        graph = build_graph(i, annotations, bundles, related_limit=4)
        graphs.append(graph_to_dict(graph))
    (out_dir / "graphs_sample.json").write_text(
        json.dumps(graphs, indent=2, ensure_ascii=False) + "\n", "utf-8"
    )


def main() -> None:
    fixtures = REPO / "fixtures"
    make_eval_fixtures(fixtures / "eval")
    make_demo_fixtures(fixtures / "demo")
    make_sample_graphs(fixtures / "demo")
    print(f"fixtures written under {fixtures}")


if __name__ == "__main__":
    main()
