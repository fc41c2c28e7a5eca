"""Per-segment entity network graphs: depth-1 stars per entity.

Each distinct entity in a segment becomes a blue parent node; its children
are green related words and pink labels. Node ids are short content hashes,
stable across rebuilds so a UI can diff and animate.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .annotate import EntityAnnotation
from .enrich import SOURCES, EnrichmentBundle, merge_related
from .textutil import normalize_key

DEFAULT_RELATED_LIMIT = 6

ROLE_COLORS = {"parent": "blue", "related": "green", "label": "pink"}


@dataclass(frozen=True)
class GraphNode:
    node_id: str
    text: str
    role: str
    color_role: str

    def __post_init__(self):
        if ROLE_COLORS.get(self.role) != self.color_role:
            raise ValueError(f"role {self.role!r} must carry color {ROLE_COLORS.get(self.role)!r}")


@dataclass(frozen=True)
class EntityGraph:
    segment_index: int
    nodes: tuple[GraphNode, ...]
    edges: tuple[tuple[str, str], ...]


def _node_id(segment_index: int, parent_key: str, role: str, text: str) -> str:
    # Children hash their parent key too: two parents may share a related
    # word, and node ids must stay unique within the graph.
    digest = hashlib.sha1(
        f"{segment_index}|{parent_key}|{role}|{normalize_key(text)}".encode("utf-8")
    )
    return digest.hexdigest()[:12]


def build_graph(
    segment_index: int,
    annotations: list[EntityAnnotation],
    bundles: dict[str, EnrichmentBundle],
    related_limit: int = DEFAULT_RELATED_LIMIT,
) -> EntityGraph:
    """Assemble the star forest for one segment.

    One parent per distinct normalized entity surface, in first-occurrence
    order. Pink children are the entity's category plus any source label that
    differs from the surface; green children come from merge_related. When a
    related word collides with a label, the label wins.
    """
    nodes: list[GraphNode] = []
    edges: list[tuple[str, str]] = []
    parents: dict[str, str] = {}  # normalized surface -> parent node id
    categories: dict[str, list[str]] = {}

    order: list[tuple[str, str]] = []  # (normalized, display)
    for ann in annotations:
        key = normalize_key(ann.surface)
        if key not in parents:
            parents[key] = _node_id(segment_index, "", "parent", ann.surface)
            categories[key] = [ann.category]
            order.append((key, ann.surface))
        elif ann.category not in categories[key]:
            categories[key].append(ann.category)

    for key, surface in order:
        parent_id = parents[key]
        nodes.append(GraphNode(parent_id, surface, "parent", "blue"))
        bundle = bundles.get(surface) or bundles.get(key) or EnrichmentBundle(surface, ())

        label_texts: list[str] = []
        label_keys: set[str] = set()

        def add_label(text: str) -> None:
            norm = normalize_key(text)
            if not norm or norm in label_keys:
                return
            label_keys.add(norm)
            label_texts.append(text)

        for category in categories[key]:
            add_label(category)
        for source in SOURCES:
            record = bundle.record_for(source)
            if record and record.label.strip() and normalize_key(record.label) != key:
                add_label(record.label)

        related = [
            word
            for word in merge_related(bundle, related_limit)
            if normalize_key(word) not in label_keys
        ]

        for text in label_texts:
            child_id = _node_id(segment_index, key, "label", text)
            nodes.append(GraphNode(child_id, text, "label", "pink"))
            edges.append((parent_id, child_id))
        for text in related:
            child_id = _node_id(segment_index, key, "related", text)
            nodes.append(GraphNode(child_id, text, "related", "green"))
            edges.append((parent_id, child_id))

    return EntityGraph(segment_index=segment_index, nodes=tuple(nodes), edges=tuple(edges))


def graph_to_dict(graph: EntityGraph) -> dict:
    return {
        "segment": graph.segment_index,
        "nodes": [
            {"id": n.node_id, "text": n.text, "role": n.role, "color": n.color_role}
            for n in graph.nodes
        ],
        "edges": [{"from": a, "to": b} for a, b in graph.edges],
    }


def serialize_graph(graph: EntityGraph) -> str:
    """Stable JSON rendering; parse_graph inverts it losslessly."""
    return json.dumps(graph_to_dict(graph), ensure_ascii=False, separators=(",", ":"))


def parse_graph(document: str | dict) -> EntityGraph:
    data = json.loads(document) if isinstance(document, str) else document
    nodes = tuple(
        GraphNode(node_id=n["id"], text=n["text"], role=n["role"], color_role=n["color"])
        for n in data["nodes"]
    )
    edges = tuple((e["from"], e["to"]) for e in data["edges"])
    return EntityGraph(segment_index=data["segment"], nodes=nodes, edges=edges)
