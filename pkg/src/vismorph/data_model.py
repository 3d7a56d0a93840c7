"""Multivariate graph model, JSON ingestion, and synthetic attribute generation.

Attribute synthesis follows visually recognizable parallel-coordinates
patterns (correlations, outliers) and is driven by a seeded PCG64 generator
so that fixtures are reproducible across platforms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

ATTRIBUTE_RANGE = (0.0, 100.0)
SCHEMA_VERSION = "1"


class GraphSchemaError(ValueError):
    """Raised when a graph document does not conform to the JSON schema."""


class GraphValidationError(ValueError):
    """Raised when a structurally valid document violates graph invariants."""


@dataclass(frozen=True)
class Node:
    id: str
    label: str
    cluster_id: int
    fixed_position: tuple[float, float] | None = None


@dataclass(frozen=True)
class Edge:
    source: str
    target: str

    def key(self) -> frozenset[str]:
        return frozenset((self.source, self.target))


@dataclass(frozen=True)
class AttributeTable:
    attribute_names: tuple[str, ...]
    values: dict[str, tuple[float, ...]] = field(default_factory=dict)

    def value(self, node_id: str, attribute: str) -> float:
        return self.values[node_id][self.attribute_names.index(attribute)]

    def column(self, attribute: str, node_order: list[str]) -> list[float]:
        i = self.attribute_names.index(attribute)
        return [self.values[n][i] for n in node_order]

    @property
    def is_empty(self) -> bool:
        return not self.attribute_names


@dataclass(frozen=True)
class PatternKind:
    """One of the predefined PC patterns used for synthetic attributes."""

    kind: str  # "negative_correlation" | "positive_correlation" | "outliers" | "uniform_random"
    outlier_count: int = 0

    NEGATIVE = "negative_correlation"
    POSITIVE = "positive_correlation"
    OUTLIERS = "outliers"
    UNIFORM = "uniform_random"

    def __post_init__(self):
        valid = {self.NEGATIVE, self.POSITIVE, self.OUTLIERS, self.UNIFORM}
        if self.kind not in valid:
            raise ValueError(f"unknown pattern kind: {self.kind!r}")
        if self.kind == self.OUTLIERS and self.outlier_count < 1:
            raise ValueError("outliers pattern requires outlier_count >= 1")


@dataclass(frozen=True)
class MultivariateGraph:
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    attributes: AttributeTable
    cluster_count: int

    @property
    def node_ids(self) -> list[str]:
        return [n.id for n in self.nodes]

    def node(self, node_id: str) -> Node:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def with_attributes(self, table: AttributeTable) -> "MultivariateGraph":
        return MultivariateGraph(self.nodes, self.edges, table, self.cluster_count)


def validate(graph: MultivariateGraph) -> list[str]:
    """Return a list of invariant violations; empty iff the graph is valid."""
    violations: list[str] = []
    seen_ids: set[str] = set()
    for node in graph.nodes:
        if node.id in seen_ids:
            violations.append(f"duplicate node id {node.id!r}")
        seen_ids.add(node.id)
        if not 0 <= node.cluster_id < graph.cluster_count:
            violations.append(
                f"node {node.id!r} cluster {node.cluster_id} outside [0, {graph.cluster_count})"
            )
        if node.fixed_position is not None and not all(
            math.isfinite(c) for c in node.fixed_position
        ):
            violations.append(f"node {node.id!r} has non-finite fixed position")

    seen_edges: set[frozenset[str]] = set()
    for edge in graph.edges:
        if edge.source == edge.target:
            violations.append(f"self-loop on node {edge.source!r}")
            continue
        for endpoint in (edge.source, edge.target):
            if endpoint not in seen_ids:
                violations.append(f"edge references unknown node id {endpoint!r}")
        key = edge.key()
        if key in seen_edges:
            violations.append(f"duplicate edge {edge.source!r}-{edge.target!r}")
        seen_edges.add(key)

    table = graph.attributes
    if not table.is_empty:
        n = len(table.attribute_names)
        for node in graph.nodes:
            row = table.values.get(node.id)
            if row is None:
                violations.append(f"node {node.id!r} missing attribute values")
            elif len(row) != n:
                violations.append(f"node {node.id!r} has {len(row)} values, expected {n}")
            elif not all(math.isfinite(v) for v in row):
                violations.append(f"node {node.id!r} has non-finite attribute value")
    return violations


def _require(condition: bool, path: str, message: str):
    if not condition:
        raise GraphSchemaError(f"{path}: {message}")


def load_graph(document: str) -> MultivariateGraph:
    """Parse and validate a graph from its JSON document text."""
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise GraphSchemaError(f"$: not valid JSON ({exc})") from exc

    _require(isinstance(raw, dict), "$", "top level must be an object")
    _require(raw.get("schemaVersion") == SCHEMA_VERSION, "$.schemaVersion",
             f"expected {SCHEMA_VERSION!r}")
    _require(isinstance(raw.get("clusterCount"), int) and raw["clusterCount"] > 0,
             "$.clusterCount", "must be a positive integer")
    _require(isinstance(raw.get("nodes"), list), "$.nodes", "must be an array")
    _require(isinstance(raw.get("edges"), list), "$.edges", "must be an array")

    nodes: list[Node] = []
    attr_names: tuple[str, ...] | None = None
    values: dict[str, tuple[float, ...]] = {}
    for i, item in enumerate(raw["nodes"]):
        path = f"$.nodes[{i}]"
        _require(isinstance(item, dict), path, "must be an object")
        _require(isinstance(item.get("id"), str) and item["id"], f"{path}.id",
                 "must be a non-empty string")
        _require(isinstance(item.get("label"), str), f"{path}.label", "must be a string")
        _require(isinstance(item.get("cluster"), int), f"{path}.cluster", "must be an integer")
        pos = None
        if "x" in item or "y" in item:
            _require("x" in item and "y" in item, path, "x and y must appear together")
            _require(all(isinstance(item[k], (int, float)) for k in ("x", "y")),
                     path, "x and y must be numbers")
            pos = (float(item["x"]), float(item["y"]))
        if "attrs" in item:
            attrs = item["attrs"]
            _require(isinstance(attrs, dict) and attrs, f"{path}.attrs",
                     "must be a non-empty object")
            names = tuple(attrs.keys())
            if attr_names is None:
                attr_names = names
            _require(names == attr_names, f"{path}.attrs",
                     f"attribute names must match {attr_names}")
            _require(all(isinstance(v, (int, float)) and math.isfinite(v)
                         for v in attrs.values()),
                     f"{path}.attrs", "values must be finite numbers")
            values[item["id"]] = tuple(float(v) for v in attrs.values())
        nodes.append(Node(item["id"], item["label"], item["cluster"], pos))

    if attr_names is not None:
        missing = [n.id for n in nodes if n.id not in values]
        _require(not missing, "$.nodes", f"nodes missing attrs: {missing}")
        table = AttributeTable(attr_names, values)
    else:
        table = AttributeTable(())

    edges: list[Edge] = []
    for i, item in enumerate(raw["edges"]):
        path = f"$.edges[{i}]"
        _require(isinstance(item, dict), path, "must be an object")
        for k in ("source", "target"):
            _require(isinstance(item.get(k), str), f"{path}.{k}", "must be a string")
        edges.append(Edge(item["source"], item["target"]))

    graph = MultivariateGraph(tuple(nodes), tuple(edges), table, raw["clusterCount"])
    violations = validate(graph)
    if violations:
        raise GraphValidationError("; ".join(violations))
    return graph


def serialize_graph(graph: MultivariateGraph) -> str:
    """Serialize to the documented JSON schema; inverse of load_graph."""
    doc: dict = {"schemaVersion": SCHEMA_VERSION, "clusterCount": graph.cluster_count}
    nodes = []
    for node in graph.nodes:
        item: dict = {"id": node.id, "label": node.label, "cluster": node.cluster_id}
        if node.fixed_position is not None:
            item["x"], item["y"] = node.fixed_position
        if not graph.attributes.is_empty:
            item["attrs"] = dict(zip(graph.attributes.attribute_names,
                                     graph.attributes.values[node.id]))
        nodes.append(item)
    doc["nodes"] = nodes
    doc["edges"] = [{"source": e.source, "target": e.target} for e in graph.edges]
    return json.dumps(doc, indent=2) + "\n"


def _distinct_sorted_sample(rng: np.random.Generator, count: int) -> np.ndarray:
    lo, hi = ATTRIBUTE_RANGE
    sample = np.sort(rng.uniform(lo, hi, count))
    # uniform draws collide with probability ~0, but ranks must be unambiguous
    while len(np.unique(sample)) != count:  # pragma: no cover
        sample = np.sort(rng.uniform(lo, hi, count))
    return sample


def generate_attributes(
    graph: MultivariateGraph,
    attribute_count: int,
    pattern: PatternKind,
    seed: int,
) -> AttributeTable:
    """Synthesize per-node attributes showing the requested PC pattern.

    The first one or two attributes carry the pattern; any remaining
    attributes are uniform noise in the attribute range. Deterministic for a
    fixed (graph, attribute_count, pattern, seed).
    """
    if attribute_count < 2:
        raise ValueError("attribute_count must be >= 2")
    n_nodes = len(graph.nodes)
    if n_nodes == 0:
        raise ValueError("graph must be non-empty")
    if pattern.kind == PatternKind.OUTLIERS and pattern.outlier_count > n_nodes // 4:
        raise ValueError("outlier_count must be <= nodeCount/4")

    rng = np.random.Generator(np.random.PCG64(seed))
    lo, hi = ATTRIBUTE_RANGE
    columns = np.empty((attribute_count, n_nodes))

    if pattern.kind in (PatternKind.NEGATIVE, PatternKind.POSITIVE):
        first = _distinct_sorted_sample(rng, n_nodes)[rng.permutation(n_nodes)]
        ranks = np.argsort(np.argsort(first))
        second_sorted = _distinct_sorted_sample(rng, n_nodes)
        if pattern.kind == PatternKind.NEGATIVE:
            second = second_sorted[(n_nodes - 1) - ranks]
        else:
            second = second_sorted[ranks]
        columns[0], columns[1] = first, second
        noise_from = 2
    elif pattern.kind == PatternKind.OUTLIERS:
        k = pattern.outlier_count
        values = rng.uniform(40.0, 60.0, n_nodes)
        outlier_idx = rng.choice(n_nodes, size=k, replace=False)
        values[outlier_idx] = rng.uniform(90.0, hi, k)
        columns[0] = values
        noise_from = 1
    else:
        noise_from = 0

    for j in range(noise_from, attribute_count):
        columns[j] = rng.uniform(lo, hi, n_nodes)

    names = tuple(f"attr{j + 1}" for j in range(attribute_count))
    values_by_node = {
        node.id: tuple(float(columns[j, i]) for j in range(attribute_count))
        for i, node in enumerate(graph.nodes)
    }
    return AttributeTable(names, values_by_node)


def les_miserables_path() -> str:
    """Path to the bundled co-occurrence network of Les Misérables characters."""
    from importlib.resources import files

    return str(files("vismorph").joinpath("data/les_miserables.json"))
