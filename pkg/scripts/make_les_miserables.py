"""Regenerate the bundled Les Misérables graph JSON.

Uses the character co-occurrence network shipped with networkx (77 nodes,
254 undirected edges) and assigns exactly 11 clusters via deterministic
greedy modularity maximization.
"""

from pathlib import Path

import networkx as nx
from networkx.algorithms.community import greedy_modularity_communities

import sys

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from vismorph.data_model import (  # noqa: E402
    Edge, MultivariateGraph, Node, AttributeTable, serialize_graph, validate,
)

OUT = Path(__file__).resolve().parents[1] / "src/vismorph/data/les_miserables.json"
CLUSTERS = 11


def main():
    g = nx.les_miserables_graph()
    communities = greedy_modularity_communities(g, cutoff=CLUSTERS, best_n=CLUSTERS)
    cluster_of = {}
    # stable cluster ids: communities ordered by their lexicographically
    # smallest member
    ordered = sorted(communities, key=lambda c: min(c))
    for cid, members in enumerate(ordered):
        for name in members:
            cluster_of[name] = cid

    nodes = tuple(
        Node(name, name, cluster_of[name]) for name in sorted(g.nodes())
    )
    edges = tuple(
        Edge(a, b) for a, b in sorted(tuple(sorted(e)) for e in g.edges())
    )
    graph = MultivariateGraph(nodes, edges, AttributeTable(()), CLUSTERS)
    problems = validate(graph)
    assert not problems, problems
    assert len(nodes) == 77 and len(edges) == 254, (len(nodes), len(edges))
    OUT.write_text(serialize_graph(graph), encoding="utf-8")
    print(f"wrote {OUT} ({len(nodes)} nodes, {len(edges)} edges, {CLUSTERS} clusters)")


if __name__ == "__main__":
    main()
