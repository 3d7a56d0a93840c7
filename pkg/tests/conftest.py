import numpy as np
import pytest

import vismorph as vm
from vismorph.data_model import AttributeTable, Edge, MultivariateGraph, Node


def random_graph(node_count: int, seed: int, cluster_count: int = 4,
                 edge_probability: float = 0.15) -> MultivariateGraph:
    rng = np.random.Generator(np.random.PCG64(seed))
    nodes = tuple(
        Node(f"n{i:02d}", f"node {i}", int(rng.integers(0, cluster_count)))
        for i in range(node_count)
    )
    edges = []
    for i in range(node_count):
        for j in range(i + 1, node_count):
            if rng.random() < edge_probability:
                edges.append(Edge(nodes[i].id, nodes[j].id))
    graph = MultivariateGraph(nodes, tuple(edges), AttributeTable(()), cluster_count)
    table = vm.generate_attributes(
        graph, 2, vm.PatternKind(vm.PatternKind.UNIFORM), seed)
    return graph.with_attributes(table)


@pytest.fixture(scope="session")
def les_mis_graph():
    graph = vm.load_graph(open(vm.les_miserables_path()).read())
    table = vm.generate_attributes(
        graph, 2, vm.PatternKind(vm.PatternKind.NEGATIVE), 42)
    return graph.with_attributes(table)


@pytest.fixture(scope="session")
def les_mis_mapping(les_mis_scenes):
    return vm.map_elements(*les_mis_scenes)


@pytest.fixture(scope="session")
def viewport():
    return vm.Viewport(1600.0, 900.0)


@pytest.fixture(scope="session")
def small_graph():
    return random_graph(20, seed=42)


@pytest.fixture(scope="session")
def small_scenes(small_graph, viewport):
    nl = vm.compute_nl_layout(small_graph, viewport, seed=42, iterations=60)
    pc = vm.compute_pc_scene(
        small_graph, list(small_graph.attributes.attribute_names[:2]), viewport)
    return nl, pc


@pytest.fixture(scope="session")
def small_mapping(small_scenes):
    return vm.map_elements(*small_scenes)


@pytest.fixture(scope="session")
def les_mis_scenes(les_mis_graph, viewport):
    nl = vm.compute_nl_layout(les_mis_graph, viewport, seed=42, iterations=100)
    pc = vm.compute_pc_scene(
        les_mis_graph, list(les_mis_graph.attributes.attribute_names), viewport)
    return nl, pc
