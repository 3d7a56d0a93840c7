import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import vismorph as vm
from vismorph.data_model import AttributeTable, Edge, MultivariateGraph, Node
from vismorph.layout import Axis

from conftest import random_graph


def make_axis(domain=(0.0, 10.0), y_top=100.0, y_bottom=500.0):
    return Axis("a", 300.0, y_top, y_bottom, domain[0], domain[1])


class TestAttributeToAxisY:
    def test_domain_min_maps_to_bottom(self):
        assert vm.attribute_to_axis_y(0.0, make_axis()) == 500.0

    def test_domain_max_maps_to_top(self):
        assert vm.attribute_to_axis_y(10.0, make_axis()) == 100.0

    def test_linear_interpolation(self):
        assert vm.attribute_to_axis_y(2.5, make_axis()) == pytest.approx(400.0)

    def test_degenerate_domain_midpoint(self):
        axis = make_axis(domain=(5.0, 5.0))
        assert vm.attribute_to_axis_y(5.0, axis) == 300.0

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            vm.attribute_to_axis_y(float("nan"), make_axis())

    @given(st.floats(-50.0, 50.0), st.floats(-50.0, 50.0))
    def test_monotone_non_increasing(self, a, b):
        axis = make_axis(domain=(-50.0, 50.0))
        lo, hi = sorted((a, b))
        assert vm.attribute_to_axis_y(hi, axis) <= vm.attribute_to_axis_y(lo, axis)


class TestPcScene:
    def test_two_axis_positions(self, les_mis_graph):
        pc = vm.compute_pc_scene(les_mis_graph, ["attr1", "attr2"],
                                 vm.Viewport(1000.0, 600.0, 50.0))
        assert [a.x_position for a in pc.axes] == [300.0, 700.0]

    def test_four_axis_positions(self, les_mis_graph):
        table = vm.generate_attributes(
            les_mis_graph, 4, vm.PatternKind(vm.PatternKind.UNIFORM), 3)
        graph = les_mis_graph.with_attributes(table)
        pc = vm.compute_pc_scene(graph, list(table.attribute_names),
                                 vm.Viewport(1000.0, 600.0, 50.0))
        xs = [a.x_position for a in pc.axes]
        assert xs == pytest.approx([150.0, 383.33, 616.67, 850.0], abs=0.01)

    def test_vertices_exactly_on_axes(self, les_mis_scenes):
        _, pc = les_mis_scenes
        for poly in pc.polylines.values():
            for vertex, axis in zip(poly.vertices, pc.axes):
                assert vertex[0] == axis.x_position
                assert axis.y_top <= vertex[1] <= axis.y_bottom

    def test_min_value_at_bottom(self, les_mis_graph, viewport):
        pc = vm.compute_pc_scene(les_mis_graph, ["attr1"], viewport)
        axis = pc.axes[0]
        column = les_mis_graph.attributes.column("attr1",
                                                 les_mis_graph.node_ids)
        low_node = les_mis_graph.node_ids[column.index(min(column))]
        assert pc.polylines[low_node].vertices[0] == (axis.x_position,
                                                      axis.y_bottom)

    def test_unknown_attribute(self, les_mis_graph, viewport):
        with pytest.raises(ValueError, match="nope"):
            vm.compute_pc_scene(les_mis_graph, ["nope"], viewport)


class TestNlLayout:
    def test_deterministic(self, small_graph, viewport):
        one = vm.compute_nl_layout(small_graph, viewport, seed=5, iterations=50)
        two = vm.compute_nl_layout(small_graph, viewport, seed=5, iterations=50)
        assert one == two

    def test_all_dots_in_bounds(self, les_mis_scenes, viewport):
        nl, _ = les_mis_scenes
        for dot in nl.dots.values():
            assert viewport.margin <= dot.center[0] <= viewport.width - viewport.margin
            assert viewport.margin <= dot.center[1] <= viewport.height - viewport.margin

    def test_color_index_is_cluster(self, les_mis_graph, les_mis_scenes):
        nl, _ = les_mis_scenes
        for node in les_mis_graph.nodes:
            assert nl.dots[node.id].color_index == node.cluster_id

    def test_fixed_positions_pass_through(self, viewport):
        nodes = tuple(
            Node(chr(97 + i), "", 0, fixed_position=pos)
            for i, pos in enumerate([(0.0, 0.0), (2.0, 1.0), (4.0, 2.0)])
        )
        graph = MultivariateGraph(nodes, (), AttributeTable(()), 1)
        nl = vm.compute_nl_layout(graph, viewport, seed=1, iterations=50)
        xs = [nl.dots[n.id].center[0] for n in nodes]
        ys = [nl.dots[n.id].center[1] for n in nodes]
        # affine rescale preserves relative spacing per axis
        assert xs[1] - xs[0] == pytest.approx(xs[2] - xs[1])
        assert ys[1] - ys[0] == pytest.approx(ys[2] - ys[1])
        assert xs[0] == viewport.margin
        assert xs[2] == viewport.width - viewport.margin

    def test_path_graph_keeps_middle_between_ends(self, viewport):
        nodes = tuple(Node(n, n, 0) for n in "abc")
        graph = MultivariateGraph(
            nodes, (Edge("a", "b"), Edge("b", "c")), AttributeTable(()), 1)
        nl = vm.compute_nl_layout(graph, viewport, seed=7, iterations=300)
        a, b, c = (nl.dots[n].center for n in "abc")
        slack = 0.10 * viewport.width
        lo_x, hi_x = sorted((a[0], c[0]))
        lo_y, hi_y = sorted((a[1], c[1]))
        assert lo_x - slack <= b[0] <= hi_x + slack
        assert lo_y - slack <= b[1] <= hi_y + slack

    def test_viewport_must_exceed_margin(self):
        with pytest.raises(ValueError):
            vm.Viewport(100.0, 100.0, 60.0)


class TestExtendPcScene:
    def test_keeps_first_two_axes(self, viewport):
        graph = random_graph(10, seed=3)
        table = vm.generate_attributes(
            graph, 5, vm.PatternKind(vm.PatternKind.UNIFORM), 3)
        graph = graph.with_attributes(table)
        names = list(table.attribute_names)
        pc2 = vm.compute_pc_scene(graph, names[:2], viewport)
        pc5 = vm.extend_pc_scene(pc2, graph, names, viewport)
        assert pc5.axes[:2] == pc2.axes
        assert len(pc5.axes) == 5
        assert pc5.axes[-1].x_position == pytest.approx(0.85 * viewport.width)
        for node_id, poly in pc2.polylines.items():
            assert pc5.polylines[node_id].vertices[:2] == poly.vertices

    def test_order_mismatch_rejected(self, viewport):
        graph = random_graph(6, seed=4)
        table = vm.generate_attributes(
            graph, 3, vm.PatternKind(vm.PatternKind.UNIFORM), 4)
        graph = graph.with_attributes(table)
        pc2 = vm.compute_pc_scene(graph, ["attr1", "attr2"], viewport)
        with pytest.raises(ValueError, match="must start with"):
            vm.extend_pc_scene(pc2, graph, ["attr2", "attr1", "attr3"], viewport)
