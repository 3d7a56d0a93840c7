import json
import math

import pytest

import vismorph as vm
from vismorph.scene_emitter import Primitive, _f3, _sorted_frame
from vismorph.timeline import preset


@pytest.fixture(scope="module")
def basic_setup(small_graph, small_scenes, small_mapping):
    spec = preset("v_basic")
    tl = vm.build_timeline(spec, small_mapping, small_graph, small_scenes[0])
    return spec, tl


@pytest.fixture(scope="module")
def basic_document(small_graph, small_scenes, small_mapping, basic_setup):
    spec, tl = basic_setup
    nl, pc = small_scenes
    return vm.emit_keyframes(small_graph, nl, pc, small_mapping, tl, spec, 50.0)


class TestGoldenEndpoints:
    def test_first_frame_matches_standalone_nl_render(
            self, small_graph, small_scenes, small_mapping, basic_setup):
        spec, tl = basic_setup
        nl, pc = small_scenes
        frame = vm.render_frame(small_graph, nl, pc, small_mapping, tl, spec, 0.0)
        assert vm.emit_svg(frame, nl.viewport) == \
            vm.emit_svg(vm.render_nl_frame(nl), nl.viewport)

    def test_last_frame_matches_standalone_pc_render(
            self, small_graph, small_scenes, small_mapping, basic_setup):
        spec, tl = basic_setup
        nl, pc = small_scenes
        frame = vm.render_frame(small_graph, nl, pc, small_mapping, tl, spec,
                                tl.total_duration)
        assert vm.emit_svg(frame, nl.viewport) == \
            vm.emit_svg(vm.render_pc_frame(pc), nl.viewport)

    def test_reversed_run_swaps_endpoints(
            self, small_graph, small_scenes, small_mapping, basic_setup):
        spec, _ = basic_setup
        rev = spec.reversed()
        nl, pc = small_scenes
        tl = vm.build_timeline(rev, small_mapping, small_graph, nl)
        first = vm.render_frame(small_graph, nl, pc, small_mapping, tl, rev, 0.0)
        last = vm.render_frame(small_graph, nl, pc, small_mapping, tl, rev,
                               tl.total_duration)
        assert vm.emit_svg(first, nl.viewport) == \
            vm.emit_svg(vm.render_pc_frame(pc), nl.viewport)
        assert vm.emit_svg(last, nl.viewport) == \
            vm.emit_svg(vm.render_nl_frame(nl), nl.viewport)


class TestKeyframeDocument:
    def test_frame_count_and_endpoints(self, basic_document):
        doc = basic_document
        assert doc.total_duration == 3.0
        assert len(doc.frames) == 151  # round(3.0 * 50) + 1
        assert doc.frames[0].timestamp == 0.0
        assert doc.frames[-1].timestamp == doc.total_duration

    def test_timestamps_strictly_increasing(self, basic_document):
        times = [f.timestamp for f in basic_document.frames]
        assert all(b > a for a, b in zip(times, times[1:]))

    def test_serialization_is_byte_stable(self, basic_document):
        assert vm.document_to_json(basic_document) == \
            vm.document_to_json(basic_document)

    def test_serialized_floats_have_three_fraction_digits(self, basic_document):
        payload = json.loads(vm.document_to_json(basic_document))
        for frame in payload["frames"]:
            for prim in frame["primitives"]:
                for x, y in prim["points"]:
                    assert x == round(x, 3) and y == round(y, 3)
                assert prim["opacity"] == round(prim["opacity"], 3)

    def test_document_schema(self, basic_document):
        payload = json.loads(vm.document_to_json(basic_document))
        assert payload["schemaVersion"] == "1"
        assert payload["fps"] == 50.0
        assert payload["totalDuration"] == 3.0
        assert payload["viewport"] == {"width": 1600.0, "height": 900.0,
                                       "margin": 60.0}
        assert len(payload["palette"]) == 12
        assert all(c.startswith("#") and len(c) == 7 for c in payload["palette"])
        assert len(payload["frames"]) == 151
        assert payload["spec"]["strategy"] == "simultaneous_connected"

    def test_glyph_ids_conserved_every_frame(self, basic_document, small_graph):
        node_ids = {n.id for n in small_graph.nodes}
        for frame in basic_document.frames:
            glyph_ids = {p.element_id for p in frame.primitives
                         if p.kind in ("dot", "polyline")
                         and not p.element_id.endswith(":aux")}
            assert glyph_ids == node_ids

    def test_primitives_sorted_by_layer_then_id(self, basic_document):
        layers = {"link": 0, "axis": 1, "dot": 2, "polyline": 2, "label": 3}
        for frame in basic_document.frames:
            keys = [(layers[p.kind], p.element_id) for p in frame.primitives]
            assert keys == sorted(keys)

    def test_fps_must_be_positive(self, small_graph, small_scenes,
                                  small_mapping, basic_setup):
        spec, tl = basic_setup
        nl, pc = small_scenes
        with pytest.raises(ValueError):
            vm.emit_keyframes(small_graph, nl, pc, small_mapping, tl, spec, 0.0)


class TestSvg:
    def test_structure(self, small_scenes):
        nl, _ = small_scenes
        svg = vm.emit_svg(vm.render_nl_frame(nl), nl.viewport)
        assert svg.startswith('<?xml version="1.0" encoding="UTF-8"?>')
        assert '<svg xmlns="http://www.w3.org/2000/svg"' in svg
        assert svg.endswith("</svg>\n")
        assert svg.count("<circle") == len(nl.dots)
        assert svg.count("<polyline") == len(nl.links)

    def test_final_frame_has_axis_labels(self, small_scenes):
        _, pc = small_scenes
        svg = vm.emit_svg(vm.render_pc_frame(pc), pc.viewport)
        assert svg.count("<text") == 3 * len(pc.axes)
        for axis in pc.axes:
            assert f">{axis.attribute_name}</text>" in svg

    def test_cluster_colors_come_from_palette(self, small_scenes):
        nl, _ = small_scenes
        svg = vm.emit_svg(vm.render_nl_frame(nl), nl.viewport)
        for dot in nl.dots.values():
            palette_color = vm.layout.CLUSTER_PALETTE[
                dot.color_index % len(vm.layout.CLUSTER_PALETTE)]
            assert f'fill="{palette_color}"' in svg


class TestValidation:
    def test_non_finite_coordinates_rejected(self):
        bad = Primitive("dot", "x", ((math.nan, 0.0),), 0.0, 1.0, 0, radius=2.0)
        with pytest.raises(ValueError):
            _sorted_frame(0.0, [bad])

    def test_mapping_scene_mismatch_rejected(
            self, small_graph, small_scenes, basic_setup, les_mis_mapping):
        spec, tl = basic_setup
        nl, pc = small_scenes
        from vismorph.transition_core import MappingConsistencyError
        with pytest.raises(MappingConsistencyError):
            vm.render_frame(small_graph, nl, pc, les_mis_mapping, tl, spec, 0.0)


class TestFormatting:
    def test_negative_zero_normalized(self):
        assert str(_f3(-0.0001)) == "0.0"

    def test_rounding(self):
        assert _f3(1.23456) == 1.235
        assert _f3(999.9996) == 1000.0
