"""Sampling a compiled timeline into frames, keyframe documents, and SVG.

Output is deterministic and byte-stable: primitives are sorted by layer and
element id, and all serialized coordinates are formatted with exactly three
fractional digits. Internal math stays at full precision.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from .data_model import MultivariateGraph
from .layout import CLUSTER_PALETTE, NlScene, PcScene, Viewport
from .timeline import Timeline, TimelineSample, TransitionSpec, sample, spec_to_dict
from .transition_core import (
    ElementMapping,
    MappingConsistencyError,
    StageTimes,
    Strategy,
    TransGlyph,
    evaluate_strategy,
)

DOC_SCHEMA_VERSION = "1"

LINK_COLOR = "#999999"
AXIS_COLOR = "#333333"
LABEL_COLOR = "#333333"
BACKGROUND_COLOR = "#ffffff"
AXIS_WIDTH = 1.5
LABEL_FONT_SIZE = 12.0

_LAYERS = {"link": 0, "axis": 1, "dot": 2, "polyline": 2, "label": 3}


@dataclass(frozen=True)
class Primitive:
    kind: str  # link | axis | dot | polyline | label
    element_id: str
    points: tuple[tuple[float, float], ...]
    stroke_width: float
    opacity: float
    color_index: int  # -1 = structural color (links/axes/labels)
    radius: float = 0.0
    text: str | None = None

    def sort_key(self):
        return (_LAYERS[self.kind], self.element_id)


@dataclass(frozen=True)
class Frame:
    timestamp: float
    primitives: tuple[Primitive, ...]


@dataclass(frozen=True)
class KeyframeDocument:
    spec: TransitionSpec
    viewport: Viewport
    fps: float
    total_duration: float
    frames: tuple[Frame, ...]


def _finite(points) -> bool:
    return all(math.isfinite(c) for p in points for c in p)


def _sorted_frame(timestamp: float, primitives: list[Primitive]) -> Frame:
    for p in primitives:
        if not _finite(p.points):
            raise ValueError(f"non-finite coordinates in primitive {p.element_id}")
    return Frame(timestamp, tuple(sorted(primitives, key=Primitive.sort_key)))


def _link_primitives(nl: NlScene, opacity: float) -> list[Primitive]:
    prims = []
    for link in nl.links:
        a = nl.dots[link.source].center
        b = nl.dots[link.target].center
        prims.append(Primitive(
            "link", f"link:{link.source}|{link.target}", (a, b),
            link.stroke_width, opacity, -1,
        ))
    return prims


def _axis_primitives(pc: PcScene, opacity: float) -> list[Primitive]:
    prims = []
    for axis in pc.axes:
        prims.append(Primitive(
            "axis", f"axis:{axis.attribute_name}",
            ((axis.x_position, axis.y_top), (axis.x_position, axis.y_bottom)),
            AXIS_WIDTH, opacity * axis.opacity, -1,
        ))
    return prims


def _label_primitives(pc: PcScene, opacity: float) -> list[Primitive]:
    """Enrichment decorations: attribute name above, domain min/max beside."""
    prims = []
    for axis in pc.axes:
        x = axis.x_position
        entries = (
            ("name", (x, axis.y_top - 24.0), axis.attribute_name),
            ("max", (x, axis.y_top - 8.0), f"{axis.domain_max:.1f}"),
            ("min", (x, axis.y_bottom + 16.0), f"{axis.domain_min:.1f}"),
        )
        for which, anchor, text in entries:
            prims.append(Primitive(
                "label", f"label:{axis.attribute_name}:{which}", (anchor,),
                0.0, opacity * axis.opacity, -1, text=text,
            ))
    return prims


def _glyph_primitive(element_id: str, glyph: TransGlyph) -> Primitive:
    if glyph.is_dot:
        return Primitive("dot", element_id, (glyph.vertices[0],),
                         0.0, glyph.opacity, glyph.color_index,
                         radius=glyph.stroke_width / 2.0)
    return Primitive("polyline", element_id, glyph.vertices,
                     glyph.stroke_width, glyph.opacity, glyph.color_index)


def _visible(p: Primitive) -> bool:
    if p.opacity <= 0.0:
        return False
    if p.kind == "dot" and p.radius <= 0.0:
        return False
    return True


def render_nl_frame(nl: NlScene, timestamp: float = 0.0) -> Frame:
    prims = _link_primitives(nl, 1.0)
    for node_id, dot in nl.dots.items():
        prims.append(Primitive("dot", node_id, (dot.center,), 0.0, 1.0,
                               dot.color_index, radius=dot.radius))
    return _sorted_frame(timestamp, prims)


def render_pc_frame(pc: PcScene, timestamp: float = 0.0,
                    with_labels: bool = True) -> Frame:
    prims = _axis_primitives(pc, 1.0)
    for node_id, poly in pc.polylines.items():
        prims.append(Primitive("polyline", node_id, poly.vertices,
                               poly.stroke_width, 1.0, poly.color_index))
    if with_labels:
        prims.extend(p for p in _label_primitives(pc, 1.0) if _visible(p))
    return _sorted_frame(timestamp, [p for p in prims if _visible(p)])


def render_frame(
    graph: MultivariateGraph,
    nl: NlScene,
    pc: PcScene,
    mapping: ElementMapping,
    timeline: Timeline,
    spec: TransitionSpec,
    t: float,
) -> Frame:
    """Render all primitives at absolute time t.

    At t=0 this reproduces the NL scene (links at full opacity, axes hidden);
    at t=total_duration it reproduces the two-axis PC scene with labels.
    """
    if set(nl.dots) != set(mapping.pairs):
        raise MappingConsistencyError("mapping does not cover the NL scene")
    snap: TimelineSample = sample(timeline, t)
    prims: list[Primitive] = []
    prims.extend(_link_primitives(nl, snap.link_opacity))
    prims.extend(_axis_primitives(pc, snap.axis_opacity))
    prims.extend(_label_primitives(pc, snap.label_opacity))
    for node_id, pair in mapping.pairs.items():
        st = snap.stage_times[node_id]
        if timeline.reversed_direction:
            st = StageTimes(1.0 - st.shape, 1.0 - st.pos, 1.0 - st.size)
        glyph, aux = evaluate_strategy(spec.strategy, pair, st,
                                       spec.shape_style, spec.path_strategy)
        prims.append(_glyph_primitive(node_id, glyph))
        if aux is not None:
            prims.append(_glyph_primitive(f"{node_id}:aux", aux))
    return _sorted_frame(round(t, 9), [p for p in prims if _visible(p)])


def emit_keyframes(
    graph: MultivariateGraph,
    nl: NlScene,
    pc: PcScene,
    mapping: ElementMapping,
    timeline: Timeline,
    spec: TransitionSpec,
    fps: float,
) -> KeyframeDocument:
    """Uniformly sampled frames; the last frame lands exactly on the end."""
    if fps <= 0:
        raise ValueError("fps must be > 0")
    total = timeline.total_duration
    count = round(total * fps)
    times = [i / fps for i in range(count)] + [total]
    frames = tuple(
        render_frame(graph, nl, pc, mapping, timeline, spec, t) for t in times
    )
    return KeyframeDocument(spec, nl.viewport, fps, total, frames)


# --- serialization --------------------------------------------------------

def _f3(x: float) -> float:
    """Fixed 3-fractional-digit coordinate formatting for byte-stable output."""
    v = float(f"{x:.3f}")
    return 0.0 if v == 0.0 else v  # normalize -0.0


def _primitive_to_dict(p: Primitive) -> dict:
    doc: dict = {
        "kind": p.kind,
        "elementId": p.element_id,
        "points": [[_f3(x), _f3(y)] for x, y in p.points],
        "strokeWidth": _f3(p.stroke_width),
        "opacity": _f3(p.opacity),
        "colorIndex": p.color_index,
    }
    if p.kind == "dot":
        doc["radius"] = _f3(p.radius)
    if p.text is not None:
        doc["text"] = p.text
    return doc


def document_to_json(doc: KeyframeDocument) -> str:
    payload = {
        "schemaVersion": DOC_SCHEMA_VERSION,
        "spec": spec_to_dict(doc.spec),
        "viewport": {"width": doc.viewport.width, "height": doc.viewport.height,
                     "margin": doc.viewport.margin},
        "palette": list(CLUSTER_PALETTE),
        "fps": doc.fps,
        "totalDuration": _f3(doc.total_duration),
        "frames": [
            {"timestamp": _f3(frame.timestamp),
             "primitives": [_primitive_to_dict(p) for p in frame.primitives]}
            for frame in doc.frames
        ],
    }
    return json.dumps(payload, separators=(",", ":")) + "\n"


def _color(p: Primitive) -> str:
    if p.color_index < 0:
        return {"link": LINK_COLOR, "axis": AXIS_COLOR}.get(p.kind, LABEL_COLOR)
    return CLUSTER_PALETTE[p.color_index % len(CLUSTER_PALETTE)]


def _fmt(x: float) -> str:
    return f"{_f3(x):.3f}"


def emit_svg(frame: Frame, viewport: Viewport) -> str:
    """One SVG element per primitive, deterministic attribute order."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(viewport.width)}" height="{_fmt(viewport.height)}" '
        f'viewBox="0 0 {_fmt(viewport.width)} {_fmt(viewport.height)}">',
        f'<rect x="0" y="0" width="{_fmt(viewport.width)}" '
        f'height="{_fmt(viewport.height)}" fill="{BACKGROUND_COLOR}"/>',
    ]
    for p in frame.primitives:
        color = _color(p)
        opacity = _fmt(p.opacity)
        if p.kind == "dot":
            (cx, cy), = p.points
            lines.append(
                f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(p.radius)}" '
                f'fill="{color}" opacity="{opacity}"/>'
            )
        elif p.kind == "label":
            (x, y), = p.points
            lines.append(
                f'<text x="{_fmt(x)}" y="{_fmt(y)}" fill="{color}" '
                f'font-family="sans-serif" font-size="{_fmt(LABEL_FONT_SIZE)}" '
                f'text-anchor="middle" opacity="{opacity}">{p.text}</text>'
            )
        else:
            points = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in p.points)
            lines.append(
                f'<polyline points="{points}" fill="none" stroke="{color}" '
                f'stroke-width="{_fmt(p.stroke_width)}" stroke-linecap="round" '
                f'stroke-linejoin="round" opacity="{opacity}"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
