"""Geometric core of the dot-to-line transition.

Every function here is a pure evaluation at normalized stage times in [0, 1]:
shape (dot becomes a line), size (the line grows to span both axes), and
position (the glyph relocates from the node-link layout to its place in the
parallel-coordinates plot). Links fade out and axes fade in around these
element-level changes; that bookkeeping lives in the element mapping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .layout import Axis, NlScene, PcScene, PolylineGlyph

Point = tuple[float, float]

# length of the intermediate oriented segment, as a fraction of the final line
ORIENTED_SEED_FRACTION = 0.15
# perpendicular distance below which the bent line's middle vertex is dropped
BENT_COLLAPSE_DISTANCE = 0.25


class ChangeKind(Enum):
    SHAPE = "shape"
    SIZE = "size"
    POS = "pos"


class PathStrategy(Enum):
    VERTICAL_ONLY = "vertical_only"
    SHORTEST_PATH = "shortest_path"


class Strategy(Enum):
    SUCCESSIVE_UNCONNECTED = "successive_unconnected"
    SIMULTANEOUS_UNCONNECTED = "simultaneous_unconnected"
    SIMULTANEOUS_CONNECTED = "simultaneous_connected"


@dataclass(frozen=True)
class ShapeStyle:
    kind: str  # "geometric" | "oriented" | "bent"
    arm_fraction: float = 0.15

    GEOMETRIC = "geometric"
    ORIENTED = "oriented"
    BENT = "bent"

    def __post_init__(self):
        if self.kind not in (self.GEOMETRIC, self.ORIENTED, self.BENT):
            raise ValueError(f"unknown shape style: {self.kind!r}")
        if self.kind == self.BENT and not 0.0 < self.arm_fraction <= 0.5:
            raise ValueError("arm_fraction must be in (0, 0.5]")


@dataclass(frozen=True)
class StageTimes:
    shape: float = 0.0
    pos: float = 0.0
    size: float = 0.0


@dataclass(frozen=True)
class TransGlyph:
    vertices: tuple[Point, ...]  # 2 points, or 3 while bent
    stroke_width: float
    opacity: float
    color_index: int

    @property
    def is_dot(self) -> bool:
        first = self.vertices[0]
        return all(
            abs(v[0] - first[0]) < 1e-9 and abs(v[1] - first[1]) < 1e-9
            for v in self.vertices[1:]
        )


@dataclass(frozen=True)
class ElementPair:
    node_id: str
    dot_center: Point
    dot_radius: float
    line_start: Point  # vertex on the first axis
    line_end: Point    # vertex on the second axis
    line_width: float
    color_index: int

    @property
    def line_midpoint(self) -> Point:
        return (
            (self.line_start[0] + self.line_end[0]) / 2.0,
            (self.line_start[1] + self.line_end[1]) / 2.0,
        )


@dataclass(frozen=True)
class ElementMapping:
    pairs: dict[str, ElementPair]
    link_ids: tuple[tuple[str, str], ...]  # links to fade out
    axis_ids: tuple[str, ...]              # axes to fade in


class MappingConsistencyError(ValueError):
    pass


def _lerp(a: Point, b: Point, t: float) -> Point:
    if t == 1.0:  # exact arrival, immune to a + (b - a) rounding
        return b
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def map_elements(nl: NlScene, pc: PcScene) -> ElementMapping:
    """Pair each node's dot with its line on the first two PC axes."""
    nl_ids = set(nl.dots)
    pc_ids = set(pc.polylines)
    if nl_ids != pc_ids:
        only_nl = sorted(nl_ids - pc_ids)
        only_pc = sorted(pc_ids - nl_ids)
        raise MappingConsistencyError(
            f"scenes disagree on nodes (only NL: {only_nl}, only PC: {only_pc})"
        )
    if len(pc.axes) < 2:
        raise MappingConsistencyError("PC scene needs at least 2 axes")
    pairs = {}
    for node_id, dot in nl.dots.items():
        poly = pc.polylines[node_id]
        pairs[node_id] = ElementPair(
            node_id=node_id,
            dot_center=dot.center,
            dot_radius=dot.radius,
            line_start=poly.vertices[0],
            line_end=poly.vertices[1],
            line_width=poly.stroke_width,
            color_index=dot.color_index,
        )
    links = tuple((l.source, l.target) for l in nl.links)
    axes = tuple(a.attribute_name for a in pc.axes[:2])
    return ElementMapping(pairs, links, axes)


def position_path(start: Point, target: Point, strategy: PathStrategy, s: float) -> Point:
    """Relocation path: straight line, or vertical-only (x held at start)."""
    if strategy is PathStrategy.SHORTEST_PATH:
        return _lerp(start, target, s)
    if s == 1.0:
        return (start[0], target[1])
    return (start[0], start[1] + (target[1] - start[1]) * s)


def interpolate_geometric(pair: ElementPair, t: float) -> TransGlyph:
    """Plain dot-to-line interpolation: both endpoints and the width lerp."""
    e1 = _lerp(pair.dot_center, pair.line_start, t)
    e2 = _lerp(pair.dot_center, pair.line_end, t)
    width = (1.0 - t) * 2.0 * pair.dot_radius + t * pair.line_width
    return TransGlyph((e1, e2), width, 1.0, pair.color_index)


def _glyph_center(pair: ElementPair, s_pos: float, path: PathStrategy) -> Point:
    return position_path(pair.dot_center, pair.line_midpoint, path, s_pos)


def _pos_residual(pair: ElementPair, path: PathStrategy) -> Point:
    """Offset between the completed position path and the true line midpoint.

    Zero for the shortest path; for vertical-only movement it is the held
    horizontal component, absorbed during the size stage because arm growth
    targets the absolute endpoints on the axes.
    """
    reached = position_path(pair.dot_center, pair.line_midpoint, path, 1.0)
    mid = pair.line_midpoint
    return (mid[0] - reached[0], mid[1] - reached[1])


def _morph_width(pair: ElementPair, s: float) -> float:
    return (1.0 - s) * 2.0 * pair.dot_radius + s * pair.line_width


def interpolate_oriented(
    pair: ElementPair,
    s_shape: float,
    s_pos: float,
    s_size: float,
    path: PathStrategy,
) -> TransGlyph:
    """Shape stage grows a short segment already sloped like the final line;
    the size stage extends both arms symmetrically to the axis endpoints."""
    center = _glyph_center(pair, s_pos, path)
    mid = pair.line_midpoint
    halves = (
        (pair.line_start[0] - mid[0], pair.line_start[1] - mid[1]),
        (pair.line_end[0] - mid[0], pair.line_end[1] - mid[1]),
    )
    seed = s_shape * ORIENTED_SEED_FRACTION
    vertices = []
    for half, target in zip(halves, (pair.line_start, pair.line_end)):
        sprout = (center[0] + seed * half[0], center[1] + seed * half[1])
        vertices.append(_lerp(sprout, target, s_size))
    return TransGlyph(tuple(vertices), _morph_width(pair, s_shape), 1.0,
                      pair.color_index)


def _perpendicular_distance(p: Point, a: Point, b: Point) -> float:
    ab = (b[0] - a[0], b[1] - a[1])
    length = math.hypot(*ab)
    if length < 1e-12:
        return math.hypot(p[0] - a[0], p[1] - a[1])
    cross = ab[0] * (p[1] - a[1]) - ab[1] * (p[0] - a[0])
    return abs(cross) / length


def interpolate_bent(
    pair: ElementPair,
    s_shape: float,
    s_pos: float,
    s_size: float,
    arm_fraction: float,
    path: PathStrategy = PathStrategy.SHORTEST_PATH,
) -> TransGlyph:
    """Three-vertex glyph whose arms always aim at the final axis endpoints.

    Arm tips sit at a fraction of the middle-vertex-to-target distance:
    s_shape * arm_fraction during the shape stage, advancing to 1 during the
    size stage. The middle vertex rides the position path and settles onto
    the chord as the size stage completes, so the glyph collapses to the
    exact final 2-vertex line.
    """
    center = _glyph_center(pair, s_pos, path)
    middle = _lerp(center, pair.line_midpoint, s_size)
    fraction = 1.0 if s_size == 1.0 else (
        s_shape * arm_fraction + s_size * (1.0 - s_shape * arm_fraction))
    tips = (
        _lerp(middle, pair.line_start, fraction),
        _lerp(middle, pair.line_end, fraction),
    )
    width = _morph_width(pair, s_shape)
    if _perpendicular_distance(middle, tips[0], tips[1]) < BENT_COLLAPSE_DISTANCE:
        return TransGlyph(tips, width, 1.0, pair.color_index)
    return TransGlyph((tips[0], middle, tips[1]), width, 1.0, pair.color_index)


def _connected_glyph(
    pair: ElementPair, st: StageTimes, style: ShapeStyle, path: PathStrategy
) -> TransGlyph:
    if style.kind == ShapeStyle.ORIENTED:
        return interpolate_oriented(pair, st.shape, st.pos, st.size, path)
    if style.kind == ShapeStyle.BENT:
        return interpolate_bent(pair, st.shape, st.pos, st.size,
                                style.arm_fraction, path)
    # geometric, decomposed per change kind; with all stage times equal and a
    # shortest path this reduces exactly to interpolate_geometric
    if st.size == 1.0 and st.pos == 1.0:
        return TransGlyph((pair.line_start, pair.line_end),
                          _morph_width(pair, st.shape), 1.0, pair.color_index)
    center = _glyph_center(pair, st.pos, path)
    mid = pair.line_midpoint
    residual = _pos_residual(pair, path)
    vertices = []
    for target in (pair.line_start, pair.line_end):
        half = (target[0] - mid[0], target[1] - mid[1])
        vertices.append((
            center[0] + st.size * (half[0] + residual[0]),
            center[1] + st.size * (half[1] + residual[1]),
        ))
    return TransGlyph(tuple(vertices), _morph_width(pair, st.shape), 1.0,
                      pair.color_index)


def evaluate_strategy(
    strategy: Strategy,
    pair: ElementPair,
    st: StageTimes,
    style: ShapeStyle,
    path: PathStrategy,
) -> tuple[TransGlyph, TransGlyph | None]:
    """Evaluate one element under a transformation strategy.

    Returns the element glyph plus, for the simultaneous-unconnected
    strategy, the auxiliary line that grows from the first axis while the dot
    shrinks (None once it has merged into the element glyph).
    """
    if strategy is Strategy.SIMULTANEOUS_CONNECTED:
        return _connected_glyph(pair, st, style, path), None

    if strategy is Strategy.SUCCESSIVE_UNCONNECTED:
        # dot shrinks while moving to its spot on the first axis, then the
        # line elongates from there toward the second axis
        point = position_path(pair.dot_center, pair.line_start, path, st.pos)
        e1 = _lerp(point, pair.line_start, st.size)
        e2 = _lerp(point, pair.line_end, st.size)
        return TransGlyph((e1, e2), _morph_width(pair, st.pos), 1.0,
                          pair.color_index), None

    if strategy is Strategy.SIMULTANEOUS_UNCONNECTED:
        growth = st.size
        if growth >= 1.0:
            # the dot has vanished; the grown line is now the element
            glyph = TransGlyph((pair.line_start, pair.line_end),
                               pair.line_width, 1.0, pair.color_index)
            return glyph, None
        center = _glyph_center(pair, st.pos, path)
        dot = TransGlyph((center, center),
                         (1.0 - growth) * 2.0 * pair.dot_radius,
                         1.0 - growth, pair.color_index)
        aux = None
        if growth > 0.0:
            tip = _lerp(pair.line_start, pair.line_end, growth)
            aux = TransGlyph((pair.line_start, tip), pair.line_width, 1.0,
                             pair.color_index)
        return dot, aux

    raise ValueError(f"unknown strategy: {strategy!r}")


def accordion_expand(pc2: PcScene, pc_n: PcScene, s: float) -> PcScene:
    """Slide the axes beyond the second one out from a collapsed position.

    Axes 1-2 and the polyline vertices on them are carried over untouched;
    each emerging axis moves from the second axis's x to its final x with
    opacity s, and the corresponding polyline vertices unfold with it.
    """
    if len(pc2.axes) != 2:
        raise MappingConsistencyError("pc2 must have exactly 2 axes")
    first_two = tuple(a.attribute_name for a in pc2.axes)
    full = tuple(a.attribute_name for a in pc_n.axes)
    if full[:2] != first_two:
        raise MappingConsistencyError(
            f"axis order mismatch: {full[:2]} vs {first_two}"
        )
    if pc_n.axes[:2] != pc2.axes:
        raise MappingConsistencyError(
            "first two axes of the n-axis scene must equal pc2's axes"
        )
    if s >= 1.0:
        return pc_n
    x2 = pc2.axes[1].x_position
    axes = list(pc2.axes)
    for axis in pc_n.axes[2:]:
        x = x2 + (axis.x_position - x2) * s
        axes.append(Axis(axis.attribute_name, x, axis.y_top, axis.y_bottom,
                         axis.domain_min, axis.domain_max, opacity=s))
    polylines = {}
    for node_id, base in pc2.polylines.items():
        final = pc_n.polylines[node_id]
        vertices = list(base.vertices)
        anchor = base.vertices[1]
        for j, final_vertex in enumerate(final.vertices[2:], start=2):
            vertices.append((
                axes[j].x_position,
                anchor[1] + (final_vertex[1] - anchor[1]) * s,
            ))
        polylines[node_id] = PolylineGlyph(node_id, tuple(vertices),
                                           base.stroke_width, base.color_index)
    return PcScene(tuple(axes), polylines, pc2.viewport)
