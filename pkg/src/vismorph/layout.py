"""Endpoint scene construction: node-link layout and parallel-coordinates arrangement.

Both scenes live in the same viewport pixel space so that transition geometry
can interpolate between them directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .data_model import MultivariateGraph

# Fixed categorical palette indexed by cluster id (12 entries cover the 11
# clusters of the bundled dataset).
CLUSTER_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
)

DEFAULT_DOT_RADIUS = 6.0
DEFAULT_LINK_WIDTH = 1.0
DEFAULT_LINE_WIDTH = 2.0
DEFAULT_ITERATIONS = 300


@dataclass(frozen=True)
class Viewport:
    width: float
    height: float
    margin: float = 60.0

    def __post_init__(self):
        if not (self.width > 2 * self.margin and self.height > 2 * self.margin):
            raise ValueError("viewport must be larger than twice its margin")


@dataclass(frozen=True)
class DotGlyph:
    node_id: str
    center: tuple[float, float]
    radius: float
    color_index: int


@dataclass(frozen=True)
class LinkGlyph:
    source: str
    target: str
    stroke_width: float = DEFAULT_LINK_WIDTH


@dataclass(frozen=True)
class NlScene:
    dots: dict[str, DotGlyph]
    links: tuple[LinkGlyph, ...]
    viewport: Viewport


@dataclass(frozen=True)
class Axis:
    attribute_name: str
    x_position: float
    y_top: float
    y_bottom: float
    domain_min: float
    domain_max: float
    opacity: float = 1.0


@dataclass(frozen=True)
class PolylineGlyph:
    node_id: str
    vertices: tuple[tuple[float, float], ...]
    stroke_width: float
    color_index: int


@dataclass(frozen=True)
class PcScene:
    axes: tuple[Axis, ...]
    polylines: dict[str, PolylineGlyph]
    viewport: Viewport


def attribute_to_axis_y(value: float, axis: Axis) -> float:
    """Map an attribute value onto axis pixel space (larger value = higher)."""
    if not math.isfinite(value):
        raise ValueError(f"non-finite attribute value: {value!r}")
    if axis.domain_min == axis.domain_max:
        return (axis.y_top + axis.y_bottom) / 2.0
    frac = (value - axis.domain_min) / (axis.domain_max - axis.domain_min)
    y = axis.y_bottom - frac * (axis.y_bottom - axis.y_top)
    return min(max(y, axis.y_top), axis.y_bottom)


def _rescale_into(positions: np.ndarray, viewport: Viewport) -> np.ndarray:
    """Affinely map positions (per axis) into the viewport minus margin."""
    out = np.empty_like(positions)
    bounds = (
        (viewport.margin, viewport.width - viewport.margin),
        (viewport.margin, viewport.height - viewport.margin),
    )
    for axis, (lo, hi) in enumerate(bounds):
        col = positions[:, axis]
        cmin, cmax = col.min(), col.max()
        if cmax - cmin < 1e-12:
            out[:, axis] = (lo + hi) / 2.0
        else:
            out[:, axis] = lo + (col - cmin) / (cmax - cmin) * (hi - lo)
    return out


def compute_nl_layout(
    graph: MultivariateGraph,
    viewport: Viewport,
    seed: int,
    iterations: int = DEFAULT_ITERATIONS,
    dot_radius: float = DEFAULT_DOT_RADIUS,
    degree_proportional_radius: bool = False,
) -> NlScene:
    """Seeded Fruchterman-Reingold layout with a fixed iteration count.

    Nodes carrying a fixed position are pinned during the iterations; the
    final point cloud is affinely rescaled into the viewport, so an all-fixed
    graph comes out as a plain rescaling of the given positions.
    """
    n = len(graph.nodes)
    ids = graph.node_ids
    index = {node_id: i for i, node_id in enumerate(ids)}

    rng = np.random.Generator(np.random.PCG64(seed))
    positions = rng.uniform(0.0, 1.0, (n, 2))
    pinned = np.zeros(n, dtype=bool)
    for i, node in enumerate(graph.nodes):
        if node.fixed_position is not None:
            positions[i] = node.fixed_position
            pinned[i] = True
    if pinned.any() and not pinned.all():
        # keep free nodes inside the pinned bounding box so scales agree
        fixed = positions[pinned]
        span = np.maximum(fixed.max(axis=0) - fixed.min(axis=0), 1e-6)
        positions[~pinned] = fixed.min(axis=0) + positions[~pinned] * span

    if n > 1 and not pinned.all() and iterations > 0:
        area = 1.0
        k = math.sqrt(area / n)
        edge_idx = np.array(
            [(index[e.source], index[e.target]) for e in graph.edges], dtype=int
        ).reshape(-1, 2)
        temp0 = 0.1
        for step in range(iterations):
            delta = positions[:, None, :] - positions[None, :, :]
            dist = np.linalg.norm(delta, axis=2)
            np.fill_diagonal(dist, 1.0)
            dist = np.maximum(dist, 1e-9)
            # repulsion k^2/d between all pairs
            force = (k * k / dist**2)[:, :, None] * delta
            np.einsum("iij->ij", force)[:] = 0.0
            disp = force.sum(axis=1)
            # attraction d^2/k along edges
            if len(edge_idx):
                ev = positions[edge_idx[:, 0]] - positions[edge_idx[:, 1]]
                ed = np.maximum(np.linalg.norm(ev, axis=1, keepdims=True), 1e-9)
                pull = ev * (ed / k)
                np.add.at(disp, edge_idx[:, 0], -pull)
                np.add.at(disp, edge_idx[:, 1], pull)
            temp = temp0 * (1.0 - step / iterations)
            length = np.maximum(np.linalg.norm(disp, axis=1, keepdims=True), 1e-9)
            move = disp / length * np.minimum(length, temp)
            move[pinned] = 0.0
            positions += move

    positions = _rescale_into(positions, viewport)

    degrees = {node_id: 0 for node_id in ids}
    for e in graph.edges:
        degrees[e.source] += 1
        degrees[e.target] += 1
    dots = {}
    for i, node in enumerate(graph.nodes):
        radius = dot_radius
        if degree_proportional_radius:
            radius = dot_radius * (0.5 + math.sqrt(degrees[node.id]) / 4.0)
        dots[node.id] = DotGlyph(
            node.id, (float(positions[i, 0]), float(positions[i, 1])), radius,
            node.cluster_id,
        )
    links = tuple(LinkGlyph(e.source, e.target) for e in graph.edges)
    return NlScene(dots, links, viewport)


def _axis_x_positions(count: int, width: float) -> list[float]:
    if count == 2:
        return [0.30 * width, 0.70 * width]
    return list(np.linspace(0.15 * width, 0.85 * width, count))


def _build_axes(
    graph: MultivariateGraph,
    axis_order: list[str],
    viewport: Viewport,
    x_positions: list[float],
) -> tuple[Axis, ...]:
    table = graph.attributes
    axes = []
    for name, x in zip(axis_order, x_positions):
        if name not in table.attribute_names:
            raise ValueError(f"unknown attribute name: {name!r}")
        column = table.column(name, graph.node_ids)
        axes.append(Axis(
            attribute_name=name,
            x_position=float(x),
            y_top=viewport.margin,
            y_bottom=viewport.height - viewport.margin,
            domain_min=min(column),
            domain_max=max(column),
        ))
    return tuple(axes)


def _build_polylines(
    graph: MultivariateGraph, axes: tuple[Axis, ...]
) -> dict[str, PolylineGlyph]:
    polylines = {}
    for node in graph.nodes:
        vertices = tuple(
            (axis.x_position, attribute_to_axis_y(
                graph.attributes.value(node.id, axis.attribute_name), axis))
            for axis in axes
        )
        polylines[node.id] = PolylineGlyph(
            node.id, vertices, DEFAULT_LINE_WIDTH, node.cluster_id
        )
    return polylines


def compute_pc_scene(
    graph: MultivariateGraph,
    axis_order: list[str],
    viewport: Viewport,
) -> PcScene:
    """Parallel-coordinates scene: 2 axes at 0.30/0.70 of the width, n axes
    equally spaced across [0.15, 0.85] of the width."""
    if not axis_order:
        raise ValueError("axis_order must be non-empty")
    xs = _axis_x_positions(len(axis_order), viewport.width)
    axes = _build_axes(graph, axis_order, viewport, xs)
    return PcScene(axes, _build_polylines(graph, axes), viewport)


def extend_pc_scene(
    pc2: PcScene,
    graph: MultivariateGraph,
    axis_order: list[str],
    viewport: Viewport,
) -> PcScene:
    """n-axis scene that keeps pc2's two axes in place, for accordion use.

    The additional axes occupy (x2, 0.85*width], equally spaced, so that the
    first two axes of the result are byte-identical to pc2's.
    """
    if len(axis_order) < 2:
        raise ValueError("axis_order must have at least 2 attributes")
    first_two = [a.attribute_name for a in pc2.axes]
    if axis_order[:2] != first_two:
        raise ValueError(
            f"axis_order must start with pc2's axes {first_two}, got {axis_order[:2]}"
        )
    extra = len(axis_order) - 2
    if extra == 0:
        return pc2
    x2 = pc2.axes[1].x_position
    x_right = 0.85 * viewport.width
    xs = [pc2.axes[0].x_position, x2]
    xs += [x2 + (m + 1) / extra * (x_right - x2) for m in range(extra)]
    new_axes = _build_axes(graph, axis_order[2:], viewport, xs[2:])
    axes = pc2.axes + new_axes
    return PcScene(axes, _build_polylines(graph, axes), viewport)
