"""Compilation of a transition spec into an absolute-time timeline.

The transition runs in three phases: alignment (links fade out, the two axes
fade in), transformation (per-element shape/size/position windows, possibly
staged and staggered), and enrichment (labels appear). The compiled timeline
is the single source of truth for sampling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum

from .data_model import MultivariateGraph
from .layout import NlScene
from .transition_core import (
    ChangeKind,
    ElementMapping,
    PathStrategy,
    ShapeStyle,
    StageTimes,
    Strategy,
)

SPEC_SCHEMA_VERSION = "1"

# the three staging sequences, plus fully simultaneous changes
ALLOWED_STAGING_ORDERS = (
    (ChangeKind.POS, ChangeKind.SHAPE, ChangeKind.SIZE),
    (ChangeKind.SHAPE, ChangeKind.SIZE, ChangeKind.POS),
    (ChangeKind.SHAPE, ChangeKind.POS, ChangeKind.SIZE),
)


class EasingKind(Enum):
    LINEAR = "linear"
    CUBIC_IN_OUT = "cubic_in_out"


def ease(s: float, kind: EasingKind) -> float:
    if kind is EasingKind.LINEAR:
        return s
    if s < 0.5:
        return 4.0 * s * s * s
    return 1.0 - (-2.0 * s + 2.0) ** 3 / 2.0


@dataclass(frozen=True)
class SortKey:
    kind: str  # "attribute_value" | "spatial_distance" | "cluster_then_id"
    attribute: str | None = None
    descending: bool = True

    ATTRIBUTE = "attribute_value"
    SPATIAL = "spatial_distance"
    CLUSTER = "cluster_then_id"


@dataclass(frozen=True)
class StaggerConfig:
    per_node_delay: float = 0.02
    per_cluster_delay: float = 0.4
    sort_key: SortKey = field(default_factory=lambda: SortKey(SortKey.CLUSTER))
    scope: str = "whole_transformation"  # or "per_stage"

    def __post_init__(self):
        if self.per_node_delay < 0 or self.per_cluster_delay < 0:
            raise ValueError("stagger delays must be >= 0")
        if self.scope not in ("whole_transformation", "per_stage"):
            raise ValueError(f"unknown stagger scope: {self.scope!r}")


@dataclass(frozen=True)
class TransitionSpec:
    variant_name: str
    strategy: Strategy
    shape_style: ShapeStyle
    path_strategy: PathStrategy
    staging_order: tuple[ChangeKind, ...] | None  # None = simultaneous
    alignment_duration: float
    stage_duration: float
    enrichment_duration: float
    stagger: StaggerConfig | None = None
    easing_motion: EasingKind = EasingKind.CUBIC_IN_OUT
    easing_opacity: EasingKind = EasingKind.LINEAR
    direction: str = "nl_to_pc"  # or "pc_to_nl"

    def __post_init__(self):
        if min(self.alignment_duration, self.stage_duration,
               self.enrichment_duration) < 0:
            raise ValueError("durations must be >= 0")
        if self.staging_order is not None:
            order = self.staging_order
            # a reversed-direction spec carries the mirrored sequence
            if self.direction == "pc_to_nl":
                order = tuple(reversed(order))
            if order not in ALLOWED_STAGING_ORDERS:
                raise ValueError(
                    f"staging order {self.staging_order} is not one of the "
                    f"supported sequences"
                )
        if self.direction not in ("nl_to_pc", "pc_to_nl"):
            raise ValueError(f"unknown direction: {self.direction!r}")

    def reversed(self) -> "TransitionSpec":
        order = None if self.staging_order is None \
            else tuple(reversed(self.staging_order))
        direction = "pc_to_nl" if self.direction == "nl_to_pc" else "nl_to_pc"
        return replace(self, direction=direction, staging_order=order)


Window = tuple[float, float]


@dataclass(frozen=True)
class Timeline:
    alignment: Window
    transformation: Window
    enrichment: Window
    per_element: dict[str, dict[ChangeKind, Window]]
    link_fade: Window
    axis_fade: Window
    total_duration: float
    easing_motion: EasingKind
    easing_opacity: EasingKind
    reversed_direction: bool = False

    def mirrored(self) -> "Timeline":
        total = self.total_duration

        def flip(w: Window) -> Window:
            return (total - w[1], total - w[0])

        return Timeline(
            alignment=flip(self.alignment),
            transformation=flip(self.transformation),
            enrichment=flip(self.enrichment),
            per_element={
                node: {kind: flip(w) for kind, w in windows.items()}
                for node, windows in self.per_element.items()
            },
            link_fade=flip(self.link_fade),
            axis_fade=flip(self.axis_fade),
            total_duration=total,
            easing_motion=self.easing_motion,
            easing_opacity=self.easing_opacity,
            reversed_direction=not self.reversed_direction,
        )


@dataclass(frozen=True)
class TimelineSample:
    stage_times: dict[str, StageTimes]
    link_opacity: float
    axis_opacity: float
    label_opacity: float
    clamped: bool = False


def stagger_delay(element_rank: int, cluster_rank: int, cfg: StaggerConfig) -> float:
    """Start offset: a small delay per element plus a larger one per cluster."""
    if element_rank < 0 or cluster_rank < 0:
        raise ValueError("ranks must be >= 0")
    return element_rank * cfg.per_node_delay + cluster_rank * cfg.per_cluster_delay


def stagger_order(
    graph: MultivariateGraph,
    key: SortKey,
    nl: NlScene,
    mapping: ElementMapping,
) -> list[str]:
    """Node ids in staggering order; ties broken by ascending node id."""
    nodes = list(graph.nodes)
    if key.kind == SortKey.CLUSTER:
        nodes.sort(key=lambda n: (n.cluster_id, n.id))
    elif key.kind == SortKey.SPATIAL:
        def distance(n):
            pair = mapping.pairs[n.id]
            dot = nl.dots[n.id].center
            mid = pair.line_midpoint
            return math.hypot(dot[0] - mid[0], dot[1] - mid[1])
        nodes.sort(key=lambda n: (distance(n), n.id))
    elif key.kind == SortKey.ATTRIBUTE:
        if key.attribute not in graph.attributes.attribute_names:
            raise ValueError(f"unknown attribute: {key.attribute!r}")
        sign = -1.0 if key.descending else 1.0
        nodes.sort(key=lambda n: (sign * graph.attributes.value(n.id, key.attribute),
                                  n.id))
    else:
        raise ValueError(f"unknown sort key: {key.kind!r}")
    return [n.id for n in nodes]


def _element_delays(
    spec: TransitionSpec,
    mapping: ElementMapping,
    graph: MultivariateGraph,
    nl: NlScene | None,
) -> dict[str, float]:
    if spec.stagger is None:
        return {node_id: 0.0 for node_id in mapping.pairs}
    order = stagger_order(graph, spec.stagger.sort_key, nl, mapping) \
        if nl is not None or spec.stagger.sort_key.kind != SortKey.SPATIAL \
        else None
    if order is None:
        raise ValueError("spatial stagger ordering requires the NL scene")
    cluster_by_node = {n.id: n.cluster_id for n in graph.nodes}
    cluster_ranks: dict[int, int] = {}
    delays = {}
    for rank, node_id in enumerate(order):
        cluster = cluster_by_node[node_id]
        # cluster rank = first appearance of the cluster in sorted order
        cluster_rank = cluster_ranks.setdefault(cluster, len(cluster_ranks))
        delays[node_id] = stagger_delay(rank, cluster_rank, spec.stagger)
    return delays


def build_timeline(
    spec: TransitionSpec,
    mapping: ElementMapping,
    graph: MultivariateGraph,
    nl: NlScene | None = None,
) -> Timeline:
    """Compile a TransitionSpec into absolute per-element windows.

    A reversed-direction spec compiles its forward counterpart and mirrors
    the result in time, so playing it from 0 runs the transition backwards.
    """
    if spec.direction == "pc_to_nl":
        return build_timeline(spec.reversed(), mapping, graph, nl).mirrored()

    align = spec.alignment_duration
    delays = _element_delays(spec, mapping, graph, nl)
    per_stage = spec.stagger is not None and spec.stagger.scope == "per_stage"

    per_element: dict[str, dict[ChangeKind, Window]] = {}
    latest_end = align
    for node_id in mapping.pairs:
        delay = delays[node_id]
        windows: dict[ChangeKind, Window] = {}
        if spec.staging_order is None:
            window = (align + delay, align + delay + spec.stage_duration)
            for kind in ChangeKind:
                windows[kind] = window
            latest_end = max(latest_end, window[1])
        else:
            for i, kind in enumerate(spec.staging_order):
                stage_base = align + i * spec.stage_duration
                if per_stage:
                    start = stage_base + delay
                else:
                    start = align + delay + i * spec.stage_duration
                windows[kind] = (start, start + spec.stage_duration)
                latest_end = max(latest_end, windows[kind][1])
        per_element[node_id] = windows

    transformation = (align, latest_end)
    enrichment = (latest_end, latest_end + spec.enrichment_duration)
    return Timeline(
        alignment=(0.0, align),
        transformation=transformation,
        enrichment=enrichment,
        per_element=per_element,
        link_fade=(0.0, align),
        axis_fade=(0.0, align),
        total_duration=enrichment[1],
        easing_motion=spec.easing_motion,
        easing_opacity=spec.easing_opacity,
    )


def _window_progress(t: float, window: Window, kind: EasingKind) -> float:
    start, end = window
    if end <= start:  # zero-length window: step at its start
        return 1.0 if t >= start else 0.0
    raw = (t - start) / (end - start)
    return ease(min(max(raw, 0.0), 1.0), kind)


def sample(timeline: Timeline, t: float) -> TimelineSample:
    """Evaluate all eased stage times and opacities at absolute time t."""
    clamped = t < 0.0 or t > timeline.total_duration
    t = min(max(t, 0.0), timeline.total_duration)
    stage_times = {}
    for node_id, windows in timeline.per_element.items():
        stage_times[node_id] = StageTimes(
            shape=_window_progress(t, windows[ChangeKind.SHAPE],
                                   timeline.easing_motion),
            pos=_window_progress(t, windows[ChangeKind.POS],
                                 timeline.easing_motion),
            size=_window_progress(t, windows[ChangeKind.SIZE],
                                  timeline.easing_motion),
        )
    fade = _window_progress(t, timeline.link_fade, timeline.easing_opacity)
    axis = _window_progress(t, timeline.axis_fade, timeline.easing_opacity)
    label = _window_progress(t, timeline.enrichment, timeline.easing_opacity)
    if timeline.reversed_direction and timeline.enrichment[1] <= timeline.enrichment[0] \
            and t <= timeline.enrichment[0]:
        # an instantaneous label fade-out has not happened yet at its own start
        label = 0.0
    if timeline.reversed_direction:
        link_opacity, axis_opacity, label_opacity = fade, 1.0 - axis, 1.0 - label
    else:
        link_opacity, axis_opacity, label_opacity = 1.0 - fade, axis, label
    return TimelineSample(stage_times, link_opacity, axis_opacity, label_opacity,
                          clamped)


# --- presets and JSON (de)serialization -----------------------------------

def preset(name: str) -> TransitionSpec:
    """Named study variants: the plain simultaneous one and the staged one.

    The staged preset ships without staggering; study-style staggering
    (0.02 s per node, 0.4 s per cluster, cluster-contiguous order) is added
    via with_study_stagger or the CLI --stagger flag.
    """
    if name == "v_basic":
        return TransitionSpec(
            variant_name="v_basic",
            strategy=Strategy.SIMULTANEOUS_CONNECTED,
            shape_style=ShapeStyle(ShapeStyle.GEOMETRIC),
            path_strategy=PathStrategy.SHORTEST_PATH,
            staging_order=None,
            alignment_duration=1.0,
            stage_duration=2.0,
            enrichment_duration=0.0,
            easing_motion=EasingKind.LINEAR,
        )
    if name == "v_adv":
        return TransitionSpec(
            variant_name="v_adv",
            strategy=Strategy.SIMULTANEOUS_CONNECTED,
            shape_style=ShapeStyle(ShapeStyle.ORIENTED),
            path_strategy=PathStrategy.SHORTEST_PATH,
            staging_order=(ChangeKind.SHAPE, ChangeKind.POS, ChangeKind.SIZE),
            alignment_duration=1.0,
            stage_duration=2.0,
            enrichment_duration=0.0,
        )
    raise ValueError(f"unknown preset: {name!r}")


def with_study_stagger(spec: TransitionSpec) -> TransitionSpec:
    return replace(spec, stagger=StaggerConfig())


def spec_to_dict(spec: TransitionSpec) -> dict:
    doc: dict = {
        "schemaVersion": SPEC_SCHEMA_VERSION,
        "variantName": spec.variant_name,
        "strategy": spec.strategy.value,
        "shapeStyle": {"kind": spec.shape_style.kind,
                       "armFraction": spec.shape_style.arm_fraction},
        "pathStrategy": spec.path_strategy.value,
        "stagingOrder": None if spec.staging_order is None
        else [k.value for k in spec.staging_order],
        "alignmentDuration": spec.alignment_duration,
        "stageDuration": spec.stage_duration,
        "enrichmentDuration": spec.enrichment_duration,
        "stagger": None,
        "easingMotion": spec.easing_motion.value,
        "easingOpacity": spec.easing_opacity.value,
        "direction": spec.direction,
    }
    if spec.stagger is not None:
        doc["stagger"] = {
            "perNodeDelay": spec.stagger.per_node_delay,
            "perClusterDelay": spec.stagger.per_cluster_delay,
            "sortKey": {"kind": spec.stagger.sort_key.kind,
                        "attribute": spec.stagger.sort_key.attribute,
                        "descending": spec.stagger.sort_key.descending},
            "scope": spec.stagger.scope,
        }
    return doc


class SpecSchemaError(ValueError):
    pass


def spec_from_dict(doc: dict) -> TransitionSpec:
    try:
        if doc.get("schemaVersion") != SPEC_SCHEMA_VERSION:
            raise SpecSchemaError(
                f"$.schemaVersion: expected {SPEC_SCHEMA_VERSION!r}")
        stagger = None
        if doc.get("stagger") is not None:
            sk = doc["stagger"].get("sortKey", {})
            stagger = StaggerConfig(
                per_node_delay=doc["stagger"]["perNodeDelay"],
                per_cluster_delay=doc["stagger"]["perClusterDelay"],
                sort_key=SortKey(sk.get("kind", SortKey.CLUSTER),
                                 sk.get("attribute"),
                                 sk.get("descending", True)),
                scope=doc["stagger"].get("scope", "whole_transformation"),
            )
        order = doc.get("stagingOrder")
        style = doc.get("shapeStyle", {})
        return TransitionSpec(
            variant_name=doc.get("variantName", "custom"),
            strategy=Strategy(doc["strategy"]),
            shape_style=ShapeStyle(style["kind"],
                                   style.get("armFraction", 0.15)),
            path_strategy=PathStrategy(doc["pathStrategy"]),
            staging_order=None if order is None
            else tuple(ChangeKind(k) for k in order),
            alignment_duration=doc["alignmentDuration"],
            stage_duration=doc["stageDuration"],
            enrichment_duration=doc["enrichmentDuration"],
            stagger=stagger,
            easing_motion=EasingKind(doc.get("easingMotion",
                                             EasingKind.CUBIC_IN_OUT.value)),
            easing_opacity=EasingKind(doc.get("easingOpacity",
                                              EasingKind.LINEAR.value)),
            direction=doc.get("direction", "nl_to_pc"),
        )
    except (KeyError, ValueError) as exc:
        if isinstance(exc, SpecSchemaError):
            raise
        raise SpecSchemaError(f"invalid transition spec: {exc}") from exc


def load_spec(text: str) -> TransitionSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecSchemaError(f"$: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise SpecSchemaError("$: top level must be an object")
    return spec_from_dict(doc)
