"""Quantitative proxies for the two transition design goals.

Swiftness is reported as the total duration. Traceability has no agreed
quantitative definition, so it is approximated by the amount of movement
(total travel), the peak number of simultaneously moving elements, and
occlusion/crossing counts. The report never collapses these into one score;
the proxies are engineering constructs, labeled as such in the output.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .scene_emitter import Frame
from .timeline import Timeline, sample
from .transition_core import ElementMapping, StageTimes, evaluate_strategy

DEFAULT_TRAVEL_DT = 1.0 / 120.0
DEFAULT_OCCLUSION_THRESHOLD = 4.0


@dataclass(frozen=True)
class TransitionReport:
    total_duration: float
    total_travel: float
    per_element_travel: dict[str, float]
    max_simultaneous_moving: int
    occlusion_events: int
    max_crossings: int

    def to_dict(self) -> dict:
        return {
            "swiftness": {"totalDuration": self.total_duration},
            "traceabilityProxies": {
                "totalTravel": round(self.total_travel, 3),
                "maxSimultaneousMoving": self.max_simultaneous_moving,
                "occlusionEvents": self.occlusion_events,
                "maxCrossings": self.max_crossings,
                "perElementTravel": {
                    k: round(v, 3) for k, v in sorted(self.per_element_travel.items())
                },
            },
            "note": "traceability proxies are engineering constructs, "
                    "not validated predictors of human tracking performance",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [
            f"{'total duration (s)':28}{self.total_duration:>12.3f}",
            f"{'total travel (px)':28}{self.total_travel:>12.1f}",
            f"{'max simultaneous moving':28}{self.max_simultaneous_moving:>12d}",
            f"{'occlusion events':28}{self.occlusion_events:>12d}",
            f"{'max crossings':28}{self.max_crossings:>12d}",
        ]
        return "\n".join(lines) + "\n"


def _centroid(vertices) -> tuple[float, float]:
    n = len(vertices)
    return (sum(v[0] for v in vertices) / n, sum(v[1] for v in vertices) / n)


def total_travel(
    timeline: Timeline,
    mapping: ElementMapping,
    spec,
    dt: float = DEFAULT_TRAVEL_DT,
) -> tuple[dict[str, float], float]:
    """Per-element sum of centroid displacements between consecutive samples."""
    if dt <= 0:
        raise ValueError("dt must be > 0")
    total = timeline.total_duration
    steps = max(1, math.ceil(total / dt))
    times = [min(i * dt, total) for i in range(steps + 1)]
    if times[-1] < total:
        times.append(total)
    travel = {node_id: 0.0 for node_id in mapping.pairs}
    previous: dict[str, tuple[float, float]] = {}
    for t in times:
        snap = sample(timeline, t)
        for node_id, pair in mapping.pairs.items():
            st = snap.stage_times[node_id]
            if timeline.reversed_direction:
                st = StageTimes(1.0 - st.shape, 1.0 - st.pos, 1.0 - st.size)
            glyph, _ = evaluate_strategy(spec.strategy, pair, st,
                                         spec.shape_style, spec.path_strategy)
            c = _centroid(glyph.vertices)
            if node_id in previous:
                p = previous[node_id]
                travel[node_id] += math.hypot(c[0] - p[0], c[1] - p[1])
            previous[node_id] = c
    return travel, sum(travel.values())


def max_simultaneous_moving(timeline: Timeline) -> int:
    """Peak count of elements with at least one active change window."""
    events = []
    for windows in timeline.per_element.values():
        start = min(w[0] for w in windows.values())
        end = max(w[1] for w in windows.values())
        if end > start:
            events.append((start, 1))
            events.append((end, -1))
    events.sort()
    active = peak = 0
    for _, delta in events:
        active += delta
        peak = max(peak, active)
    return peak


def _glyph_bbox(p) -> tuple[float, float, float, float]:
    pad = p.radius if p.kind == "dot" else p.stroke_width / 2.0
    xs = [v[0] for v in p.points]
    ys = [v[1] for v in p.points]
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def occlusion_events(frames: list[Frame], threshold: float = DEFAULT_OCCLUSION_THRESHOLD) -> int:
    """Count (frame, glyph-pair) bounding-box overlaps above threshold area."""
    if threshold <= 0:
        raise ValueError("threshold must be > 0")
    min_area = threshold * threshold
    count = 0
    for frame in frames:
        glyphs = [p for p in frame.primitives if p.kind in ("dot", "polyline")]
        boxes = [_glyph_bbox(p) for p in glyphs]
        for i in range(len(boxes)):
            ax0, ay0, ax1, ay1 = boxes[i]
            for j in range(i + 1, len(boxes)):
                bx0, by0, bx1, by1 = boxes[j]
                w = min(ax1, bx1) - max(ax0, bx0)
                h = min(ay1, by1) - max(ay0, by0)
                if w > 0 and h > 0 and w * h > min_area:
                    count += 1
    return count


def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _segments_cross(p1, p2, q1, q2) -> bool:
    """Proper intersection only; shared endpoints and collinear touch excluded."""
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) \
        and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0


def crossings(frame: Frame) -> int:
    """Properly intersecting glyph segment pairs in one frame."""
    segments = []
    for p in frame.primitives:
        if p.kind != "polyline":
            continue
        for a, b in zip(p.points, p.points[1:]):
            segments.append((a, b))
    count = 0
    for i in range(len(segments)):
        for j in range(i + 1, len(segments)):
            if _segments_cross(*segments[i], *segments[j]):
                count += 1
    return count


def build_report(
    timeline: Timeline,
    mapping: ElementMapping,
    spec,
    frames: list[Frame],
    dt: float = DEFAULT_TRAVEL_DT,
    occlusion_threshold: float = DEFAULT_OCCLUSION_THRESHOLD,
) -> TransitionReport:
    per_element, aggregate = total_travel(timeline, mapping, spec, dt)
    max_cross = max((crossings(f) for f in frames), default=0)
    return TransitionReport(
        total_duration=timeline.total_duration,
        total_travel=aggregate,
        per_element_travel=per_element,
        max_simultaneous_moving=max_simultaneous_moving(timeline),
        occlusion_events=occlusion_events(frames, occlusion_threshold),
        max_crossings=max_cross,
    )
