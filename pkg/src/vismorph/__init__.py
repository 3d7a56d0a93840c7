"""Animated transitions between node-link diagrams and parallel coordinates."""

from .data_model import (
    AttributeTable,
    Edge,
    MultivariateGraph,
    Node,
    PatternKind,
    generate_attributes,
    les_miserables_path,
    load_graph,
    serialize_graph,
    validate,
)
from .layout import (
    Axis,
    NlScene,
    PcScene,
    Viewport,
    attribute_to_axis_y,
    compute_nl_layout,
    compute_pc_scene,
    extend_pc_scene,
)
from .timeline import (
    ChangeKind,
    EasingKind,
    SortKey,
    StaggerConfig,
    Timeline,
    TransitionSpec,
    build_timeline,
    ease,
    preset,
    sample,
    with_study_stagger,
)
from .transition_core import (
    ElementMapping,
    PathStrategy,
    ShapeStyle,
    StageTimes,
    Strategy,
    TransGlyph,
    accordion_expand,
    evaluate_strategy,
    interpolate_bent,
    interpolate_geometric,
    interpolate_oriented,
    map_elements,
    position_path,
)
from .scene_emitter import (
    Frame,
    KeyframeDocument,
    document_to_json,
    emit_keyframes,
    emit_svg,
    render_frame,
    render_nl_frame,
    render_pc_frame,
)

__version__ = "0.1.0"
