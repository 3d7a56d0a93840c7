"""Command-line entry point.

Subcommands: gen-data (synthesize attributes), compile (timeline + report),
render (keyframe document + SVG frames). Exit codes: 0 success, 1 I/O or
environment failure, 2 validation failure. Errors are written to stderr both
as human text and as a one-line JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import data_model, layout, metrics, scene_emitter, timeline as tl
from .transition_core import map_elements

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2

DEFAULT_WIDTH = 1600.0
DEFAULT_HEIGHT = 900.0
DEFAULT_FPS = 50.0
DEFAULT_SEED = 42

PATTERNS = {
    "negative-correlation": data_model.PatternKind.NEGATIVE,
    "positive-correlation": data_model.PatternKind.POSITIVE,
    "outliers": data_model.PatternKind.OUTLIERS,
    "uniform-random": data_model.PatternKind.UNIFORM,
}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _fail(message: str, code: int) -> "CliError":
    return CliError(message, code)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _fail(f"cannot read {path}: {exc}", EXIT_IO) from exc


def _write_text(path: Path, text: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _fail(f"cannot write {path}: {exc}", EXIT_IO) from exc


def _load_graph_arg(path: str) -> data_model.MultivariateGraph:
    try:
        return data_model.load_graph(_read_text(path))
    except (data_model.GraphSchemaError, data_model.GraphValidationError) as exc:
        raise _fail(f"invalid graph {path}: {exc}", EXIT_VALIDATION) from exc


def _resolve_spec(args) -> tl.TransitionSpec:
    if args.spec is not None:
        try:
            spec = tl.load_spec(_read_text(args.spec))
        except tl.SpecSchemaError as exc:
            raise _fail(f"invalid spec {args.spec}: {exc}", EXIT_VALIDATION) from exc
    else:
        try:
            spec = tl.preset(args.preset)
        except ValueError as exc:
            raise _fail(str(exc), EXIT_VALIDATION) from exc
    if getattr(args, "stagger", None) == "on" and spec.stagger is None:
        spec = tl.with_study_stagger(spec)
    elif getattr(args, "stagger", None) == "off":
        from dataclasses import replace
        spec = replace(spec, stagger=None)
    return spec


def _prepare_scenes(graph, args):
    viewport = layout.Viewport(args.width, args.height)
    if graph.attributes.is_empty:
        raise _fail("graph has no attributes; run gen-data first", EXIT_VALIDATION)
    names = list(graph.attributes.attribute_names[: args.axes])
    if len(names) < 2:
        raise _fail("need at least 2 attributes for the PC scene", EXIT_VALIDATION)
    nl = layout.compute_nl_layout(graph, viewport, seed=args.seed)
    pc = layout.compute_pc_scene(graph, names[:2], viewport)
    return viewport, nl, pc


def cmd_gen_data(args) -> int:
    graph = _load_graph_arg(args.graph)
    if args.n < 2:
        raise _fail("--n must be >= 2", EXIT_VALIDATION)
    kind = PATTERNS[args.pattern]
    try:
        pattern = data_model.PatternKind(kind, args.outliers) \
            if kind == data_model.PatternKind.OUTLIERS \
            else data_model.PatternKind(kind)
        table = data_model.generate_attributes(graph, args.n, pattern, args.seed)
    except ValueError as exc:
        raise _fail(str(exc), EXIT_VALIDATION) from exc
    document = data_model.serialize_graph(graph.with_attributes(table))
    _write_text(Path(args.out), document)
    print(f"wrote {args.out}")
    return EXIT_OK


def _compile(args):
    graph = _load_graph_arg(args.graph)
    spec = _resolve_spec(args)
    viewport, nl, pc = _prepare_scenes(graph, args)
    mapping = map_elements(nl, pc)
    compiled = tl.build_timeline(spec, mapping, graph, nl)
    return graph, spec, viewport, nl, pc, mapping, compiled


def _timeline_to_dict(compiled: tl.Timeline) -> dict:
    def win(w):
        return [w[0], w[1]]

    return {
        "schemaVersion": "1",
        "phases": {
            "alignment": win(compiled.alignment),
            "transformation": win(compiled.transformation),
            "enrichment": win(compiled.enrichment),
        },
        "linkFadeWindow": win(compiled.link_fade),
        "axisFadeWindow": win(compiled.axis_fade),
        "totalDuration": compiled.total_duration,
        "perElement": {
            node: {kind.value: win(w) for kind, w in windows.items()}
            for node, windows in sorted(compiled.per_element.items())
        },
    }


def cmd_compile(args) -> int:
    graph, spec, viewport, nl, pc, mapping, compiled = _compile(args)
    out = Path(args.out)
    frames = [
        scene_emitter.render_frame(graph, nl, pc, mapping, compiled, spec, t)
        for t in _frame_times(compiled.total_duration, 20.0)
    ]
    report = metrics.build_report(compiled, mapping, spec, frames)
    _write_text(out / "timeline.json",
                json.dumps(_timeline_to_dict(compiled), indent=2) + "\n")
    _write_text(out / "report.json", report.to_json())
    _write_text(out / "report.txt", report.to_text())
    print(f"total duration: {compiled.total_duration:.3f} s")
    print(f"wrote {out}/timeline.json, report.json, report.txt")
    return EXIT_OK


def _frame_times(total: float, fps: float) -> list[float]:
    count = round(total * fps)
    return [i / fps for i in range(count)] + [total]


def cmd_render(args) -> int:
    if args.fps <= 0:
        raise _fail("--fps must be > 0", EXIT_VALIDATION)
    graph, spec, viewport, nl, pc, mapping, compiled = _compile(args)
    document = scene_emitter.emit_keyframes(graph, nl, pc, mapping, compiled,
                                            spec, args.fps)
    out = Path(args.out)
    _write_text(out / "keyframes.json", scene_emitter.document_to_json(document))
    for i, frame in enumerate(document.frames):
        _write_text(out / f"frame_{i:05d}.svg",
                    scene_emitter.emit_svg(frame, viewport))
    print(f"wrote {len(document.frames)} frames to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vismorph",
        description="Animated node-link <-> parallel-coordinates transitions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_spec=True):
        p.add_argument("--graph", required=True, help="graph JSON path")
        if with_spec:
            group = p.add_mutually_exclusive_group(required=True)
            group.add_argument("--spec", help="transition spec JSON path")
            group.add_argument("--preset", help="preset name (v_basic, v_adv)")
            p.add_argument("--stagger", choices=["on", "off"], default=None,
                           help="override staggering on the chosen spec")
            p.add_argument("--axes", type=int, default=2,
                           help="number of PC axes to target")
            p.add_argument("--width", type=float, default=DEFAULT_WIDTH)
            p.add_argument("--height", type=float, default=DEFAULT_HEIGHT)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--out", required=True, help="output path")

    gen = sub.add_parser("gen-data", help="synthesize node attributes")
    common(gen, with_spec=False)
    gen.add_argument("--pattern", choices=sorted(PATTERNS), required=True)
    gen.add_argument("--n", type=int, default=2, help="attribute count")
    gen.add_argument("--outliers", type=int, default=3,
                     help="outlier count for the outliers pattern")
    gen.set_defaults(func=cmd_gen_data)

    comp = sub.add_parser("compile", help="compile timeline and metrics report")
    common(comp)
    comp.set_defaults(func=cmd_compile)

    render = sub.add_parser("render", help="emit keyframes.json and SVG frames")
    common(render)
    render.add_argument("--fps", type=float, default=DEFAULT_FPS)
    render.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        print(json.dumps({"error": str(exc), "exitCode": exc.code}),
              file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
