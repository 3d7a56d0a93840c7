"""Compare the transition variants on the bundled Les Misérables graph.

Compiles each variant, prints a summary table of duration and traceability
proxies, and optionally renders keyframe documents and SVG frames.

Usage:
    python3 scripts/render_variants.py [--out OUTDIR] [--fps FPS] [--render]
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import vismorph as vm  # noqa: E402
from vismorph.metrics import build_report  # noqa: E402
from vismorph.scene_emitter import document_to_json, emit_svg  # noqa: E402
from vismorph.timeline import preset, with_study_stagger  # noqa: E402
from vismorph.transition_core import PathStrategy  # noqa: E402

REPORT_FPS = 20.0


def variants():
    basic = preset("v_basic")
    adv = preset("v_adv")
    return [
        ("v_basic", basic),
        ("v_basic_vertical",
         replace(basic, variant_name="v_basic_vertical",
                 path_strategy=PathStrategy.VERTICAL_ONLY)),
        ("v_adv", adv),
        ("v_adv_stagger", with_study_stagger(adv)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/variants")
    parser.add_argument("--fps", type=float, default=25.0)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--render", action="store_true",
                        help="also write keyframes.json and SVG frames")
    args = parser.parse_args()

    graph = vm.load_graph(open(vm.les_miserables_path()).read())
    table = vm.generate_attributes(
        graph, 2, vm.PatternKind(vm.PatternKind.NEGATIVE), args.seed)
    graph = graph.with_attributes(table)

    viewport = vm.Viewport(1600.0, 900.0)
    nl = vm.compute_nl_layout(graph, viewport, seed=args.seed)
    pc = vm.compute_pc_scene(
        graph, list(graph.attributes.attribute_names[:2]), viewport)
    mapping = vm.map_elements(nl, pc)

    header = (f"{'variant':18}{'duration':>10}{'travel':>12}"
              f"{'peak moving':>13}{'occlusion':>11}{'crossings':>11}")
    print(header)
    print("-" * len(header))
    for name, spec in variants():
        tl = vm.build_timeline(spec, mapping, graph, nl)
        times = [i / REPORT_FPS for i in range(round(tl.total_duration * REPORT_FPS))]
        frames = [vm.render_frame(graph, nl, pc, mapping, tl, spec, t)
                  for t in times + [tl.total_duration]]
        report = build_report(tl, mapping, spec, frames)
        print(f"{name:18}{report.total_duration:>10.2f}"
              f"{report.total_travel:>12.0f}"
              f"{report.max_simultaneous_moving:>13d}"
              f"{report.occlusion_events:>11d}"
              f"{report.max_crossings:>11d}")

        if args.render:
            out = Path(args.out) / name
            out.mkdir(parents=True, exist_ok=True)
            document = vm.emit_keyframes(graph, nl, pc, mapping, tl, spec,
                                         args.fps)
            (out / "keyframes.json").write_text(document_to_json(document))
            for i, frame in enumerate(document.frames):
                (out / f"frame_{i:05d}.svg").write_text(
                    emit_svg(frame, viewport))
            print(f"  -> {len(document.frames)} frames in {out}")


if __name__ == "__main__":
    main()
