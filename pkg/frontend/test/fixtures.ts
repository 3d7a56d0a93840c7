import type { Frame, KeyframeDocument, Primitive } from "../src/document.js";

export function dot(
  elementId: string,
  x: number,
  y: number,
  radius = 6,
): Primitive {
  return {
    kind: "dot",
    elementId,
    points: [[x, y]],
    strokeWidth: 0,
    opacity: 1,
    colorIndex: 0,
    radius,
  };
}

export function polyline(
  elementId: string,
  points: [number, number][],
  colorIndex = 0,
): Primitive {
  return {
    kind: "polyline",
    elementId,
    points,
    strokeWidth: 2,
    opacity: 1,
    colorIndex,
  };
}

export function label(elementId: string, text: string): Primitive {
  return {
    kind: "label",
    elementId,
    points: [[300, 40]],
    strokeWidth: 0,
    opacity: 1,
    colorIndex: -1,
    text,
  };
}

/** 4 frames at 10 fps: a dot sliding right while a polyline appears. */
export function makeDocument(): KeyframeDocument {
  const frames: Frame[] = [0, 1, 2, 3].map((i) => ({
    timestamp: i / 10,
    primitives: [
      dot("n0", 100 + 10 * i, 200),
      polyline("n1", [
        [300, 100 + i],
        [700, 400 - i],
      ]),
      label("label:a:name", "a"),
    ],
  }));
  return {
    schemaVersion: "1",
    spec: { variantName: "v_basic", direction: "nl_to_pc" },
    viewport: { width: 1600, height: 900, margin: 60 },
    palette: ["#1f77b4", "#ff7f0e"],
    fps: 10,
    totalDuration: 0.3,
    frames,
  };
}
