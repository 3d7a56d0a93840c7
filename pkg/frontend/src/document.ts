/** Keyframe document wire format (schemaVersion "1") and frame lookup.
 *
 * The player never computes geometry: frames are displayed as-is, and
 * scrubbing selects the frame with the nearest timestamp (ties go to the
 * earlier frame). */

export interface Primitive {
  kind: "link" | "axis" | "dot" | "polyline" | "label";
  elementId: string;
  points: [number, number][];
  strokeWidth: number;
  opacity: number;
  colorIndex: number;
  radius?: number;
  text?: string;
}

export interface Frame {
  timestamp: number;
  primitives: Primitive[];
}

export interface Viewport {
  width: number;
  height: number;
  margin: number;
}

export interface KeyframeDocument {
  schemaVersion: string;
  spec: { variantName: string; direction: string; [key: string]: unknown };
  viewport: Viewport;
  palette: string[];
  fps: number;
  totalDuration: number;
  frames: Frame[];
}

export class DocumentError extends Error {}

const SUPPORTED_SCHEMA_VERSION = "1";

function isFiniteNumber(x: unknown): x is number {
  return typeof x === "number" && Number.isFinite(x);
}

/** Parse and validate a keyframe document. Throws DocumentError with a
 * user-presentable message on any structural problem. */
export function loadDocument(text: string): KeyframeDocument {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    throw new DocumentError("document is not valid JSON");
  }
  if (typeof raw !== "object" || raw === null) {
    throw new DocumentError("document must be a JSON object");
  }
  const doc = raw as Record<string, unknown>;
  if (doc.schemaVersion !== SUPPORTED_SCHEMA_VERSION) {
    throw new DocumentError(
      `unsupported schemaVersion ${JSON.stringify(doc.schemaVersion)}; ` +
        `expected "${SUPPORTED_SCHEMA_VERSION}"`,
    );
  }
  if (!Array.isArray(doc.frames) || doc.frames.length === 0) {
    throw new DocumentError("document has no frames");
  }
  if (!isFiniteNumber(doc.totalDuration) || doc.totalDuration < 0) {
    throw new DocumentError("totalDuration must be a non-negative number");
  }
  if (!isFiniteNumber(doc.fps) || doc.fps <= 0) {
    throw new DocumentError("fps must be a positive number");
  }
  const viewport = doc.viewport as Viewport | undefined;
  if (
    viewport === undefined ||
    !isFiniteNumber(viewport.width) ||
    !isFiniteNumber(viewport.height)
  ) {
    throw new DocumentError("viewport is missing or malformed");
  }
  if (!Array.isArray(doc.palette) || doc.palette.length === 0) {
    throw new DocumentError("palette is missing or empty");
  }
  let previous = -Infinity;
  for (const [i, frame] of (doc.frames as Frame[]).entries()) {
    if (!isFiniteNumber(frame.timestamp) || !Array.isArray(frame.primitives)) {
      throw new DocumentError(`frame ${i} is malformed`);
    }
    if (frame.timestamp <= previous) {
      throw new DocumentError(`frame ${i} timestamps are not increasing`);
    }
    previous = frame.timestamp;
  }
  return doc as unknown as KeyframeDocument;
}

/** Index of the frame whose timestamp is nearest to t; ties toward the
 * earlier frame. t outside the range clamps to the first/last frame. */
export function nearestFrameIndex(doc: KeyframeDocument, t: number): number {
  const frames = doc.frames;
  let lo = 0;
  let hi = frames.length - 1;
  const first = frames[0]!;
  const last = frames[hi]!;
  if (t <= first.timestamp) return 0;
  if (t >= last.timestamp) return hi;
  // binary search for the last frame at or before t
  while (lo + 1 < hi) {
    const mid = (lo + hi) >> 1;
    if (frames[mid]!.timestamp <= t) lo = mid;
    else hi = mid;
  }
  const before = t - frames[lo]!.timestamp;
  const after = frames[hi]!.timestamp - t;
  return before <= after ? lo : hi;
}

export function frameAt(doc: KeyframeDocument, t: number): Frame {
  return doc.frames[nearestFrameIndex(doc, t)]!;
}
