import { describe, expect, it } from "vitest";

import {
  DocumentError,
  frameAt,
  loadDocument,
  nearestFrameIndex,
  type KeyframeDocument,
} from "../src/document.js";
import { makeDocument } from "./fixtures.js";

describe("loadDocument", () => {
  it("accepts a well-formed document and keeps frames verbatim", () => {
    const doc = makeDocument();
    const loaded = loadDocument(JSON.stringify(doc));
    expect(loaded.frames).toEqual(doc.frames);
    expect(loaded.totalDuration).toBe(doc.totalDuration);
  });

  it("rejects non-JSON input", () => {
    expect(() => loadDocument("not json {")).toThrow(DocumentError);
  });

  it("rejects an unsupported schema version", () => {
    const doc = { ...makeDocument(), schemaVersion: "2" };
    expect(() => loadDocument(JSON.stringify(doc))).toThrow(/schemaVersion/);
  });

  it("rejects an empty frames list", () => {
    const doc = { ...makeDocument(), frames: [] };
    expect(() => loadDocument(JSON.stringify(doc))).toThrow(/no frames/);
  });

  it("rejects non-increasing timestamps", () => {
    const doc = makeDocument();
    doc.frames[1]!.timestamp = doc.frames[0]!.timestamp;
    expect(() => loadDocument(JSON.stringify(doc))).toThrow(/increasing/);
  });

  it("rejects a missing viewport", () => {
    const doc = makeDocument() as Partial<KeyframeDocument>;
    delete doc.viewport;
    expect(() => loadDocument(JSON.stringify(doc))).toThrow(/viewport/);
  });
});

describe("nearestFrameIndex", () => {
  // timestamps 0.0, 0.1, 0.2, 0.3 (4 frames at 10 fps)
  const doc = loadDocument(JSON.stringify(makeDocument()));

  it("t=0 selects the first frame", () => {
    expect(nearestFrameIndex(doc, 0)).toBe(0);
  });

  it("t beyond the end clamps to the last frame", () => {
    expect(nearestFrameIndex(doc, 99)).toBe(doc.frames.length - 1);
    expect(nearestFrameIndex(doc, -1)).toBe(0);
  });

  it("rounds to the nearest timestamp", () => {
    expect(nearestFrameIndex(doc, 0.096)).toBe(1);
    expect(nearestFrameIndex(doc, 0.12)).toBe(1);
    expect(nearestFrameIndex(doc, 0.19)).toBe(2);
  });

  it("exact midpoint ties toward the earlier frame", () => {
    expect(nearestFrameIndex(doc, 0.05)).toBe(0);
    expect(nearestFrameIndex(doc, 0.25)).toBe(2);
  });

  it("frameAt returns the frame object itself", () => {
    expect(frameAt(doc, 0.1)).toBe(doc.frames[1]);
  });
});
