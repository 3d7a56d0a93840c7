import { describe, expect, it } from "vitest";

import { PlayerState } from "../src/player.js";
import { makeDocument } from "./fixtures.js";

function makePlayer(): PlayerState {
  return PlayerState.fromJson(JSON.stringify(makeDocument()));
}

describe("PlayerState", () => {
  it("starts paused at the first frame", () => {
    const p = makePlayer();
    expect(p.playhead).toBe(0);
    expect(p.playing).toBe(false);
    expect(p.currentFrame()).toBe(p.document.frames[0]);
  });

  it("scrub clamps to the document range", () => {
    const p = makePlayer();
    p.scrub(99);
    expect(p.playhead).toBe(p.totalDuration);
    p.scrub(-5);
    expect(p.playhead).toBe(0);
  });

  it("scrub displays the nearest frame without interpolating", () => {
    const p = makePlayer();
    expect(p.scrub(0.12)).toBe(p.document.frames[1]);
    expect(p.scrub(0.05)).toBe(p.document.frames[0]); // tie toward earlier
  });

  it("tick advances while playing and pauses at the end", () => {
    const p = makePlayer();
    p.togglePlay();
    p.tick(0.1);
    expect(p.playhead).toBeCloseTo(0.1);
    p.tick(10);
    expect(p.playhead).toBe(p.totalDuration);
    expect(p.playing).toBe(false);
  });

  it("tick does nothing while paused", () => {
    const p = makePlayer();
    p.tick(1);
    expect(p.playhead).toBe(0);
  });

  it("reverse playback runs the playhead backwards", () => {
    const p = makePlayer();
    p.scrub(p.totalDuration);
    p.reverse();
    p.togglePlay();
    p.tick(0.1);
    expect(p.playhead).toBeCloseTo(p.totalDuration - 0.1);
  });

  it("play at the forward end restarts from zero", () => {
    const p = makePlayer();
    p.scrub(p.totalDuration);
    p.togglePlay();
    expect(p.playhead).toBe(0);
    expect(p.playing).toBe(true);
  });

  it("step moves exactly one document frame and pauses", () => {
    const p = makePlayer();
    p.togglePlay();
    p.step(1);
    expect(p.playhead).toBe(p.document.frames[1]!.timestamp);
    expect(p.playing).toBe(false);
    p.step(-1);
    p.step(-1); // clamped at the first frame
    expect(p.playhead).toBe(0);
  });

  it("maps the keyboard contract", () => {
    const p = makePlayer();
    expect(p.handleKey(" ")).toBe(true);
    expect(p.playing).toBe(true);
    expect(p.handleKey("ArrowRight")).toBe(true);
    expect(p.playing).toBe(false);
    expect(p.handleKey("ArrowLeft")).toBe(true);
    expect(p.handleKey("R")).toBe(true);
    expect(p.direction).toBe("reverse");
    expect(p.handleKey("x")).toBe(false);
  });
});
