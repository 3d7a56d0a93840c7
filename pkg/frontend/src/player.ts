/** Playback state over a loaded keyframe document.
 *
 * The playhead lives in [0, totalDuration]; playback advances it with the
 * display clock, scrubbing sets it directly, and every displayed frame is a
 * nearest-timestamp lookup — the player interpolates nothing. */

import {
  frameAt,
  loadDocument,
  nearestFrameIndex,
  type Frame,
  type KeyframeDocument,
} from "./document.js";

export type Direction = "forward" | "reverse";

export class PlayerState {
  readonly document: KeyframeDocument;
  playhead = 0;
  playing = false;
  direction: Direction = "forward";

  constructor(doc: KeyframeDocument) {
    this.document = doc;
  }

  static fromJson(text: string): PlayerState {
    return new PlayerState(loadDocument(text));
  }

  get totalDuration(): number {
    return this.document.totalDuration;
  }

  currentFrame(): Frame {
    return frameAt(this.document, this.playhead);
  }

  /** Set the playhead (clamped) and return the nearest frame. */
  scrub(t: number): Frame {
    this.playhead = Math.min(Math.max(t, 0), this.totalDuration);
    return this.currentFrame();
  }

  /** Advance by wall-clock dt in the current direction; pauses at the ends. */
  tick(dt: number): Frame {
    if (this.playing) {
      const delta = this.direction === "forward" ? dt : -dt;
      const next = this.playhead + delta;
      if (next <= 0 || next >= this.totalDuration) {
        this.playing = false;
      }
      this.scrub(next);
    }
    return this.currentFrame();
  }

  togglePlay(): void {
    if (!this.playing) {
      // restart from the boundary if the playhead is parked at an end
      if (this.direction === "forward" && this.playhead >= this.totalDuration) {
        this.playhead = 0;
      } else if (this.direction === "reverse" && this.playhead <= 0) {
        this.playhead = this.totalDuration;
      }
    }
    this.playing = !this.playing;
  }

  reverse(): void {
    this.direction = this.direction === "forward" ? "reverse" : "forward";
  }

  /** Step exactly one document frame in the given direction. */
  step(offset: 1 | -1): Frame {
    const index = nearestFrameIndex(this.document, this.playhead);
    const clamped = Math.min(
      Math.max(index + offset, 0),
      this.document.frames.length - 1,
    );
    this.playhead = this.document.frames[clamped]!.timestamp;
    this.playing = false;
    return this.currentFrame();
  }

  /** Keyboard contract: space = play/pause, arrows = step, R = reverse.
   * Returns true when the key was handled. */
  handleKey(key: string): boolean {
    switch (key) {
      case " ":
        this.togglePlay();
        return true;
      case "ArrowRight":
        this.step(1);
        return true;
      case "ArrowLeft":
        this.step(-1);
        return true;
      case "r":
      case "R":
        this.reverse();
        return true;
      default:
        return false;
    }
  }
}
