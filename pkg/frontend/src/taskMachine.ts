/** Click-to-identify tracking task.
 *
 * Phases advance strictly in order:
 *   Idle -> Highlighting -> Animating -> AwaitingClick -> Feedback -> Idle
 * Any other transition throws. Pointer events are ignored while Animating;
 * the first click during AwaitingClick resolves the task (nearest polyline
 * within 8 px, otherwise a miss) and the correct line flashes either way. */

export const HIGHLIGHT_DURATION_S = 2.0;
export const FLASH_CYCLES = 3;
export const HIT_RADIUS_PX = 8.0;

export type TaskPhase =
  | { phase: "idle" }
  | { phase: "highlighting"; targetNodeId: string; until: number }
  | { phase: "animating"; targetNodeId: string }
  | { phase: "awaitingClick"; targetNodeId: string; since: number }
  | { phase: "feedback"; targetNodeId: string; correct: boolean };

export interface TaskResult {
  clickedElementId: string | null;
  correct: boolean;
  elapsed: number;
}

export interface HitCandidate {
  elementId: string;
  points: [number, number][];
}

export class IllegalTransitionError extends Error {}

function expect(machine: TaskMachine, phase: TaskPhase["phase"]): void {
  if (machine.state.phase !== phase) {
    throw new IllegalTransitionError(
      `expected phase ${phase}, but machine is in ${machine.state.phase}`,
    );
  }
}

export class TaskMachine {
  state: TaskPhase = { phase: "idle" };
  private result: TaskResult | null = null;

  /** Idle -> Highlighting: flash the target dot's border. */
  start(targetNodeId: string, now: number): void {
    expect(this, "idle");
    this.result = null;
    this.state = {
      phase: "highlighting",
      targetNodeId,
      until: now + HIGHLIGHT_DURATION_S,
    };
  }

  /** Highlighting -> Animating: the highlight disappears before the
   * transformation begins. */
  beginAnimation(now: number): void {
    expect(this, "highlighting");
    const s = this.state as Extract<TaskPhase, { phase: "highlighting" }>;
    if (now < s.until) {
      throw new IllegalTransitionError(
        "highlight has not finished; animation may not start yet",
      );
    }
    this.state = { phase: "animating", targetNodeId: s.targetNodeId };
  }

  /** Animating -> AwaitingClick: playback reached the final frame. */
  animationFinished(now: number): void {
    expect(this, "animating");
    const s = this.state as Extract<TaskPhase, { phase: "animating" }>;
    this.state = { phase: "awaitingClick", targetNodeId: s.targetNodeId, since: now };
  }

  /** Pointer input. Ignored (returns null) in every phase except
   * AwaitingClick, where the single click resolves the task. */
  pointerDown(
    x: number,
    y: number,
    candidates: HitCandidate[],
    now: number,
  ): TaskResult | null {
    if (this.state.phase !== "awaitingClick") {
      return null;
    }
    const s = this.state as Extract<TaskPhase, { phase: "awaitingClick" }>;
    const hit = hitTest(x, y, candidates);
    const result: TaskResult = {
      clickedElementId: hit,
      correct: hit === s.targetNodeId,
      elapsed: now - s.since,
    };
    this.result = result;
    this.state = {
      phase: "feedback",
      targetNodeId: s.targetNodeId,
      correct: result.correct,
    };
    return result;
  }

  /** Feedback -> Idle, once the verification flash has played. */
  finish(): TaskResult {
    expect(this, "feedback");
    this.state = { phase: "idle" };
    const result = this.result;
    if (result === null) {
      throw new IllegalTransitionError("feedback phase without a result");
    }
    return result;
  }
}

function pointSegmentDistance(
  px: number,
  py: number,
  ax: number,
  ay: number,
  bx: number,
  by: number,
): number {
  const dx = bx - ax;
  const dy = by - ay;
  const lengthSq = dx * dx + dy * dy;
  let t = 0;
  if (lengthSq > 0) {
    t = Math.max(0, Math.min(1, ((px - ax) * dx + (py - ay) * dy) / lengthSq));
  }
  return Math.hypot(px - (ax + t * dx), py - (ay + t * dy));
}

/** Nearest polyline within HIT_RADIUS_PX of (x, y), or null for a miss.
 * Ties resolve to the first candidate in document order. */
export function hitTest(
  x: number,
  y: number,
  candidates: HitCandidate[],
): string | null {
  let best: string | null = null;
  let bestDistance = Infinity;
  for (const candidate of candidates) {
    for (let i = 0; i + 1 < candidate.points.length; i++) {
      const [ax, ay] = candidate.points[i]!;
      const [bx, by] = candidate.points[i + 1]!;
      const d = pointSegmentDistance(x, y, ax, ay, bx, by);
      if (d < bestDistance) {
        bestDistance = d;
        best = candidate.elementId;
      }
    }
  }
  return bestDistance <= HIT_RADIUS_PX ? best : null;
}

/** Flash visibility: 3 on/off cycles over the highlight window. Each cycle
 * is on for its first half. Returns false outside the window. */
export function flashVisible(elapsed: number, duration = HIGHLIGHT_DURATION_S): boolean {
  if (elapsed < 0 || elapsed >= duration) return false;
  const cycle = duration / FLASH_CYCLES;
  return elapsed % cycle < cycle / 2;
}
