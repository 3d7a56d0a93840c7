import { describe, expect, it } from "vitest";

import {
  flashVisible,
  hitTest,
  IllegalTransitionError,
  TaskMachine,
  type HitCandidate,
} from "../src/taskMachine.js";

const LINES: HitCandidate[] = [
  { elementId: "n0", points: [[300, 100], [700, 100]] },
  { elementId: "n1", points: [[300, 200], [700, 200]] },
];

function machineInPhase(phase: string): TaskMachine {
  const m = new TaskMachine();
  if (phase === "idle") return m;
  m.start("n0", 0);
  if (phase === "highlighting") return m;
  m.beginAnimation(2);
  if (phase === "animating") return m;
  m.animationFinished(5);
  if (phase === "awaitingClick") return m;
  m.pointerDown(500, 100, LINES, 6);
  if (phase === "feedback") return m;
  throw new Error(`unknown phase ${phase}`);
}

describe("task state machine", () => {
  it("walks the full happy path", () => {
    const m = new TaskMachine();
    m.start("n1", 0);
    expect(m.state.phase).toBe("highlighting");
    m.beginAnimation(2);
    expect(m.state.phase).toBe("animating");
    m.animationFinished(5);
    expect(m.state.phase).toBe("awaitingClick");
    const result = m.pointerDown(500, 201, LINES, 6.5);
    expect(result).toEqual({
      clickedElementId: "n1",
      correct: true,
      elapsed: 1.5,
    });
    expect(m.state).toMatchObject({ phase: "feedback", correct: true });
    expect(m.finish()).toEqual(result);
    expect(m.state.phase).toBe("idle");
  });

  it("records a wrong line as incorrect but still reaches feedback", () => {
    const m = machineInPhase("awaitingClick");
    const result = m.pointerDown(500, 200, LINES, 6)!;
    expect(result.clickedElementId).toBe("n1");
    expect(result.correct).toBe(false);
    expect(m.state).toMatchObject({ phase: "feedback", correct: false });
  });

  it("records a click far from every line as a miss", () => {
    const m = machineInPhase("awaitingClick");
    const result = m.pointerDown(500, 150, LINES, 6)!;
    expect(result.clickedElementId).toBeNull();
    expect(result.correct).toBe(false);
  });

  it("rejects every out-of-order transition", () => {
    const phases = ["idle", "highlighting", "animating", "awaitingClick", "feedback"];
    const moves: Record<string, (m: TaskMachine) => void> = {
      start: (m) => m.start("n0", 0),
      beginAnimation: (m) => m.beginAnimation(10),
      animationFinished: (m) => m.animationFinished(10),
      finish: (m) => m.finish(),
    };
    const legal: Record<string, string> = {
      idle: "start",
      highlighting: "beginAnimation",
      animating: "animationFinished",
      feedback: "finish",
    };
    for (const phase of phases) {
      for (const [name, move] of Object.entries(moves)) {
        if (legal[phase] === name) continue;
        expect(
          () => move(machineInPhase(phase)),
          `${name} from ${phase}`,
        ).toThrow(IllegalTransitionError);
      }
    }
  });

  it("refuses to start the animation before the highlight ends", () => {
    const m = new TaskMachine();
    m.start("n0", 0);
    expect(() => m.beginAnimation(1.5)).toThrow(/highlight/);
    m.beginAnimation(2.0); // exactly at the boundary is allowed
    expect(m.state.phase).toBe("animating");
  });

  it("ignores pointer events in every phase except awaitingClick", () => {
    for (const phase of ["idle", "highlighting", "animating", "feedback"]) {
      const m = machineInPhase(phase);
      const before = m.state;
      expect(m.pointerDown(500, 100, LINES, 99)).toBeNull();
      expect(m.state).toBe(before); // state untouched
    }
  });

  it("resolves on the first click only", () => {
    const m = machineInPhase("awaitingClick");
    expect(m.pointerDown(500, 100, LINES, 6)).not.toBeNull();
    expect(m.pointerDown(500, 200, LINES, 7)).toBeNull();
  });
});

describe("hitTest", () => {
  it("hits the nearest line within 8 px", () => {
    expect(hitTest(500, 104, LINES)).toBe("n0");
    expect(hitTest(500, 196, LINES)).toBe("n1");
  });

  it("exactly 8 px away still hits; beyond is a miss", () => {
    expect(hitTest(500, 108, LINES)).toBe("n0");
    expect(hitTest(500, 108.01, LINES)).toBeNull();
  });

  it("measures distance to segments, not infinite lines", () => {
    expect(hitTest(296, 100, LINES)).toBe("n0"); // near the endpoint
    expect(hitTest(200, 100, LINES)).toBeNull(); // past it
  });

  it("handles multi-segment polylines and degenerate points", () => {
    const bent: HitCandidate[] = [
      { elementId: "b", points: [[0, 0], [100, 0], [100, 100]] },
      { elementId: "point", points: [[500, 500], [500, 500]] },
    ];
    expect(hitTest(100, 50, bent)).toBe("b");
    expect(hitTest(503, 500, bent)).toBe("point");
  });
});

describe("flashVisible", () => {
  it("produces 3 on/off cycles over 2 s", () => {
    const boundaries: boolean[] = [];
    for (let i = 0; i < 6; i++) {
      boundaries.push(flashVisible(i / 3 + 0.01));
    }
    expect(boundaries).toEqual([true, false, true, false, true, false]);
  });

  it("is dark outside the window", () => {
    expect(flashVisible(-0.1)).toBe(false);
    expect(flashVisible(2.0)).toBe(false);
    expect(flashVisible(2.5)).toBe(false);
  });
});
