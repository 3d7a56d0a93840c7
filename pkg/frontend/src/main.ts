/** Browser entry: wires the canvas, file picker / URL loading, keyboard
 * controls, and the tracking task to the pure modules. */

import { DocumentError, type Primitive } from "./document.js";
import { PlayerState } from "./player.js";
import { drawCommands, frameToCommands } from "./renderer.js";
import { flashVisible, TaskMachine, type HitCandidate } from "./taskMachine.js";

const canvas = document.getElementById("stage") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const banner = document.getElementById("banner")!;
const picker = document.getElementById("picker") as HTMLInputElement;
const taskButton = document.getElementById("task") as HTMLButtonElement;

let player: PlayerState | null = null;
const task = new TaskMachine();
let taskTarget: string | null = null;

function showBanner(message: string): void {
  banner.textContent = message;
  banner.hidden = message === "";
}

function nowSeconds(): number {
  return performance.now() / 1000;
}

function glyphPrimitives(primitives: Primitive[]): Primitive[] {
  return primitives.filter((p) => p.kind === "dot" || p.kind === "polyline");
}

function render(): void {
  if (!player) return;
  const frame = player.currentFrame();
  const commands = frameToCommands(frame, player.document.palette);
  drawCommands(ctx, player.document, commands);

  if (task.state.phase === "highlighting" && taskTarget) {
    const dot = frame.primitives.find(
      (p) => p.kind === "dot" && p.elementId === taskTarget,
    );
    const elapsed =
      nowSeconds() - (task.state.until - 2.0); /* highlight start */
    if (dot && dot.points[0] && flashVisible(elapsed)) {
      const [cx, cy] = dot.points[0];
      ctx.globalAlpha = 1;
      ctx.strokeStyle = "#000000";
      ctx.lineWidth = 3;
      ctx.beginPath();
      ctx.arc(cx, cy, (dot.radius ?? 4) + 5, 0, Math.PI * 2);
      ctx.stroke();
    }
  }
  if (task.state.phase === "feedback" && taskTarget) {
    const line = frame.primitives.find(
      (p) => p.kind === "polyline" && p.elementId === taskTarget,
    );
    if (line && flashVisible(nowSeconds() % 2.0)) {
      ctx.globalAlpha = 1;
      ctx.strokeStyle = task.state.correct ? "#2ca02c" : "#d62728";
      ctx.lineWidth = line.strokeWidth + 4;
      ctx.beginPath();
      for (const [i, [x, y]] of line.points.entries()) {
        if (i === 0) ctx.moveTo(x, y);
        else ctx.lineTo(x, y);
      }
      ctx.stroke();
    }
  }
}

function load(text: string): void {
  try {
    player = PlayerState.fromJson(text);
    canvas.width = player.document.viewport.width;
    canvas.height = player.document.viewport.height;
    showBanner("");
    render();
  } catch (error) {
    if (error instanceof DocumentError) showBanner(error.message);
    else throw error;
  }
}

picker.addEventListener("change", () => {
  const file = picker.files?.[0];
  if (file) void file.text().then(load);
});

const url = new URLSearchParams(window.location.search).get("doc");
if (url) {
  fetch(url)
    .then((r) => r.text())
    .then(load)
    .catch(() => showBanner(`failed to fetch ${url}`));
}

window.addEventListener("keydown", (event) => {
  if (player && player.handleKey(event.key)) event.preventDefault();
});

canvas.addEventListener("pointerdown", (event) => {
  if (!player) return;
  const rect = canvas.getBoundingClientRect();
  const x = ((event.clientX - rect.left) / rect.width) * canvas.width;
  const y = ((event.clientY - rect.top) / rect.height) * canvas.height;
  const candidates: HitCandidate[] = glyphPrimitives(
    player.currentFrame().primitives,
  )
    .filter((p) => p.kind === "polyline")
    .map((p) => ({ elementId: p.elementId, points: p.points }));
  const result = task.pointerDown(x, y, candidates, nowSeconds());
  if (result) {
    window.setTimeout(() => {
      task.finish();
      render();
    }, 2000);
  }
});

taskButton.addEventListener("click", () => {
  if (!player || task.state.phase !== "idle") return;
  const dots = glyphPrimitives(player.scrub(0).primitives).filter(
    (p) => p.kind === "dot",
  );
  if (dots.length === 0) return;
  taskTarget = dots[Math.floor(Math.random() * dots.length)]!.elementId;
  task.start(taskTarget, nowSeconds());
  window.setTimeout(() => {
    task.beginAnimation(nowSeconds());
    player!.scrub(0);
    player!.direction = "forward";
    player!.playing = true;
  }, 2000);
});

let last = performance.now();
function loop(timestamp: number): void {
  const dt = (timestamp - last) / 1000;
  last = timestamp;
  if (player) {
    const wasPlaying = player.playing;
    player.tick(dt);
    if (task.state.phase === "animating" && wasPlaying && !player.playing) {
      task.animationFinished(nowSeconds());
    }
    render();
  }
  requestAnimationFrame(loop);
}
requestAnimationFrame(loop);
