/** Pure passthrough rendering: a frame becomes a list of draw commands with
 * no coordinate arithmetic. A canvas backend executes the commands; tests
 * assert the commands echo the frame's primitives exactly. */

import type { Frame, KeyframeDocument, Primitive } from "./document.js";

export interface CircleCommand {
  op: "circle";
  elementId: string;
  cx: number;
  cy: number;
  radius: number;
  color: string;
  opacity: number;
}

export interface PolylineCommand {
  op: "polyline";
  elementId: string;
  points: [number, number][];
  strokeWidth: number;
  color: string;
  opacity: number;
}

export interface TextCommand {
  op: "text";
  elementId: string;
  x: number;
  y: number;
  text: string;
  color: string;
  opacity: number;
}

export type DrawCommand = CircleCommand | PolylineCommand | TextCommand;

const LINK_COLOR = "#999999";
const AXIS_COLOR = "#333333";
const LABEL_COLOR = "#333333";

export function primitiveColor(p: Primitive, palette: string[]): string {
  if (p.colorIndex < 0) {
    if (p.kind === "link") return LINK_COLOR;
    if (p.kind === "axis") return AXIS_COLOR;
    return LABEL_COLOR;
  }
  return palette[p.colorIndex % palette.length]!;
}

/** Translate one frame into draw commands, preserving primitive order and
 * every coordinate verbatim. */
export function frameToCommands(frame: Frame, palette: string[]): DrawCommand[] {
  const commands: DrawCommand[] = [];
  for (const p of frame.primitives) {
    const color = primitiveColor(p, palette);
    if (p.kind === "dot") {
      const [center] = p.points;
      if (center === undefined) continue;
      commands.push({
        op: "circle",
        elementId: p.elementId,
        cx: center[0],
        cy: center[1],
        radius: p.radius ?? 0,
        color,
        opacity: p.opacity,
      });
    } else if (p.kind === "label") {
      const [anchor] = p.points;
      if (anchor === undefined) continue;
      commands.push({
        op: "text",
        elementId: p.elementId,
        x: anchor[0],
        y: anchor[1],
        text: p.text ?? "",
        color,
        opacity: p.opacity,
      });
    } else {
      commands.push({
        op: "polyline",
        elementId: p.elementId,
        points: p.points,
        strokeWidth: p.strokeWidth,
        color,
        opacity: p.opacity,
      });
    }
  }
  return commands;
}

/** Execute draw commands on a 2D canvas context. */
export function drawCommands(
  ctx: CanvasRenderingContext2D,
  doc: KeyframeDocument,
  commands: DrawCommand[],
): void {
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, doc.viewport.width, doc.viewport.height);
  for (const cmd of commands) {
    ctx.globalAlpha = cmd.opacity;
    if (cmd.op === "circle") {
      ctx.fillStyle = cmd.color;
      ctx.beginPath();
      ctx.arc(cmd.cx, cmd.cy, cmd.radius, 0, Math.PI * 2);
      ctx.fill();
    } else if (cmd.op === "text") {
      ctx.fillStyle = cmd.color;
      ctx.font = "12px sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(cmd.text, cmd.x, cmd.y);
    } else {
      ctx.strokeStyle = cmd.color;
      ctx.lineWidth = cmd.strokeWidth;
      ctx.lineCap = "round";
      ctx.lineJoin = "round";
      ctx.beginPath();
      for (const [i, [x, y]] of cmd.points.entries()) {
        if (i === 0) ctx.moveTo(x, y);
        else ctx.lineTo(x, y);
      }
      ctx.stroke();
    }
  }
  ctx.globalAlpha = 1;
}
