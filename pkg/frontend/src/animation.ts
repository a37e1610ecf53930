/**
 * Token animation scripts derived from counterexample traces.
 *
 * A script replays the trace's token moves over the initial layout; the
 * final frame shows the erroneous state (for an unsafe state that means a
 * count of two on the offending flow).
 */

import type { TraceDoc, TraceStepDoc } from "./types.js";

export const INITIAL = "initial";
export const CONSUMED = "consumed";

export interface TokenMove {
  from: string; // flow id, or INITIAL when the token appears out of the node
  to: string; // flow id, or CONSUMED when the token disappears into the node
}

export interface AnimationStep {
  fire: string;
  tokenMoves: TokenMove[];
}

export interface AnimationScript {
  steps: AnimationStep[];
}

/** Token counts per flow id. */
export type TokenLayout = Record<string, number>;

export class InconsistentTraceError extends Error {}

function stepMoves(step: TraceStepDoc): TokenMove[] {
  const moves: TokenMove[] = [];
  const shared = Math.min(step.consume.length, step.produce.length);
  for (let i = 0; i < shared; i++) {
    moves.push({ from: step.consume[i], to: step.produce[i] });
  }
  for (let i = shared; i < step.consume.length; i++) {
    moves.push({ from: step.consume[i], to: CONSUMED });
  }
  for (let i = shared; i < step.produce.length; i++) {
    moves.push({ from: INITIAL, to: step.produce[i] });
  }
  return moves;
}

function applyMoves(layout: TokenLayout, moves: TokenMove[]): TokenLayout {
  const next: TokenLayout = { ...layout };
  for (const move of moves) {
    if (move.from !== INITIAL) {
      const have = next[move.from] ?? 0;
      if (have < 1) {
        throw new InconsistentTraceError(
          `token move consumes from empty flow ${move.from}`,
        );
      }
      if (have === 1) delete next[move.from];
      else next[move.from] = have - 1;
    }
    if (move.to !== CONSUMED) {
      next[move.to] = (next[move.to] ?? 0) + 1;
    }
  }
  return next;
}

/**
 * Build the animation for a trace, validating it against the initial token
 * layout. Throws InconsistentTraceError when a step would consume a token
 * that is not there; callers disable the animation and surface the error.
 */
export function buildAnimation(
  trace: TraceDoc,
  initialFlows: string[],
): AnimationScript {
  const script: AnimationScript = {
    steps: trace.steps.map((step) => ({
      fire: step.fire,
      tokenMoves: stepMoves(step),
    })),
  };
  scriptFrames(script, initialFlows); // validation pass
  return script;
}

/** Layout per position: frames[0] is the initial layout, frames[k] follows step k. */
export function scriptFrames(
  script: AnimationScript,
  initialFlows: string[],
): TokenLayout[] {
  let layout: TokenLayout = {};
  for (const flow of initialFlows) layout[flow] = (layout[flow] ?? 0) + 1;
  const frames = [layout];
  for (const step of script.steps) {
    layout = applyMoves(layout, step.tokenMoves);
    frames.push(layout);
  }
  return frames;
}
