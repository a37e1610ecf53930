/**
 * Playback state machine for token animations: play, pause, restart, and
 * speed control. Driven by an injectable timer so tests run synchronously.
 */

export type PlayerMode = "playing" | "paused" | "finished";

export const SPEEDS = [0.5, 1, 2, 4] as const;
export type Speed = (typeof SPEEDS)[number];

export interface PlayerState {
  mode: PlayerMode;
  position: number; // frames advanced; <= stepCount
  speed: Speed;
}

export interface TimerPort {
  schedule(fn: () => void, delayMs: number): unknown;
  cancel(handle: unknown): void;
}

const defaultTimer: TimerPort = {
  schedule: (fn, delayMs) => setTimeout(fn, delayMs),
  cancel: (handle) => clearTimeout(handle as Parameters<typeof clearTimeout>[0]),
};

export interface PlayerOptions {
  baseIntervalMs?: number;
  timer?: TimerPort;
  onFrame?: (position: number) => void;
  onStateChange?: (state: PlayerState) => void;
}

export class AnimationPlayer {
  private readonly stepCount: number;
  private readonly baseIntervalMs: number;
  private readonly timer: TimerPort;
  private readonly onFrame?: (position: number) => void;
  private readonly onStateChange?: (state: PlayerState) => void;

  private mode: PlayerMode = "paused";
  private position = 0;
  private speed: Speed = 1;
  private pending: unknown = null;

  constructor(stepCount: number, options: PlayerOptions = {}) {
    this.stepCount = stepCount;
    this.baseIntervalMs = options.baseIntervalMs ?? 800;
    this.timer = options.timer ?? defaultTimer;
    this.onFrame = options.onFrame;
    this.onStateChange = options.onStateChange;
  }

  state(): PlayerState {
    return { mode: this.mode, position: this.position, speed: this.speed };
  }

  intervalMs(): number {
    return this.baseIntervalMs / this.speed;
  }

  play(): PlayerState {
    if (this.mode === "finished") {
      return this.restart();
    }
    if (this.mode !== "playing") {
      this.mode = this.stepCount === 0 ? "finished" : "playing";
      this.scheduleTick();
      this.changed();
    }
    return this.state();
  }

  pause(): PlayerState {
    if (this.mode === "playing") {
      this.cancelTick();
      this.mode = "paused";
      this.changed();
    }
    return this.state();
  }

  restart(): PlayerState {
    this.cancelTick();
    this.position = 0;
    this.mode = this.stepCount === 0 ? "finished" : "playing";
    this.onFrame?.(this.position);
    this.scheduleTick();
    this.changed();
    return this.state();
  }

  setSpeed(speed: Speed): PlayerState {
    this.speed = speed;
    if (this.mode === "playing") {
      this.cancelTick();
      this.scheduleTick();
    }
    this.changed();
    return this.state();
  }

  /** Advance one frame; exposed so a test timer can drive playback. */
  tick(): PlayerState {
    this.pending = null;
    if (this.mode !== "playing") {
      return this.state();
    }
    this.position = Math.min(this.position + 1, this.stepCount);
    this.onFrame?.(this.position);
    if (this.position >= this.stepCount) {
      this.mode = "finished";
    } else {
      this.scheduleTick();
    }
    this.changed();
    return this.state();
  }

  dispose(): void {
    this.cancelTick();
  }

  private scheduleTick(): void {
    if (this.mode === "playing" && this.pending === null) {
      this.pending = this.timer.schedule(() => this.tick(), this.intervalMs());
    }
  }

  private cancelTick(): void {
    if (this.pending !== null) {
      this.timer.cancel(this.pending);
      this.pending = null;
    }
  }

  private changed(): void {
    this.onStateChange?.(this.state());
  }
}
