import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { CanvasPort } from "../src/app.js";
import type { TokenLayout } from "../src/animation.js";
import type { OverlayDescriptor, SummaryLine } from "../src/overlays.js";
import type { DiagnosisDocument, ApplyFixResponse } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function fixtureJson<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

export function fixtureText(name: string): string {
  return readFileSync(join(here, "fixtures", name), "utf-8");
}

export const deadlockDoc = () => fixtureJson<DiagnosisDocument>("deadlock.doc.json");
export const unsafeDoc = () => fixtureJson<DiagnosisDocument>("unsafe.doc.json");
export const soundDoc = () => fixtureJson<DiagnosisDocument>("sound.doc.json");
export const reusedEndDoc = () => fixtureJson<DiagnosisDocument>("reused_end.doc.json");
export const deadlockXml = () => fixtureText("deadlock.bpmn");
export const deadlockFixApplied = () =>
  fixtureJson<ApplyFixResponse>("deadlock.fix_applied.json");

/** In-memory canvas capturing everything the app renders. */
export class FakeCanvas implements CanvasPort {
  xml: string | null = null;
  overlays: OverlayDescriptor[] = [];
  tokens: TokenLayout = {};
  summary: SummaryLine[] = [];
  warnings: string[] = [];
  toasts: string[] = [];
  known: Set<string> | null = null;

  loadXml(xml: string): void {
    this.xml = xml;
  }

  knownElements(): Set<string> | null {
    return this.known;
  }

  setOverlays(overlays: OverlayDescriptor[]): void {
    this.overlays = overlays;
  }

  setTokens(layout: TokenLayout): void {
    this.tokens = layout;
  }

  setSummary(lines: SummaryLine[]): void {
    this.summary = lines;
  }

  warn(message: string): void {
    this.warnings.push(message);
  }

  toast(message: string): void {
    this.toasts.push(message);
  }
}

/** Deterministic manual timer for driving the player in tests. */
export class ManualTimer {
  scheduled: { fn: () => void; delayMs: number; id: number }[] = [];
  private nextId = 1;

  schedule(fn: () => void, delayMs: number): unknown {
    const id = this.nextId++;
    this.scheduled.push({ fn, delayMs, id });
    return id;
  }

  cancel(handle: unknown): void {
    this.scheduled = this.scheduled.filter((t) => t.id !== handle);
  }

  fire(): void {
    const next = this.scheduled.shift();
    next?.fn();
  }

  get pendingDelays(): number[] {
    return this.scheduled.map((t) => t.delayMs);
  }
}
