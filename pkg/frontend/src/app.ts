/**
 * Application core: wires the service client, overlays, animation player,
 * and undo history against an abstract diagram canvas.
 *
 * The rendered view is a pure function of (model XML, diagnosis document,
 * player state); identical inputs produce identical overlay sets and token
 * layouts. One service request is in flight at a time: responses carry a
 * sequence number and stale ones are discarded.
 */

import {
  AnimationScript,
  TokenLayout,
  buildAnimation,
  scriptFrames,
} from "./animation.js";
import { ServiceClient, StaleFixError } from "./client.js";
import { OverlayDescriptor, computeOverlays, summarize, SummaryLine } from "./overlays.js";
import { AnimationPlayer, PlayerOptions, PlayerState, Speed } from "./player.js";
import type { DiagnosisDocument, ViolationDoc } from "./types.js";
import { UndoStack } from "./undoStack.js";

export interface CanvasPort {
  /** Load diagram XML; must make element ids queryable afterwards. */
  loadXml(xml: string): void | Promise<void>;
  /** Element ids present on the canvas, or null when unknown. */
  knownElements(): Set<string> | null;
  setOverlays(overlays: OverlayDescriptor[]): void;
  setTokens(layout: TokenLayout): void;
  setSummary(lines: SummaryLine[]): void;
  /** Console-level warning channel (missing overlay anchors etc.). */
  warn(message: string): void;
  toast(message: string): void;
}

interface Snapshot {
  xml: string;
  doc: DiagnosisDocument;
}

export class AnalyzerApp {
  private xml: string | null = null;
  private doc: DiagnosisDocument | null = null;
  private player: AnimationPlayer | null = null;
  private frames: TokenLayout[] = [];
  private readonly history = new UndoStack<Snapshot>();
  private requestSeq = 0;

  constructor(
    private readonly canvas: CanvasPort,
    private readonly client: ServiceClient,
    private readonly playerOptions: PlayerOptions = {},
  ) {}

  get currentXml(): string | null {
    return this.xml;
  }

  get currentDoc(): DiagnosisDocument | null {
    return this.doc;
  }

  get undoDepth(): number {
    return this.history.depth;
  }

  playerState(): PlayerState | null {
    return this.player?.state() ?? null;
  }

  /** Analyze a model and render the diagnosis; resets the undo history. */
  async loadModel(xml: string, lenient = false): Promise<DiagnosisDocument> {
    const seq = ++this.requestSeq;
    const doc = await this.client.analyze(xml, lenient);
    if (seq !== this.requestSeq) {
      return doc; // a newer request superseded this one
    }
    this.history.clear();
    await this.show(xml, doc);
    return doc;
  }

  /** Render a document against the already-loaded diagram. */
  renderDiagnosis(doc: DiagnosisDocument): OverlayDescriptor[] {
    const known = this.canvas.knownElements();
    let overlays = computeOverlays(doc);
    if (known !== null) {
      overlays = overlays.filter((o) => {
        if (known.has(o.element)) return true;
        this.canvas.warn(`overlay target ${o.element} is not on the canvas`);
        return false;
      });
    }
    this.canvas.setOverlays(overlays);
    this.canvas.setSummary(summarize(doc));
    return overlays;
  }

  /** Violations that carry an execution to animate. */
  animatableViolations(): ViolationDoc[] {
    if (!this.doc) return [];
    return this.doc.properties
      .flatMap((p) => p.violations)
      .filter((v) => v.trace !== undefined);
  }

  /**
   * Build the token animation for a violation and attach a paused player.
   * Returns null (and surfaces the problem) for inconsistent traces.
   */
  startAnimation(violation: ViolationDoc, initialFlows: string[]): AnimationPlayer | null {
    if (!violation.trace) return null;
    let script: AnimationScript;
    try {
      script = buildAnimation(violation.trace, initialFlows);
      this.frames = scriptFrames(script, initialFlows);
    } catch (err) {
      this.canvas.toast(`cannot animate this trace: ${(err as Error).message}`);
      return null;
    }
    this.player?.dispose();
    this.player = new AnimationPlayer(script.steps.length, {
      ...this.playerOptions,
      onFrame: (position) => this.canvas.setTokens(this.frames[position]),
      onStateChange: this.playerOptions.onStateChange,
    });
    this.canvas.setTokens(this.frames[0]);
    return this.player;
  }

  /** Apply a quick fix via the service; pushes an undo snapshot first. */
  async applyFix(fixId: string): Promise<boolean> {
    if (this.xml === null || this.doc === null) {
      throw new Error("no model loaded");
    }
    const before: Snapshot = { xml: this.xml, doc: this.doc };
    const seq = ++this.requestSeq;
    let response;
    try {
      response = await this.client.applyFix(this.xml, fixId);
    } catch (err) {
      if (err instanceof StaleFixError) {
        this.canvas.toast("the model changed; re-analyze before applying fixes");
        return false;
      }
      throw err;
    }
    if (seq !== this.requestSeq) {
      return false;
    }
    this.history.push(before);
    await this.show(response.xml, response.diagnosis);
    return true;
  }

  /** Restore the exact XML and diagnosis from before the last fix. */
  async undo(): Promise<boolean> {
    const snapshot = this.history.undo();
    if (!snapshot) return false;
    await this.show(snapshot.xml, snapshot.doc);
    return true;
  }

  private async show(xml: string, doc: DiagnosisDocument): Promise<void> {
    this.player?.dispose();
    this.player = null;
    this.frames = [];
    this.xml = xml;
    this.doc = doc;
    await this.canvas.loadXml(xml);
    this.renderDiagnosis(doc);
    this.canvas.setTokens({});
  }
}

export type { PlayerState, Speed };
