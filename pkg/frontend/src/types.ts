/**
 * Wire types of the analysis service's diagnostics contract.
 * The UI consumes only this document; no verification logic lives here.
 */

export interface TraceStepDoc {
  fire: string;
  consume: string[];
  produce: string[];
}

export interface TraceDoc {
  steps: TraceStepDoc[];
}

export interface ViolationDoc {
  kind: string;
  elements: string[];
  trace?: TraceDoc;
  cycle?: TraceStepDoc[];
  note?: string;
}

export type Fulfilled = "true" | "false" | "unknown";

export interface PropertyDoc {
  name: string;
  fulfilled: Fulfilled;
  violations: ViolationDoc[];
}

export interface StatsDoc {
  states: number;
  transitions: number;
  runtime_us: number;
  boundHit?: string;
}

export interface QuickFixDoc {
  id: string;
  kind: string;
  targets: string[];
  description: string;
}

export interface WarningDoc {
  kind: string;
  elements: string[];
}

export interface DiagnosisDocument {
  model: string;
  stats: StatsDoc;
  properties: PropertyDoc[];
  quickFixes: QuickFixDoc[];
  warnings: WarningDoc[];
}

export interface ApplyFixResponse {
  xml: string;
  diagnosis: DiagnosisDocument;
}
