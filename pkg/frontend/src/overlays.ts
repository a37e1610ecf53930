/**
 * Diagram overlays derived from a diagnosis document: red alert badges on
 * violation elements, green light bulbs on quick-fix targets, plus the
 * summary panel lines. Pure functions of the document.
 */

import type { DiagnosisDocument } from "./types.js";

export type OverlaySeverity = "error" | "fix";

export interface OverlayDescriptor {
  element: string;
  severity: OverlaySeverity;
  text: string;
  icon: "alert" | "lightbulb";
}

export interface SummaryLine {
  name: string;
  status: "fulfilled" | "violated" | "unknown";
  detail: string;
}

/** One overlay per (element, severity); multiple causes merge into the tooltip. */
export function computeOverlays(doc: DiagnosisDocument): OverlayDescriptor[] {
  const errors = new Map<string, string[]>();
  for (const property of doc.properties) {
    for (const violation of property.violations) {
      for (const element of violation.elements) {
        const texts = errors.get(element) ?? [];
        if (!texts.includes(violation.kind)) texts.push(violation.kind);
        errors.set(element, texts);
      }
    }
  }
  const fixes = new Map<string, string[]>();
  for (const fix of doc.quickFixes) {
    for (const element of fix.targets) {
      const texts = fixes.get(element) ?? [];
      texts.push(fix.description);
      fixes.set(element, texts);
    }
  }
  const overlays: OverlayDescriptor[] = [];
  for (const element of [...errors.keys()].sort()) {
    overlays.push({
      element,
      severity: "error",
      text: errors.get(element)!.join(", "),
      icon: "alert",
    });
  }
  for (const element of [...fixes.keys()].sort()) {
    overlays.push({
      element,
      severity: "fix",
      text: fixes.get(element)!.join("\n"),
      icon: "lightbulb",
    });
  }
  return overlays;
}

const STATUS: Record<string, SummaryLine["status"]> = {
  true: "fulfilled",
  false: "violated",
  unknown: "unknown",
};

export function summarize(doc: DiagnosisDocument): SummaryLine[] {
  return doc.properties.map((property) => ({
    name: property.name,
    status: STATUS[property.fulfilled],
    detail: property.violations
      .map((v) => `${v.kind} at ${v.elements.join(", ")}`)
      .join("; "),
  }));
}

export function hasErrors(doc: DiagnosisDocument): boolean {
  return doc.properties.some((p) => p.fulfilled !== "true");
}
