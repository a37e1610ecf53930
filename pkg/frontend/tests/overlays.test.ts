import { describe, expect, it } from "vitest";

import { computeOverlays, hasErrors, summarize } from "../src/overlays.js";
import { deadlockDoc, reusedEndDoc, soundDoc, unsafeDoc } from "./helpers.js";

describe("computeOverlays", () => {
  it("deadlock document yields one red overlay and one light bulb", () => {
    const overlays = computeOverlays(deadlockDoc());
    const errors = overlays.filter((o) => o.severity === "error");
    const fixes = overlays.filter((o) => o.severity === "fix");
    expect(errors).toHaveLength(1);
    expect(errors[0].element).toBe("g2");
    expect(errors[0].icon).toBe("alert");
    expect(errors[0].text).toContain("Deadlock");
    expect(fixes.length).toBeGreaterThanOrEqual(1);
    expect(fixes[0].icon).toBe("lightbulb");
    expect(fixes[0].element).toBe("g2");
  });

  it("fulfilled document yields no overlays", () => {
    expect(computeOverlays(soundDoc())).toHaveLength(0);
  });

  it("one overlay per (element, severity)", () => {
    for (const doc of [deadlockDoc(), unsafeDoc(), reusedEndDoc()]) {
      const seen = new Set<string>();
      for (const overlay of computeOverlays(doc)) {
        const key = `${overlay.element}|${overlay.severity}`;
        expect(seen.has(key)).toBe(false);
        seen.add(key);
      }
    }
  });

  it("is deterministic for identical documents", () => {
    expect(computeOverlays(reusedEndDoc())).toEqual(computeOverlays(reusedEndDoc()));
  });

  it("unsafe document anchors the error on the offending flow", () => {
    const errors = computeOverlays(unsafeDoc()).filter((o) => o.severity === "error");
    expect(errors.map((o) => o.element)).toContain("f5");
  });
});

describe("summarize", () => {
  it("reports per-property status", () => {
    const lines = summarize(deadlockDoc());
    expect(lines).toHaveLength(3);
    const byName = Object.fromEntries(lines.map((l) => [l.name, l.status]));
    expect(byName["OptionToComplete"]).toBe("violated");
    expect(byName["Safeness"]).toBe("fulfilled");
    expect(byName["NoDeadActivities"]).toBe("fulfilled");
  });

  it("sound document summarizes green", () => {
    expect(summarize(soundDoc()).every((l) => l.status === "fulfilled")).toBe(true);
    expect(hasErrors(soundDoc())).toBe(false);
    expect(hasErrors(deadlockDoc())).toBe(true);
  });
});
