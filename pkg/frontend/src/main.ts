/**
 * Browser entry point: wires the SVG view, service client, player controls,
 * fix list, and undo button into the page.
 */

import { AnalyzerApp } from "./app.js";
import { ServiceClient } from "./client.js";
import { SPEEDS, Speed } from "./player.js";
import { SvgDiagramView } from "./svgView.js";
import type { ViolationDoc } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function setup(): void {
  const view = new SvgDiagramView(el("diagram"), el("summary"), el("toast"));
  const baseUrl = () => el<HTMLInputElement>("service-url").value.replace(/\/$/, "");
  let app = new AnalyzerApp(view, new ServiceClient(baseUrl()));

  const violationsHost = el("violations");
  const fixesHost = el("fixes");
  const playerBar = el("player");

  function startFlows(xml: string): string[] {
    const dom = new DOMParser().parseFromString(xml, "application/xml");
    const flows: string[] = [];
    for (const node of Array.from(dom.getElementsByTagName("*"))) {
      const tag = node.tagName.split(":").pop();
      if (tag !== "startEvent") continue;
      const hasDef = Array.from(node.children).some((c) =>
        c.tagName.endsWith("EventDefinition"),
      );
      if (hasDef) continue;
      const id = node.getAttribute("id");
      for (const flow of Array.from(dom.getElementsByTagName("*"))) {
        if (
          flow.tagName.split(":").pop() === "sequenceFlow" &&
          flow.getAttribute("sourceRef") === id
        ) {
          flows.push(flow.getAttribute("id")!);
        }
      }
    }
    return flows;
  }

  function renderSidebar(): void {
    const doc = app.currentDoc;
    violationsHost.replaceChildren();
    fixesHost.replaceChildren();
    el<HTMLButtonElement>("undo").disabled = app.undoDepth === 0;
    if (!doc) return;
    for (const violation of app.animatableViolations()) {
      const row = document.createElement("button");
      row.textContent = `▶ ${violation.kind} at ${violation.elements.join(", ")}`;
      row.addEventListener("click", () => animate(violation));
      violationsHost.append(row);
    }
    for (const fix of doc.quickFixes) {
      const row = document.createElement("button");
      row.className = "fix";
      row.textContent = `💡 ${fix.description}`;
      row.addEventListener("click", async () => {
        await app.applyFix(fix.id);
        renderSidebar();
      });
      fixesHost.append(row);
    }
  }

  function animate(violation: ViolationDoc): void {
    const xml = app.currentXml;
    if (!xml) return;
    const player = app.startAnimation(violation, startFlows(xml));
    if (!player) return;
    playerBar.classList.remove("hidden");
    el("play").onclick = () => player.play();
    el("pause").onclick = () => player.pause();
    el("restart").onclick = () => player.restart();
    const speedHost = el("speeds");
    speedHost.replaceChildren();
    for (const speed of SPEEDS) {
      const btn = document.createElement("button");
      btn.textContent = `${speed}×`;
      btn.addEventListener("click", () => player.setSpeed(speed as Speed));
      speedHost.append(btn);
    }
    player.play();
  }

  el<HTMLButtonElement>("analyze").addEventListener("click", async () => {
    app = new AnalyzerApp(view, new ServiceClient(baseUrl()));
    const xml = el<HTMLTextAreaElement>("xml-input").value;
    try {
      await app.loadModel(xml, el<HTMLInputElement>("lenient").checked);
    } catch (err) {
      view.toast(`analysis failed: ${(err as Error).message}`);
    }
    renderSidebar();
  });

  el<HTMLInputElement>("file-input").addEventListener("change", async (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (!file) return;
    el<HTMLTextAreaElement>("xml-input").value = await file.text();
  });

  el<HTMLButtonElement>("undo").addEventListener("click", async () => {
    await app.undo();
    renderSidebar();
  });

  document.addEventListener("keydown", (event) => {
    const state = app.playerState();
    if (!state) return;
    if (event.key === " ") {
      event.preventDefault();
      state.mode === "playing" ? el("pause").click() : el("play").click();
    } else if (event.key === "r") {
      el("restart").click();
    }
  });
}

document.addEventListener("DOMContentLoaded", setup);
