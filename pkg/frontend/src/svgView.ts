/**
 * Self-contained SVG diagram renderer. Reads the diagram-interchange
 * section of the BPMN XML (shape bounds and edge waypoints), so any model
 * serialized by the engine, including generated ones, renders without an
 * external modeling library. Implements the CanvasPort used by the app.
 */

import type { TokenLayout } from "./animation.js";
import type { CanvasPort } from "./app.js";
import type { OverlayDescriptor, SummaryLine } from "./overlays.js";

const SVG_NS = "http://www.w3.org/2000/svg";

interface Shape {
  id: string;
  kind: string;
  name: string;
  x: number;
  y: number;
  w: number;
  h: number;
}

interface Edge {
  id: string;
  kind: string;
  points: { x: number; y: number }[];
}

const GATEWAY_MARKERS: Record<string, string> = {
  exclusiveGateway: "×",
  parallelGateway: "+",
  eventBasedGateway: "⬡",
};

function local(tag: string): string {
  const idx = tag.indexOf(":");
  return idx >= 0 ? tag.slice(idx + 1) : tag;
}

export class SvgDiagramView implements CanvasPort {
  private shapes = new Map<string, Shape>();
  private edges = new Map<string, Edge>();
  private svg: SVGSVGElement | null = null;
  private overlayLayer: SVGGElement | null = null;
  private tokenLayer: SVGGElement | null = null;

  constructor(
    private readonly host: HTMLElement,
    private readonly summaryHost: HTMLElement,
    private readonly toastHost: HTMLElement,
  ) {}

  loadXml(xml: string): void {
    const dom = new DOMParser().parseFromString(xml, "application/xml");
    this.shapes.clear();
    this.edges.clear();
    const kinds = new Map<string, { kind: string; name: string }>();
    for (const el of Array.from(dom.getElementsByTagName("*"))) {
      const id = el.getAttribute("id");
      if (id) {
        kinds.set(id, {
          kind: local(el.tagName),
          name: el.getAttribute("name") ?? "",
        });
      }
    }
    for (const el of Array.from(dom.getElementsByTagName("*"))) {
      const tag = local(el.tagName);
      const ref = el.getAttribute("bpmnElement");
      if (!ref) continue;
      if (tag === "BPMNShape") {
        const bounds = Array.from(el.children).find(
          (c) => local(c.tagName) === "Bounds",
        );
        if (!bounds) continue;
        const meta = kinds.get(ref) ?? { kind: "task", name: "" };
        this.shapes.set(ref, {
          id: ref,
          kind: meta.kind,
          name: meta.name,
          x: Number(bounds.getAttribute("x")),
          y: Number(bounds.getAttribute("y")),
          w: Number(bounds.getAttribute("width")),
          h: Number(bounds.getAttribute("height")),
        });
      } else if (tag === "BPMNEdge") {
        const points = Array.from(el.children)
          .filter((c) => local(c.tagName) === "waypoint")
          .map((c) => ({
            x: Number(c.getAttribute("x")),
            y: Number(c.getAttribute("y")),
          }));
        if (points.length >= 2) {
          const meta = kinds.get(ref) ?? { kind: "sequenceFlow", name: "" };
          this.edges.set(ref, { id: ref, kind: meta.kind, points });
        }
      }
    }
    this.render();
  }

  knownElements(): Set<string> | null {
    if (this.shapes.size === 0 && this.edges.size === 0) return null;
    return new Set([...this.shapes.keys(), ...this.edges.keys()]);
  }

  setOverlays(overlays: OverlayDescriptor[]): void {
    if (!this.overlayLayer) return;
    this.overlayLayer.replaceChildren();
    for (const overlay of overlays) {
      const anchor = this.anchorOf(overlay.element);
      if (!anchor) continue;
      const g = document.createElementNS(SVG_NS, "g");
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", String(anchor.x));
      circle.setAttribute("cy", String(anchor.y));
      circle.setAttribute("r", "11");
      circle.setAttribute(
        "fill",
        overlay.severity === "error" ? "#d62f2f" : "#2e9e44",
      );
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(anchor.x));
      label.setAttribute("y", String(anchor.y + 4));
      label.setAttribute("text-anchor", "middle");
      label.setAttribute("fill", "#fff");
      label.setAttribute("font-size", "12");
      label.textContent = overlay.icon === "alert" ? "!" : "★";
      const tip = document.createElementNS(SVG_NS, "title");
      tip.textContent = overlay.text;
      g.append(circle, label, tip);
      this.overlayLayer.append(g);
    }
  }

  setTokens(layout: TokenLayout): void {
    if (!this.tokenLayer) return;
    this.tokenLayer.replaceChildren();
    for (const [flowId, count] of Object.entries(layout)) {
      if (!count) continue;
      const edge = this.edges.get(flowId);
      let x: number, y: number;
      if (edge) {
        const mid = Math.floor(edge.points.length / 2);
        const a = edge.points[mid - 1];
        const b = edge.points[mid];
        x = (a.x + b.x) / 2;
        y = (a.y + b.y) / 2;
      } else {
        const anchor = this.anchorOf(flowId);
        if (!anchor) continue;
        x = anchor.x;
        y = anchor.y;
      }
      const g = document.createElementNS(SVG_NS, "g");
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(x));
      dot.setAttribute("cy", String(y));
      dot.setAttribute("r", "10");
      dot.setAttribute("fill", "#1a6ed8");
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String(x));
      text.setAttribute("y", String(y + 4));
      text.setAttribute("text-anchor", "middle");
      text.setAttribute("fill", "#fff");
      text.setAttribute("font-size", "11");
      text.textContent = String(count);
      g.append(dot, text);
      this.tokenLayer.append(g);
    }
  }

  setSummary(lines: SummaryLine[]): void {
    this.summaryHost.replaceChildren();
    for (const line of lines) {
      const row = document.createElement("div");
      row.className = `summary ${line.status}`;
      row.textContent = `${line.name}: ${line.status}${
        line.detail ? ` (${line.detail})` : ""
      }`;
      this.summaryHost.append(row);
    }
  }

  warn(message: string): void {
    console.warn(message);
  }

  toast(message: string): void {
    this.toastHost.textContent = message;
    this.toastHost.classList.add("visible");
    setTimeout(() => this.toastHost.classList.remove("visible"), 4000);
  }

  private anchorOf(elementId: string): { x: number; y: number } | null {
    const shape = this.shapes.get(elementId);
    if (shape) return { x: shape.x + shape.w, y: shape.y };
    const edge = this.edges.get(elementId);
    if (edge) {
      const mid = Math.floor(edge.points.length / 2);
      const a = edge.points[mid - 1];
      const b = edge.points[mid];
      return { x: (a.x + b.x) / 2, y: (a.y + b.y) / 2 - 14 };
    }
    return null;
  }

  private render(): void {
    let maxX = 400;
    let maxY = 300;
    for (const s of this.shapes.values()) {
      maxX = Math.max(maxX, s.x + s.w);
      maxY = Math.max(maxY, s.y + s.h);
    }
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${maxX + 60} ${maxY + 60}`);
    svg.setAttribute("width", "100%");

    const defs = document.createElementNS(SVG_NS, "defs");
    defs.innerHTML =
      '<marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="3" orient="auto">' +
      '<path d="M0,0 L7,3 L0,6 z" fill="#444"/></marker>';
    svg.append(defs);

    const edgeLayer = document.createElementNS(SVG_NS, "g");
    for (const edge of this.edges.values()) {
      const line = document.createElementNS(SVG_NS, "polyline");
      line.setAttribute(
        "points",
        edge.points.map((p) => `${p.x},${p.y}`).join(" "),
      );
      line.setAttribute("fill", "none");
      line.setAttribute("stroke", "#444");
      line.setAttribute("marker-end", "url(#arrow)");
      if (edge.kind === "messageFlow") line.setAttribute("stroke-dasharray", "6 4");
      edgeLayer.append(line);
    }
    svg.append(edgeLayer);

    const shapeLayer = document.createElementNS(SVG_NS, "g");
    for (const shape of this.shapes.values()) {
      shapeLayer.append(this.renderShape(shape));
    }
    svg.append(shapeLayer);

    this.tokenLayer = document.createElementNS(SVG_NS, "g");
    this.overlayLayer = document.createElementNS(SVG_NS, "g");
    svg.append(this.tokenLayer, this.overlayLayer);

    this.host.replaceChildren(svg);
    this.svg = svg;
  }

  private renderShape(shape: Shape): SVGGElement {
    const g = document.createElementNS(SVG_NS, "g");
    const kind = shape.kind;
    let outline: SVGElement;
    if (kind === "participant") {
      outline = this.rect(shape, 4, "#fbfbfb");
    } else if (kind.endsWith("Gateway")) {
      const cx = shape.x + shape.w / 2;
      const cy = shape.y + shape.h / 2;
      outline = document.createElementNS(SVG_NS, "polygon");
      outline.setAttribute(
        "points",
        `${cx},${shape.y} ${shape.x + shape.w},${cy} ${cx},${shape.y + shape.h} ${shape.x},${cy}`,
      );
      outline.setAttribute("fill", "#fff");
      const marker = GATEWAY_MARKERS[kind];
      if (marker) {
        const text = document.createElementNS(SVG_NS, "text");
        text.setAttribute("x", String(cx));
        text.setAttribute("y", String(cy + 6));
        text.setAttribute("text-anchor", "middle");
        text.setAttribute("font-size", "20");
        text.textContent = marker;
        g.append(text);
        g.prepend(outline);
        this.labelBelow(g, shape);
        outline.setAttribute("stroke", "#333");
        return g;
      }
    } else if (kind.includes("Event") || kind.startsWith("intermediate")) {
      outline = document.createElementNS(SVG_NS, "circle");
      outline.setAttribute("cx", String(shape.x + shape.w / 2));
      outline.setAttribute("cy", String(shape.y + shape.h / 2));
      outline.setAttribute("r", String(shape.w / 2));
      outline.setAttribute("fill", "#fff");
      if (kind === "endEvent") outline.setAttribute("stroke-width", "3");
    } else {
      outline = this.rect(shape, 8, "#fff");
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(shape.x + shape.w / 2));
      label.setAttribute("y", String(shape.y + shape.h / 2 + 4));
      label.setAttribute("text-anchor", "middle");
      label.setAttribute("font-size", "12");
      label.textContent = shape.name || shape.id;
      g.append(outline, label);
      outline.setAttribute("stroke", "#333");
      return g;
    }
    outline.setAttribute("stroke", "#333");
    g.prepend(outline);
    this.labelBelow(g, shape);
    return g;
  }

  private rect(shape: Shape, radius: number, fill: string): SVGRectElement {
    const rect = document.createElementNS(SVG_NS, "rect");
    rect.setAttribute("x", String(shape.x));
    rect.setAttribute("y", String(shape.y));
    rect.setAttribute("width", String(shape.w));
    rect.setAttribute("height", String(shape.h));
    rect.setAttribute("rx", String(radius));
    rect.setAttribute("fill", fill);
    return rect;
  }

  private labelBelow(g: SVGGElement, shape: Shape): void {
    if (!shape.name) return;
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(shape.x + shape.w / 2));
    label.setAttribute("y", String(shape.y + shape.h + 14));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("font-size", "11");
    label.textContent = shape.name;
    g.append(label);
  }
}
