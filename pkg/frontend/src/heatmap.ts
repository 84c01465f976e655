/** Heatmap panel: normalized cell values painted blue (0) to red (1). */

import type { HeatmapComponent, HeatmapResponse } from "./api";
import { blueRed, classColor, toCss } from "./colormap";

/** Pure pixel-buffer builder (one RGBA pixel per cell, row 0 at the top).
 * Grid rows are y-ascending, canvas rows y-descending, so rows flip. */
export function buildPixels(values: number[], nx: number, ny: number): Uint8ClampedArray {
  const out = new Uint8ClampedArray(nx * ny * 4);
  for (let j = 0; j < ny; j++) {
    const srcRow = ny - 1 - j;
    for (let i = 0; i < nx; i++) {
      const { r, g, b } = blueRed(values[srcRow * nx + i]);
      const at = (j * nx + i) * 4;
      out[at] = r;
      out[at + 1] = g;
      out[at + 2] = b;
      out[at + 3] = 255;
    }
  }
  return out;
}

export function isFlat(component: HeatmapComponent): boolean {
  return component.raw_min === component.raw_max;
}

/** 2D context or null; some test environments have no canvas backend. */
export function get2d(canvas: HTMLCanvasElement): CanvasRenderingContext2D | null {
  try {
    return canvas.getContext("2d");
  } catch {
    return null;
  }
}

export interface HeatmapPanel {
  canvas: HTMLCanvasElement;
  flatBadge: HTMLElement;
  colorbarMin: HTMLElement;
  colorbarMax: HTMLElement;
  xLabel: HTMLElement;
  yLabel: HTMLElement;
}

export function renderHeatmap(
  panel: HeatmapPanel,
  response: HeatmapResponse,
  componentName: string,
  overlayScatter: boolean,
): void {
  const component =
    response.components.find((c) => c.name === componentName) ?? response.components[0];
  const { nx, ny } = response.grid;
  panel.flatBadge.hidden = !isFlat(component);
  panel.colorbarMin.textContent = component.raw_min.toPrecision(4);
  panel.colorbarMax.textContent = component.raw_max.toPrecision(4);
  panel.xLabel.textContent = response.axis_labels[0];
  panel.yLabel.textContent = response.axis_labels[1];

  const ctx = get2d(panel.canvas);
  if (!ctx) {
    return; // non-browser environment: data plumbing is still testable
  }
  const cell = document.createElement("canvas");
  cell.width = nx;
  cell.height = ny;
  const cellCtx = get2d(cell);
  if (!cellCtx) {
    return;
  }
  const image = cellCtx.createImageData(nx, ny);
  image.data.set(buildPixels(component.values, nx, ny));
  cellCtx.putImageData(image, 0, 0);
  ctx.imageSmoothingEnabled = false;
  ctx.clearRect(0, 0, panel.canvas.width, panel.canvas.height);
  ctx.drawImage(cell, 0, 0, panel.canvas.width, panel.canvas.height);

  if (overlayScatter) {
    drawScatterMarks(ctx, panel.canvas, response, 2.0);
  }
}

/** Shared mark drawing for both panels; grid bounds map to the canvas. */
export function drawScatterMarks(
  ctx: CanvasRenderingContext2D,
  canvas: HTMLCanvasElement,
  response: HeatmapResponse,
  radius: number,
): void {
  const g = response.grid;
  const xmin = g.x0 - g.dx / 2;
  const xmax = g.x0 + (g.nx - 0.5) * g.dx;
  const ymin = g.y0 - g.dy / 2;
  const ymax = g.y0 + (g.ny - 0.5) * g.dy;
  for (const [x, y, cls] of response.scatter) {
    const px = ((x - xmin) / (xmax - xmin)) * canvas.width;
    const py = (1 - (y - ymin) / (ymax - ymin)) * canvas.height;
    ctx.fillStyle = classColor(cls);
    ctx.beginPath();
    ctx.arc(px, py, radius, 0, 2 * Math.PI);
    ctx.fill();
    ctx.strokeStyle = "rgba(255,255,255,0.8)";
    ctx.lineWidth = 0.5;
    ctx.stroke();
  }
}

export function cssForNormalized(value: number): string {
  return toCss(blueRed(value));
}
