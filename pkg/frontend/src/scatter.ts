/** Dataset panel: projected training points colored by class. */

import type { HeatmapResponse } from "./api";
import { classColor } from "./colormap";
import { drawScatterMarks, get2d } from "./heatmap";

export interface ScatterPanel {
  canvas: HTMLCanvasElement;
  legend: HTMLElement;
  xLabel: HTMLElement;
  yLabel: HTMLElement;
}

export function renderScatter(panel: ScatterPanel, response: HeatmapResponse): void {
  panel.xLabel.textContent = response.axis_labels[0];
  panel.yLabel.textContent = response.axis_labels[1];
  renderLegend(panel.legend, response.class_names);
  const ctx = get2d(panel.canvas);
  if (!ctx) {
    return;
  }
  ctx.clearRect(0, 0, panel.canvas.width, panel.canvas.height);
  ctx.fillStyle = "#fafafa";
  ctx.fillRect(0, 0, panel.canvas.width, panel.canvas.height);
  drawScatterMarks(ctx, panel.canvas, response, 3.0);
}

export function renderLegend(container: HTMLElement, classNames: string[]): void {
  container.replaceChildren();
  classNames.forEach((name, index) => {
    const item = document.createElement("span");
    item.className = "legend-item";
    const swatch = document.createElement("span");
    swatch.className = "legend-swatch";
    swatch.style.backgroundColor = classColor(index);
    const label = document.createElement("span");
    label.textContent = name;
    item.append(swatch, label);
    container.append(item);
  });
}
