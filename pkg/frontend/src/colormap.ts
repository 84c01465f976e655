/** Blue-to-red gradient over normalized uncertainty values. */

export interface Rgb {
  r: number;
  g: number;
  b: number;
}

export const BLUE: Rgb = { r: 0, g: 0, b: 255 }; // normalized 0: certain
export const RED: Rgb = { r: 255, g: 0, b: 0 };  // normalized 1: uncertain

/** Linear interpolation between the blue and red endpoints.
 * t is clamped to [0, 1]; the endpoints are exact. */
export function blueRed(t: number): Rgb {
  const u = t <= 0 ? 0 : t >= 1 ? 1 : t;
  return {
    r: Math.round(BLUE.r + (RED.r - BLUE.r) * u),
    g: Math.round(BLUE.g + (RED.g - BLUE.g) * u),
    b: Math.round(BLUE.b + (RED.b - BLUE.b) * u),
  };
}

export function toCss(c: Rgb): string {
  return `rgb(${c.r}, ${c.g}, ${c.b})`;
}

/** Categorical colors for class scatter marks. */
export const CLASS_COLORS = [
  "#2e7d32", "#f9a825", "#6a1b9a", "#00838f", "#c62828",
  "#283593", "#8d6e63", "#37474f", "#ad1457", "#558b2f",
];

export function classColor(index: number): string {
  return CLASS_COLORS[index % CLASS_COLORS.length];
}
