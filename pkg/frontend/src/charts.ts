// Pure chart geometry. Bar heights stay in count units and pie angles in
// fractions of a turn; scaling to pixels happens only through SVG viewBox,
// so tests can compare geometry directly against API responses.

export interface HistogramBar {
  x: number;
  width: number;
  height: number; // equals the bin count
  count: number;
  lowEdge: number;
  highEdge: number;
}

export interface HistogramGeometry {
  bars: HistogramBar[];
  viewBox: string; // "0 0 <bins> <maxCount>"
}

export function histogramGeometry(edges: number[], counts: number[]): HistogramGeometry {
  const bars = counts.map((count, i) => ({
    x: i,
    width: 1,
    height: count,
    count,
    lowEdge: edges[i],
    highEdge: edges[i + 1],
  }));
  const maxCount = counts.reduce((a, b) => Math.max(a, b), 0);
  return { bars, viewBox: `0 0 ${counts.length} ${Math.max(maxCount, 1)}` };
}

/** y-flipped SVG rect attributes for a bar inside the geometry's viewBox. */
export function barRect(
  bar: HistogramBar,
  maxCount: number,
): { x: number; y: number; width: number; height: number } {
  return { x: bar.x, y: maxCount - bar.height, width: bar.width, height: bar.height };
}

export interface PieSlice {
  category: string;
  fraction: number;
  startAngle: number; // radians, 0 at 12 o'clock, clockwise
  endAngle: number;
  path: string; // SVG path in a [-1, 1] square centered at the origin
  full: boolean;
}

function point(angle: number): [number, number] {
  // 12 o'clock start, clockwise
  return [Math.sin(angle), -Math.cos(angle)];
}

export function pieSlices(proportions: Record<string, number>): PieSlice[] {
  const entries = Object.entries(proportions).sort(([a], [b]) => a.localeCompare(b));
  const slices: PieSlice[] = [];
  let angle = 0;
  for (const [category, fraction] of entries) {
    const start = angle;
    const end = angle + fraction * 2 * Math.PI;
    angle = end;
    const full = fraction >= 1 - 1e-9;
    let path: string;
    if (full) {
      // a single arc with coincident endpoints collapses; draw two halves
      path = "M 0 -1 A 1 1 0 1 1 0 1 A 1 1 0 1 1 0 -1 Z";
    } else {
      const [x0, y0] = point(start);
      const [x1, y1] = point(end);
      const large = end - start > Math.PI ? 1 : 0;
      path = `M 0 0 L ${x0} ${y0} A 1 1 0 ${large} 1 ${x1} ${y1} Z`;
    }
    slices.push({ category, fraction, startAngle: start, endAngle: end, path, full });
  }
  return slices;
}

export const SLICE_COLORS = [
  "#4e79a7",
  "#f28e2b",
  "#59a14f",
  "#e15759",
  "#b07aa1",
  "#76b7b2",
  "#edc948",
  "#9c755f",
];

export function sliceColor(index: number): string {
  return SLICE_COLORS[index % SLICE_COLORS.length];
}

export interface GaugeGeometry {
  value: number; // |slope|
  threshold: number;
  valueFraction: number; // clamped to [0, 1] against a 2x-threshold scale
  thresholdFraction: number;
  stable: boolean;
}

/** Linear gauge for a stability slope, with the threshold marked mid-scale. */
export function slopeGauge(slope: number, threshold: number, stable: boolean): GaugeGeometry {
  const magnitude = Math.abs(slope);
  const scale = threshold * 2;
  return {
    value: magnitude,
    threshold,
    valueFraction: Math.min(magnitude / scale, 1),
    thresholdFraction: 0.5,
    stable,
  };
}
