// Pure geometry for the curve panels. Paths are built from the exact
// breakpoint arrays the API returned; the only transformation is the
// affine map onto the pixel box.

export interface PlotBox {
  width: number;
  height: number;
  padding: number;
}

export function xScale(breakpoints: number[], box: PlotBox): (x: number) => number {
  const lo = breakpoints[0];
  const hi = breakpoints[breakpoints.length - 1];
  const span = hi - lo || 1;
  const inner = box.width - 2 * box.padding;
  return (x) => box.padding + ((x - lo) / span) * inner;
}

export function yScale(yMax: number, box: PlotBox): (y: number) => number {
  const top = yMax || 1;
  const inner = box.height - 2 * box.padding;
  return (y) => box.height - box.padding - (y / top) * inner;
}

// Piecewise-constant density: one horizontal segment per cell, joined
// by verticals at the interior breakpoints.
export function stepPath(breakpoints: number[], values: number[], box: PlotBox): string {
  if (breakpoints.length < 2 || values.length !== breakpoints.length - 1) return '';
  const sx = xScale(breakpoints, box);
  const sy = yScale(Math.max(...values), box);
  const parts: string[] = [`M ${sx(breakpoints[0])} ${sy(values[0])}`];
  for (let k = 0; k < values.length; k++) {
    if (k > 0) parts.push(`L ${sx(breakpoints[k])} ${sy(values[k])}`);
    parts.push(`L ${sx(breakpoints[k + 1])} ${sy(values[k])}`);
  }
  return parts.join(' ');
}

// Cumulative curves are polylines through the exact (breakpoint, value)
// pairs.
export function linePath(breakpoints: number[], cumulative: number[], yMax: number, box: PlotBox): string {
  if (breakpoints.length === 0 || breakpoints.length !== cumulative.length) return '';
  const sx = xScale(breakpoints, box);
  const sy = yScale(yMax, box);
  return cumulative.map((v, k) => `${k === 0 ? 'M' : 'L'} ${sx(breakpoints[k])} ${sy(v)}`).join(' ');
}

// Centered moving average over cell values. Used only behind the
// explicitly labeled smoothing toggle; the default display is raw.
export function movingAverage(values: number[], window: number): number[] {
  if (window <= 1) return values.slice();
  const half = Math.floor(window / 2);
  return values.map((_, k) => {
    const lo = Math.max(0, k - half);
    const hi = Math.min(values.length - 1, k + half);
    let sum = 0;
    for (let i = lo; i <= hi; i++) sum += values[i];
    return sum / (hi - lo + 1);
  });
}

// Shared color ramp for the index heatmap: 0 maps to near-white, 1 to a
// saturated blue. Values outside [0,1] are clamped (Jansen totals can
// overshoot slightly at small N).
export function heatColor(value: number | null): string {
  if (value === null || Number.isNaN(value)) return '#e8e8e8';
  const t = Math.min(1, Math.max(0, value));
  const light = 96 - 58 * t;
  return `hsl(214 72% ${light.toFixed(1)}%)`;
}

export function formatIndex(value: number | null): string {
  if (value === null || Number.isNaN(value)) return 'n/a';
  return value.toFixed(3);
}

export function formatCompact(value: number): string {
  if (value !== 0 && (Math.abs(value) < 1e-3 || Math.abs(value) >= 1e4)) {
    return value.toExponential(2);
  }
  return String(parseFloat(value.toPrecision(4)));
}
