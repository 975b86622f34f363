import { describe, expect, it } from 'vitest';
import {
  formatCompact,
  formatIndex,
  heatColor,
  linePath,
  movingAverage,
  stepPath,
  xScale,
} from '../src/curves';

// unit box with no padding: the affine map is the identity, so the
// exact breakpoint numbers must appear verbatim in the path
const UNIT = { width: 1, height: 1, padding: 0 };

describe('stepPath plots the exact breakpoint data', () => {
  it('identity box reproduces breakpoints verbatim', () => {
    // yMax = 2, so sy(2) = 0 and sy(0.5) = 0.75
    const path = stepPath([0, 0.25, 1], [2, 0.5], UNIT);
    expect(path).toBe('M 0 0 L 0.25 0 L 0.25 0.75 L 1 0.75');
  });

  it('every breakpoint appears at its scaled position', () => {
    const breakpoints = [0.05, 0.3141592653589793, 0.62, 0.97];
    const values = [0.4, 2.2, 1.1];
    const box = { width: 360, height: 150, padding: 12 };
    const path = stepPath(breakpoints, values, box);
    const sx = xScale(breakpoints, box);
    for (const b of breakpoints) {
      expect(path).toContain(`${sx(b)} `);
    }
  });

  it('rejects mismatched array lengths', () => {
    expect(stepPath([0, 1], [1, 2], UNIT)).toBe('');
  });
});

describe('linePath plots the exact cumulative points', () => {
  it('identity box reproduces coordinates verbatim', () => {
    const path = linePath([0, 0.5, 1], [0, 0.25, 0.75], 1, UNIT);
    expect(path).toBe('M 0 1 L 0.5 0.75 L 1 0.25');
  });

  it('rejects mismatched array lengths', () => {
    expect(linePath([0, 1], [0], 1, UNIT)).toBe('');
  });
});

describe('movingAverage', () => {
  it('window 1 is the identity', () => {
    expect(movingAverage([3, 1, 4], 1)).toEqual([3, 1, 4]);
  });

  it('window 3 averages with truncated edges', () => {
    expect(movingAverage([0, 3, 6], 3)).toEqual([1.5, 3, 4.5]);
  });
});

describe('heatmap cell helpers', () => {
  it('null and NaN render as neutral', () => {
    expect(heatColor(null)).toBe('#e8e8e8');
    expect(heatColor(Number.NaN)).toBe('#e8e8e8');
    expect(formatIndex(null)).toBe('n/a');
  });

  it('clamps out-of-range values instead of extrapolating', () => {
    expect(heatColor(1.2)).toBe(heatColor(1));
    expect(heatColor(-0.1)).toBe(heatColor(0));
  });

  it('formats indices to three decimals', () => {
    expect(formatIndex(0.31415)).toBe('0.314');
  });
});

describe('formatCompact', () => {
  it('keeps moderate numbers plain and shifts extremes to exponent form', () => {
    expect(formatCompact(0)).toBe('0');
    expect(formatCompact(1.25)).toBe('1.25');
    expect(formatCompact(1000)).toBe('1000');
    expect(formatCompact(2.5e-7)).toBe('2.50e-7');
    expect(formatCompact(31415926)).toBe('3.14e+7');
  });
});
