import { DensityResult } from './api';
import {
  formatCompact,
  formatIndex,
  heatColor,
  linePath,
  movingAverage,
  PlotBox,
  stepPath,
  xScale,
  yScale,
} from './curves';
import { ApiState, BootstrapPayload, CumulativePayload, SamplesPayload } from './types';
import { AckEntry, UiCampaignView } from './view';

const CURVE_BOX: PlotBox = { width: 360, height: 150, padding: 12 };
const SCATTER_BOX: PlotBox = { width: 300, height: 300, padding: 14 };

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function statusHtml(view: UiCampaignView): string {
  const s = view.state;
  if (s === null) return '<span class="muted">waiting for first poll</span>';
  const stale = view.stale ? ' <span class="badge stale">stale</span>' : '';
  const biased = s.indices?.biased
    ? ' <span class="badge biased" title="estimates accumulated under adaptive sampling">adaptive</span>'
    : '';
  const err = s.last_error ? ` <span class="badge error">${escapeHtml(s.last_error)}</span>` : '';
  return (
    `<b>${escapeHtml(s.status)}</b> v${s.version}` +
    ` | batches ${s.batches_completed} (${s.remaining_batches} queued)` +
    ` | evals ${s.total_evaluations}` +
    ` | alpha ${formatCompact(s.alpha)}` +
    ` | pending cmds ${s.pending_commands}` +
    stale +
    biased +
    err
  );
}

export function ackListHtml(acks: AckEntry[]): string {
  if (acks.length === 0) return '<li class="muted">no commands sent yet</li>';
  return acks
    .map((a) => `<li>${escapeHtml(a.label)} <span class="muted">queued #${a.position} at v${a.version}</span></li>`)
    .join('');
}

export function bannerHtml(message: string): string {
  return `<span>${escapeHtml(message)}</span> <button type="button" data-role="retry">retry</button>`;
}

function heatGrid(label: string, rows: (number | null)[][], n: number): string {
  const header = Array.from({ length: n }, (_, j) => `<th>y${j + 1}</th>`).join('');
  const body = rows
    .map((row, i) => {
      const cells = row
        .map((v) => `<td style="background:${heatColor(v)}">${formatIndex(v)}</td>`)
        .join('');
      return `<tr><th>x${i + 1}</th>${cells}</tr>`;
    })
    .join('');
  return `<table class="heatmap"><caption>${label}</caption><thead><tr><th></th>${header}</tr></thead><tbody>${body}</tbody></table>`;
}

export function heatmapHtml(state: ApiState | null): string {
  if (state === null || state.indices === null) {
    return '<p class="muted">no data</p>';
  }
  const idx = state.indices;
  const variance = idx.V.map((v, j) => `<span>V[y${j + 1}] = ${formatCompact(v)}</span>`).join(' ');
  return (
    heatGrid('first-order S', idx.S, state.n) +
    heatGrid('total T', idx.T, state.n) +
    `<p class="muted">N = ${idx.N} blocks; ${variance}</p>`
  );
}

function bandOverlay(band: BootstrapPayload | null, yMax: number): string {
  if (band === null) return '';
  return band.replicates
    .map((r) => `<path class="band" d="${linePath(r.breakpoints, r.cumulative, yMax, CURVE_BOX)}"/>`)
    .join('');
}

export function densitySvg(result: DensityResult | null, smoothing: boolean): string {
  if (result === null) return '<p class="muted">no data</p>';
  const { breakpoints, values } = result.payload;
  const raw = stepPath(breakpoints, values, CURVE_BOX);
  // smoothing is additive and labeled; the exact data stays on screen
  const smoothed = smoothing
    ? `<path class="smoothed" d="${stepPath(breakpoints, movingAverage(values, 5), CURVE_BOX)}"/>` +
      `<text x="${CURVE_BOX.width - CURVE_BOX.padding}" y="${CURVE_BOX.padding + 4}" text-anchor="end" class="smooth-label">smoothed (moving average, window 5)</text>`
    : '';
  return (
    `<svg viewBox="0 0 ${CURVE_BOX.width} ${CURVE_BOX.height}" role="img">` +
    `<path class="curve" d="${raw}"/>${smoothed}</svg>`
  );
}

export function cumulativeSvg(
  curve: CumulativePayload | null,
  band: BootstrapPayload | null,
): string {
  if (curve === null) return '<p class="muted">no data</p>';
  if (!curve.defined) return '<p class="muted">undefined (zero output variance)</p>';
  const terminal = curve.cumulative[curve.cumulative.length - 1] ?? 0;
  const bandMax = band
    ? Math.max(0, ...band.replicates.map((r) => r.cumulative[r.cumulative.length - 1] ?? 0))
    : 0;
  const yMax = Math.max(terminal, bandMax) || 1;
  return (
    `<svg viewBox="0 0 ${CURVE_BOX.width} ${CURVE_BOX.height}" role="img">` +
    bandOverlay(band, yMax) +
    `<path class="curve" d="${linePath(curve.breakpoints, curve.cumulative, yMax, CURVE_BOX)}"/>` +
    `<text x="${CURVE_BOX.width - CURVE_BOX.padding}" y="${CURVE_BOX.padding + 4}" text-anchor="end" class="muted">terminal ${formatCompact(terminal)}</text>` +
    `</svg>`
  );
}

export function scatterSvg(samples: SamplesPayload | null): string {
  if (samples === null || samples.points.length === 0) return '<p class="muted">no data</p>';
  const sx = xScale([0, 1], SCATTER_BOX);
  const sy = yScale(1, SCATTER_BOX);
  const dots = samples.points
    .map(([x, y]) => `<circle cx="${sx(x)}" cy="${sy(y)}" r="1.6"/>`)
    .join('');
  return (
    `<svg viewBox="0 0 ${SCATTER_BOX.width} ${SCATTER_BOX.height}" role="img">` +
    `<rect class="frame" x="${SCATTER_BOX.padding}" y="${SCATTER_BOX.padding}"` +
    ` width="${SCATTER_BOX.width - 2 * SCATTER_BOX.padding}" height="${SCATTER_BOX.height - 2 * SCATTER_BOX.padding}"/>` +
    `${dots}</svg>` +
    `<p class="muted">x${samples.dims[0]} vs x${samples.dims[1]}, ${samples.points.length} points</p>`
  );
}

export function curvesSectionHtml(view: UiCampaignView): string {
  const m = view.state?.m ?? 0;
  if (m === 0 || view.curves.size === 0) return '<p class="muted">no data</p>';
  const blocks: string[] = [];
  for (let dim = 1; dim <= m; dim++) {
    const set = view.curves.get(dim);
    if (!set) continue;
    blocks.push(
      `<div class="dim-row"><h3>x${dim}</h3>` +
        `<figure><figcaption>sampling density (output average)</figcaption>${densitySvg(set.density, view.smoothing)}</figure>` +
        `<figure><figcaption>cumulative total effect</figcaption>${cumulativeSvg(set.cumulative, view.showBand ? set.band : null)}</figure>` +
        `</div>`,
    );
  }
  return blocks.join('');
}
