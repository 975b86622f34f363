import { DensityResult } from './api';
import { ApiState, BootstrapPayload, ControlAck, CumulativePayload, SamplesPayload } from './types';

export interface DimensionCurves {
  density: DensityResult | null; // averaged sensitivity density for the dim
  cumulative: CumulativePayload | null; // cumulative local total effect
  band: BootstrapPayload | null; // replicate curves, fetched only when the toggle is on
}

export interface AckEntry {
  label: string;
  position: number;
  version: number;
}

// Mirror of the /api/state summary plus the curve and scatter payloads
// fetched for it. The rendered version never decreases; data is flagged
// stale while the summary lags a control acknowledgment.
export interface UiCampaignView {
  state: ApiState | null;
  renderedVersion: number;
  ackVersion: number;
  stale: boolean;
  offline: boolean;
  curves: Map<number, DimensionCurves>;
  curveVersion: number;
  scatter: SamplesPayload | null;
  scatterDims: [number, number];
  output: number; // output index used for cumulative curves and bands
  acks: AckEntry[];
  showBand: boolean;
  smoothing: boolean;
  lastControlError: string | null;
}

export function newView(): UiCampaignView {
  return {
    state: null,
    renderedVersion: -1,
    ackVersion: -1,
    stale: false,
    offline: false,
    curves: new Map(),
    curveVersion: -1,
    scatter: null,
    scatterDims: [1, 2],
    output: 1,
    acks: [],
    showBand: false,
    smoothing: false,
    lastControlError: null,
  };
}

// Accept a freshly polled summary. Versions older than what is already
// rendered are dropped so the display is monotone in version.
export function acceptState(view: UiCampaignView, state: ApiState): boolean {
  if (state.version < view.renderedVersion) return false;
  view.state = state;
  view.renderedVersion = state.version;
  // acks carry the version at enqueue time; the command has visibly
  // applied once the summary moves strictly past it
  view.stale = state.version <= view.ackVersion;
  view.offline = false;
  return true;
}

export function recordAck(view: UiCampaignView, label: string, ack: ControlAck): void {
  view.acks.push({ label, position: ack.position, version: ack.version });
  if (view.acks.length > 8) view.acks.shift();
  if (ack.version > view.ackVersion) view.ackVersion = ack.version;
  view.stale = view.renderedVersion <= view.ackVersion;
}

// Curve fetches resolve out of order; whichever carries the highest
// version wins, ties go to the later arrival.
export function acceptCurves(
  view: UiCampaignView,
  version: number,
  curves: Map<number, DimensionCurves>,
  scatter: SamplesPayload | null,
): boolean {
  if (version < view.curveVersion) return false;
  view.curves = curves;
  view.curveVersion = version;
  view.scatter = scatter;
  return true;
}

export function markOffline(view: UiCampaignView): void {
  view.offline = true;
}
