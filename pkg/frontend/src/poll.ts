import { CampaignApi } from './api';
import { ApiState } from './types';
import { acceptCurves, acceptState, DimensionCurves, markOffline, UiCampaignView } from './view';

// Fixed-interval /api/state poll. Curves are refetched only when the
// version counter moves; fetches resolve asynchronously and the newest
// version wins, so a slow response for an old version never overwrites
// fresher data.
export class StatePoller {
  private client: CampaignApi;
  private view: UiCampaignView;
  private render: () => void;
  private intervalMs: number;
  private timer: ReturnType<typeof setInterval> | null = null;
  private requestedVersion = -1;

  constructor(client: CampaignApi, view: UiCampaignView, render: () => void, intervalMs = 1000) {
    this.client = client;
    this.view = view;
    this.render = render;
    this.intervalMs = intervalMs;
  }

  start(): void {
    if (this.timer !== null) return;
    void this.tick();
    this.timer = setInterval(() => void this.tick(), this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  async tick(): Promise<void> {
    let state: ApiState;
    try {
      state = await this.client.state();
    } catch {
      markOffline(this.view);
      this.render();
      return;
    }
    acceptState(this.view, state);
    if (state.batches_completed + state.ingested_blocks > 0 && state.version !== this.requestedVersion) {
      this.requestedVersion = state.version;
      void this.fetchCurves(state);
    }
    this.render();
  }

  // Force a refetch at the current version (output or scatter selection
  // changed without a campaign mutation).
  refetch(): void {
    const state = this.view.state;
    if (state !== null && state.batches_completed + state.ingested_blocks > 0) {
      this.requestedVersion = state.version;
      void this.fetchCurves(state);
    }
  }

  private async fetchCurves(state: ApiState): Promise<void> {
    const version = state.version;
    const output = this.view.output;
    const [dimX, dimY] = this.view.scatterDims;
    try {
      const perDim = await Promise.all(
        Array.from({ length: state.m }, async (_, k): Promise<[number, DimensionCurves]> => {
          const dim = k + 1;
          const [density, cumulative, band] = await Promise.all([
            this.client.density(dim),
            this.client.cumulative(dim, output),
            this.view.showBand ? this.client.bootstrap(dim, output) : Promise.resolve(null),
          ]);
          return [dim, { density, cumulative, band }];
        }),
      );
      const scatter = await this.client.samples(dimX, dimY);
      if (acceptCurves(this.view, version, new Map(perDim), scatter)) this.render();
    } catch {
      // retry on the next poll; state polling decides offline display
      if (this.requestedVersion === version) this.requestedVersion = -1;
    }
  }
}
