import { vi } from 'vitest';
import { CampaignApi, DensityResult } from '../src/api';
import {
  ApiState,
  BootstrapPayload,
  ControlAck,
  CumulativePayload,
  SamplesPayload,
} from '../src/types';

export function makeState(version: number, extra: Partial<ApiState> = {}): ApiState {
  return {
    version,
    status: 'idle',
    batches_completed: 2,
    total_evaluations: 100,
    ingested_blocks: 0,
    alpha: 2.0,
    alpha_history: [2.0, 2.0],
    m: 2,
    n: 1,
    batch_size: 10,
    epsilon: 1e-4,
    exploration: 0.1,
    max_batches: null,
    overridden_dims: [],
    pending_commands: 0,
    remaining_batches: 0,
    last_error: null,
    indices: {
      S: [[0.5], [0.3]],
      T: [[0.6], [0.4]],
      V: [1.25],
      N: 20,
      biased: true,
    },
    ...extra,
  };
}

export function makeDensity(dim: number, tag = 0): DensityResult {
  const payload = {
    dimension: dim,
    alpha: 2.0,
    epsilon: 1e-4,
    output: null,
    breakpoints: [0, 0.5, 1],
    values: [1.5 + tag, 0.5 - tag],
  };
  return { payload, raw: JSON.stringify(payload) };
}

export function makeCumulative(): CumulativePayload {
  return { breakpoints: [0, 0.5, 1], cumulative: [0, 0.25, 0.75], defined: true };
}

export function makeSamples(): SamplesPayload {
  return { dims: [1, 2], points: [[0.1, 0.9], [0.4, 0.2]] };
}

export function makeBootstrap(dim: number, output: number): BootstrapPayload {
  return {
    dimension: dim,
    output,
    replicates: [{ breakpoints: [0, 1], cumulative: [0, 0.5] }],
  };
}

export const ACK: ControlAck = { queued: true, position: 1, version: 3 };

// Canned backend whose every method is a spy; individual tests override
// return values or swap in deferred promises.
export class FakeApi implements CampaignApi {
  state = vi.fn(async (): Promise<ApiState> => makeState(1));
  density = vi.fn(async (dim: number): Promise<DensityResult> => makeDensity(dim));
  cumulative = vi.fn(async (): Promise<CumulativePayload> => makeCumulative());
  samples = vi.fn(async (): Promise<SamplesPayload> => makeSamples());
  bootstrap = vi.fn(async (dim: number, output: number): Promise<BootstrapPayload> =>
    makeBootstrap(dim, output),
  );
  setAlpha = vi.fn(async (): Promise<ControlAck> => ({ ...ACK }));
  run = vi.fn(async (): Promise<ControlAck> => ({ ...ACK }));
  pause = vi.fn(async (): Promise<ControlAck> => ({ ...ACK }));
  resume = vi.fn(async (): Promise<ControlAck> => ({ ...ACK }));
  setOverride = vi.fn(async (): Promise<ControlAck> => ({ ...ACK }));
  clearOverride = vi.fn(async (): Promise<ControlAck> => ({ ...ACK }));
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
