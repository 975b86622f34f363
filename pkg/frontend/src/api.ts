import {
  ApiState,
  BootstrapPayload,
  ControlAck,
  CumulativePayload,
  DensityPayload,
  FieldIssue,
  SamplesPayload,
} from './types';

// Density responses keep the raw body text next to the parsed payload:
// the dashboard plots exactly what the server sent, and tests compare
// the bytes, not a re-serialization.
export interface DensityResult {
  payload: DensityPayload;
  raw: string;
}

export class ApiRequestError extends Error {
  status: number;
  detail: string | FieldIssue[];

  constructor(status: number, detail: string | FieldIssue[]) {
    super(formatDetail(detail));
    this.name = 'ApiRequestError';
    this.status = status;
    this.detail = detail;
  }

  // msg per offending body field, keyed by the field name
  fieldErrors(): Map<string, string> {
    const out = new Map<string, string>();
    if (Array.isArray(this.detail)) {
      for (const issue of this.detail) {
        const field = String(issue.loc[issue.loc.length - 1] ?? '');
        out.set(field, issue.msg);
      }
    }
    return out;
  }
}

function formatDetail(detail: string | FieldIssue[]): string {
  if (typeof detail === 'string') return detail;
  return detail.map((d) => `${d.loc.join('.')}: ${d.msg}`).join('; ');
}

type FetchLike = typeof fetch;

// What the poller and controls need from the backend; tests substitute
// canned implementations.
export interface CampaignApi {
  state(): Promise<ApiState>;
  density(dim: number, output?: number): Promise<DensityResult>;
  cumulative(dim: number, output?: number): Promise<CumulativePayload>;
  samples(dimX: number, dimY: number, limit?: number): Promise<SamplesPayload>;
  bootstrap(dim: number, output: number, replicates?: number, seed?: number): Promise<BootstrapPayload>;
  setAlpha(value: number): Promise<ControlAck>;
  run(batches: number): Promise<ControlAck>;
  pause(): Promise<ControlAck>;
  resume(): Promise<ControlAck>;
  setOverride(dim: number, breakpoints: number[], values: number[]): Promise<ControlAck>;
  clearOverride(dim: number): Promise<ControlAck>;
}

export class ApiClient implements CampaignApi {
  base: string;
  private fetchFn: FetchLike;

  constructor(base = '', fetchFn: FetchLike = fetch) {
    this.base = base.replace(/\/$/, '');
    this.fetchFn = fetchFn;
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let detail: string | FieldIssue[] = `HTTP ${response.status}`;
      try {
        const body = await response.json();
        if (body && body.detail !== undefined) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiRequestError(response.status, detail);
    }
    return response;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.request(path);
    return (await response.json()) as T;
  }

  private async post(path: string, body?: unknown): Promise<ControlAck> {
    const init: RequestInit = { method: 'POST' };
    if (body !== undefined) {
      init.headers = { 'Content-Type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    const response = await this.request(path, init);
    return (await response.json()) as ControlAck;
  }

  state(): Promise<ApiState> {
    return this.getJson<ApiState>('/api/state');
  }

  async density(dim: number, output?: number): Promise<DensityResult> {
    const suffix = output === undefined ? '' : `?output=${output}`;
    const response = await this.request(`/api/density/${dim}${suffix}`);
    const raw = await response.text();
    return { payload: JSON.parse(raw) as DensityPayload, raw };
  }

  cumulative(dim: number, output?: number): Promise<CumulativePayload> {
    const suffix = output === undefined ? '' : `?output=${output}`;
    return this.getJson<CumulativePayload>(`/api/cumulative/${dim}${suffix}`);
  }

  samples(dimX: number, dimY: number, limit = 1000): Promise<SamplesPayload> {
    return this.getJson<SamplesPayload>(`/api/samples?dims=${dimX},${dimY}&limit=${limit}`);
  }

  bootstrap(dim: number, output: number, replicates = 25, seed = 0): Promise<BootstrapPayload> {
    return this.getJson<BootstrapPayload>(
      `/api/bootstrap/${dim}?output=${output}&replicates=${replicates}&seed=${seed}`,
    );
  }

  setAlpha(value: number): Promise<ControlAck> {
    return this.post('/api/control/alpha', { value });
  }

  run(batches: number): Promise<ControlAck> {
    return this.post('/api/control/run', { batches });
  }

  pause(): Promise<ControlAck> {
    return this.post('/api/control/pause');
  }

  resume(): Promise<ControlAck> {
    return this.post('/api/control/resume');
  }

  setOverride(dim: number, breakpoints: number[], values: number[]): Promise<ControlAck> {
    return this.post('/api/control/override', { dim, breakpoints, values });
  }

  async clearOverride(dim: number): Promise<ControlAck> {
    const response = await this.request(`/api/control/override/${dim}`, { method: 'DELETE' });
    return (await response.json()) as ControlAck;
  }
}
