// Wire shapes of the campaign HTTP API. Field names match the JSON
// payloads exactly; nulls appear where the server reports undefined
// ratios (zero output variance) or has no data yet.

export interface IndexSummary {
  S: (number | null)[][]; // [input][output]
  T: (number | null)[][];
  V: number[];
  N: number;
  biased: boolean;
}

export interface ApiState {
  version: number;
  status: string;
  batches_completed: number;
  total_evaluations: number;
  ingested_blocks: number;
  alpha: number;
  alpha_history: number[];
  m: number;
  n: number;
  batch_size: number;
  epsilon: number;
  exploration: number;
  max_batches: number | null;
  overridden_dims: number[];
  pending_commands: number;
  remaining_batches: number;
  last_error: string | null;
  indices: IndexSummary | null;
}

export interface DensityPayload {
  dimension: number;
  alpha: number;
  epsilon: number;
  output: number | null;
  breakpoints: number[];
  values: number[];
}

export interface CumulativePayload {
  breakpoints: number[];
  cumulative: number[];
  defined: boolean;
}

export interface SamplesPayload {
  dims: number[];
  points: number[][];
}

export interface BootstrapReplicate {
  breakpoints: number[];
  cumulative: number[];
}

export interface BootstrapPayload {
  dimension: number;
  output: number;
  replicates: BootstrapReplicate[];
}

// Control posts are acknowledged immediately with the queue position;
// they take effect at the next batch boundary.
export interface ControlAck {
  queued: boolean;
  position: number;
  version: number;
}

export interface FieldIssue {
  loc: (string | number)[];
  msg: string;
}
