import { ApiRequestError, CampaignApi } from './api';
import { ControlAck } from './types';
import { recordAck, UiCampaignView } from './view';

export interface ControlContext {
  client: CampaignApi;
  view: UiCampaignView;
  render: () => void;
}

// One user action, one API call. The acknowledgment (queue position and
// version) lands in the view's ack list; rejections land inline next to
// the form that caused them.
async function submit(
  ctx: ControlContext,
  label: string,
  errorEl: HTMLElement,
  call: () => Promise<ControlAck>,
): Promise<void> {
  errorEl.textContent = '';
  try {
    const ack = await call();
    recordAck(ctx.view, label, ack);
    ctx.view.lastControlError = null;
  } catch (err) {
    const message = err instanceof ApiRequestError ? err.message : String(err);
    errorEl.textContent = message;
    ctx.view.lastControlError = message;
  }
  ctx.render();
}

function parseNumberList(text: string): number[] {
  const parts = text.split(',').map((p) => p.trim()).filter((p) => p.length > 0);
  const numbers = parts.map(Number);
  if (numbers.length === 0 || numbers.some((v) => Number.isNaN(v))) {
    throw new Error(`expected comma-separated numbers, got "${text}"`);
  }
  return numbers;
}

// Exponent slider. The readout tracks the thumb while dragging; the API
// call happens once, on commit (the change event), and takes effect at
// the next batch boundary.
export class AlphaSlider {
  constructor(
    ctx: ControlContext,
    slider: HTMLInputElement,
    readout: HTMLElement,
    errorEl: HTMLElement,
  ) {
    slider.addEventListener('input', () => {
      readout.textContent = slider.value;
    });
    slider.addEventListener('change', () => {
      void submit(ctx, `alpha = ${slider.value}`, errorEl, () =>
        ctx.client.setAlpha(parseFloat(slider.value)),
      );
    });
  }
}

export class RunControl {
  constructor(
    ctx: ControlContext,
    batchesInput: HTMLInputElement,
    runButton: HTMLButtonElement,
    errorEl: HTMLElement,
  ) {
    runButton.addEventListener('click', () => {
      const batches = parseInt(batchesInput.value, 10);
      if (!Number.isFinite(batches) || batches < 1) {
        errorEl.textContent = 'batches must be a positive integer';
        ctx.render();
        return;
      }
      void submit(ctx, `run ${batches}`, errorEl, () => ctx.client.run(batches));
    });
  }
}

export class PauseResumeControl {
  constructor(
    ctx: ControlContext,
    pauseButton: HTMLButtonElement,
    resumeButton: HTMLButtonElement,
    errorEl: HTMLElement,
  ) {
    pauseButton.addEventListener('click', () => {
      void submit(ctx, 'pause', errorEl, () => ctx.client.pause());
    });
    resumeButton.addEventListener('click', () => {
      void submit(ctx, 'resume', errorEl, () => ctx.client.resume());
    });
  }
}

// Piecewise-constant density override on a user-chosen breakpoint grid:
// k+1 breakpoints, k nonnegative cell weights. Malformed text never
// reaches the network; server rejections come back inline.
export class OverrideEditor {
  constructor(
    ctx: ControlContext,
    dimInput: HTMLInputElement,
    breakpointsInput: HTMLInputElement,
    valuesInput: HTMLInputElement,
    applyButton: HTMLButtonElement,
    clearButton: HTMLButtonElement,
    errorEl: HTMLElement,
  ) {
    applyButton.addEventListener('click', () => {
      const dim = parseInt(dimInput.value, 10);
      let breakpoints: number[];
      let values: number[];
      try {
        breakpoints = parseNumberList(breakpointsInput.value);
        values = parseNumberList(valuesInput.value);
      } catch (err) {
        errorEl.textContent = String(err instanceof Error ? err.message : err);
        ctx.render();
        return;
      }
      void submit(ctx, `override x${dim}`, errorEl, () =>
        ctx.client.setOverride(dim, breakpoints, values),
      );
    });
    clearButton.addEventListener('click', () => {
      const dim = parseInt(dimInput.value, 10);
      void submit(ctx, `clear override x${dim}`, errorEl, () => ctx.client.clearOverride(dim));
    });
  }
}

// Display-only toggles: no API traffic, just a re-render (the band
// toggle additionally needs a curve refetch, wired by the caller).
export class ViewToggle {
  constructor(
    checkbox: HTMLInputElement,
    apply: (checked: boolean) => void,
  ) {
    checkbox.addEventListener('change', () => apply(checkbox.checked));
  }
}

export class SelectionControl {
  constructor(
    select: HTMLSelectElement,
    apply: (value: string) => void,
  ) {
    select.addEventListener('change', () => apply(select.value));
  }
}
