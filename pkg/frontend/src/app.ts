import { ApiClient } from './api';
import {
  AlphaSlider,
  ControlContext,
  OverrideEditor,
  PauseResumeControl,
  RunControl,
  SelectionControl,
  ViewToggle,
} from './controls';
import { StatePoller } from './poll';
import { ackListHtml, bannerHtml, curvesSectionHtml, heatmapHtml, scatterSvg, statusHtml } from './render';
import { newView } from './view';

function element<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

function fillDimensionSelects(m: number, n: number): void {
  const options = (count: number, prefix: string) =>
    Array.from({ length: count }, (_, k) => `<option value="${k + 1}">${prefix}${k + 1}</option>`).join('');
  element<HTMLSelectElement>('output-select').innerHTML = options(n, 'y');
  element<HTMLSelectElement>('scatter-x').innerHTML = options(m, 'x');
  const scatterY = element<HTMLSelectElement>('scatter-y');
  scatterY.innerHTML = options(m, 'x');
  scatterY.value = String(Math.min(2, m));
}

function main(): void {
  const client = new ApiClient('');
  const view = newView();

  const status = element<HTMLElement>('status');
  const banner = element<HTMLElement>('banner');
  const heatmap = element<HTMLElement>('heatmap');
  const curves = element<HTMLElement>('curves');
  const scatter = element<HTMLElement>('scatter');
  const acks = element<HTMLUListElement>('acks');

  let selectsFilled = false;

  // the single place the document is updated
  const render = (): void => {
    if (view.offline) {
      banner.innerHTML = bannerHtml('API unreachable; polling paused until retry');
      banner.classList.add('visible');
    } else {
      banner.classList.remove('visible');
    }
    if (!selectsFilled && view.state !== null) {
      fillDimensionSelects(view.state.m, view.state.n);
      selectsFilled = true;
    }
    status.innerHTML = statusHtml(view);
    heatmap.innerHTML = heatmapHtml(view.state);
    curves.innerHTML = curvesSectionHtml(view);
    scatter.innerHTML = scatterSvg(view.scatter);
    acks.innerHTML = ackListHtml(view.acks);
  };

  const poller = new StatePoller(client, view, render);
  const ctx: ControlContext = { client, view, render };

  new AlphaSlider(
    ctx,
    element<HTMLInputElement>('alpha-slider'),
    element<HTMLElement>('alpha-readout'),
    element<HTMLElement>('alpha-error'),
  );
  new RunControl(
    ctx,
    element<HTMLInputElement>('run-batches'),
    element<HTMLButtonElement>('run-button'),
    element<HTMLElement>('run-error'),
  );
  new PauseResumeControl(
    ctx,
    element<HTMLButtonElement>('pause-button'),
    element<HTMLButtonElement>('resume-button'),
    element<HTMLElement>('run-error'),
  );
  new OverrideEditor(
    ctx,
    element<HTMLInputElement>('override-dim'),
    element<HTMLInputElement>('override-breakpoints'),
    element<HTMLInputElement>('override-values'),
    element<HTMLButtonElement>('override-apply'),
    element<HTMLButtonElement>('override-clear'),
    element<HTMLElement>('override-error'),
  );
  new ViewToggle(element<HTMLInputElement>('band-toggle'), (checked) => {
    view.showBand = checked;
    poller.refetch();
    render();
  });
  new ViewToggle(element<HTMLInputElement>('smoothing-toggle'), (checked) => {
    view.smoothing = checked;
    render();
  });
  new SelectionControl(element<HTMLSelectElement>('output-select'), (value) => {
    view.output = parseInt(value, 10);
    poller.refetch();
  });
  const scatterChanged = (): void => {
    view.scatterDims = [
      parseInt(element<HTMLSelectElement>('scatter-x').value, 10),
      parseInt(element<HTMLSelectElement>('scatter-y').value, 10),
    ];
    poller.refetch();
  };
  new SelectionControl(element<HTMLSelectElement>('scatter-x'), scatterChanged);
  new SelectionControl(element<HTMLSelectElement>('scatter-y'), scatterChanged);

  banner.addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    if (target.dataset.role === 'retry') void poller.tick();
  });

  render();
  poller.start();
}

document.addEventListener('DOMContentLoaded', main);
