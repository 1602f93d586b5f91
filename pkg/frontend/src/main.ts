/**
 * App entry: open a human-oracle session on the gateway and run the
 * annotate loop. Base URL comes from ?gateway=... or defaults to the
 * usual `alpool serve` address.
 */

import { GatewayClient } from './api';
import { renderBanner, renderButtons, renderCurve, renderQuery } from './render';
import {
  canLabel,
  fetchAndRenderQuery,
  initialState,
  submitLabelAction,
  ViewState,
} from './state';

const params = new URLSearchParams(window.location.search);
const client = new GatewayClient(params.get('gateway') ?? 'http://localhost:8000');

const el = (id: string): HTMLElement => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
};

let state: ViewState | null = null;

function draw(): void {
  if (!state) return;
  renderBanner(el('banner'), state.banner);
  renderCurve(el('curve'), state.curve);
  if (state.currentQuery) {
    renderQuery(el('query'), state.currentQuery);
  } else {
    el('query').replaceChildren();
  }
  renderButtons(el('buttons'), state.complete ? [] : state.classNames, canLabel(state), (label) => {
    void act((s) => submitLabelAction(client, s, label));
  });
}

async function act(step: (s: ViewState) => Promise<ViewState>): Promise<void> {
  if (!state) return;
  state = await step(state);
  draw();
}

async function start(): Promise<void> {
  const kind = (el('dataset-kind') as HTMLSelectElement).value;
  const budget = Number((el('budget') as HTMLInputElement).value) || 15;
  try {
    const info = await client.createSession({
      mode: 'human_oracle',
      dataset: { kind, n_pool: 300, n_test: 150 },
      strategy: 'least_confidence',
      init_labels: 3,
      label_budget: budget - 3,
      eval_every: 3,
      seed: Date.now() % 100000,
    });
    state = initialState(info.session_id, info.class_names);
    el('setup').hidden = true;
    await act((s) => fetchAndRenderQuery(client, s));
  } catch (error) {
    renderBanner(el('banner'), error instanceof Error ? error.message : String(error));
  }
}

el('start').addEventListener('click', () => {
  void start();
});
