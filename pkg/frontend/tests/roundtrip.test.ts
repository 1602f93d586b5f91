/**
 * Live round-trip against a real gateway spawned as a subprocess:
 * label 10 queries end to end, including a forced duplicate submission
 * (stale_query) that the client must recover from.
 */
import { ChildProcess, spawn } from 'node:child_process';
import { mkdtempSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { GatewayClient, GatewayError } from '../src/api';
import { fetchAndRenderQuery, initialState, submitLabelAction } from '../src/state';

const PORT = 8765;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(timeoutMs = 30000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const r = await fetch(`${BASE}/sessions/nope/curve`);
      if (r.status === 404) return; // service up, session rightly unknown
    } catch {
      /* not listening yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error('gateway did not come up');
}

beforeAll(async () => {
  const dataDir = mkdtempSync(join(tmpdir(), 'alpool-ui-'));
  server = spawn(
    'python3',
    ['-m', 'alpool.cli', 'serve', '--host', '127.0.0.1', '--port', String(PORT),
     '--data-dir', dataDir],
    { stdio: 'ignore' },
  );
  await waitForServer();
}, 40000);

afterAll(() => {
  server.kill();
});

describe('annotator round-trip against a live gateway', () => {
  it('labels 10 queries, survives a duplicate submission', async () => {
    const client = new GatewayClient(BASE);
    const info = await client.createSession({
      mode: 'human_oracle',
      seed: 11,
      dataset: { kind: 'qubit', n_pool: 200, n_test: 100 },
      strategy: 'least_confidence',
      init_labels: 1,
      label_budget: 9,
      eval_every: 2,
    });
    expect(info.class_names).toHaveLength(2);
    expect(info.render_hint).toBe('bloch');

    let state = initialState(info.session_id, info.class_names);
    state = await fetchAndRenderQuery(client, state);
    expect(state.currentQuery).not.toBeNull();

    const labelOf = (features: number[]): number => ((features[2] ?? 0) >= 0 ? 0 : 1);

    // labels 1..5 through the view-state machine
    for (let i = 0; i < 5; i += 1) {
      const q = state.currentQuery;
      expect(q).not.toBeNull();
      state = await submitLabelAction(client, state, labelOf(q!.features));
      expect(state.banner).toBeNull();
    }

    // force a stale query: answer the already-consumed sample id directly
    const consumed = 0; // any id that is not the pending one
    const pendingId = state.currentQuery!.sample_id;
    let staleCode = '';
    try {
      await client.postLabel(
        info.session_id,
        pendingId === consumed ? consumed + 1 : consumed,
        0,
      );
    } catch (error) {
      staleCode = error instanceof GatewayError ? error.errorCode : 'wrong';
    }
    expect(staleCode).toBe('stale_query');

    // the state machine recovers: same pending sample, labeling continues
    state = await fetchAndRenderQuery(client, state);
    expect(state.currentQuery?.sample_id).toBe(pendingId);

    for (let i = 0; i < 5; i += 1) {
      const q = state.currentQuery;
      expect(q).not.toBeNull();
      state = await submitLabelAction(client, state, labelOf(q!.features));
    }

    // 10 labels in; the curve carries the eval_every=2 evaluation points
    const curve = await client.getCurve(info.session_id);
    const labelsUsed = curve.points[curve.points.length - 1]?.[0];
    expect(labelsUsed).toBe(10);
    expect(curve.points.map((p) => p[0])).toEqual([0, 2, 4, 6, 8, 10]);
    expect(state.curve.points).toEqual(curve.points);

    // budget spent: the next fetch completes the session cleanly
    state = await fetchAndRenderQuery(client, state);
    expect(state.complete).toBe(true);
    expect(state.banner).toBe('session complete');

    const csv = await client.exportCsv(info.session_id);
    expect(csv.split('\n')[0]).toBe('strategy,seed,labels_used,accuracy,fidelity_spent');
  }, 60000);
});
