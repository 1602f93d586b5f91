import { describe, expect, it } from 'vitest';

import { CurvePayload, GatewayError, QueryPayload } from '../src/api';
import {
  Client,
  canLabel,
  fetchAndRenderQuery,
  initialState,
  submitLabelAction,
} from '../src/state';

function query(sampleId: number): QueryPayload {
  return {
    sample_id: sampleId,
    features: [0.1, 0.2, 0.3],
    render_hint: 'bloch',
    strategy_score: 0.4,
    round: 1,
    labels_used: 3,
    budget_remaining: 12,
    class_names: ['|0>-dominant', '|1>-dominant'],
    pool_features: [[0, 0, 1], [1, 0, 0]],
  };
}

function curve(n: number): CurvePayload {
  return {
    points: Array.from({ length: n }, (_, i) => [i * 3, 0.5 + i * 0.1, 0]),
    partial: false,
  };
}

/** Scripted fake gateway: shift responses (or errors) off per-call queues. */
function fakeClient(script: {
  queries?: Array<QueryPayload | GatewayError>;
  labels?: Array<null | GatewayError>;
  curves?: CurvePayload[];
}): Client & { labelCalls: number[] } {
  const labelCalls: number[] = [];
  const next = <T>(queue: Array<T | GatewayError> | undefined, fallback: T): T => {
    const item = queue && queue.length > 0 ? queue.shift() : fallback;
    if (item instanceof GatewayError) throw item;
    return item as T;
  };
  return {
    labelCalls,
    getQuery: async (_: string) => next(script.queries, query(99)),
    postLabel: async (_: string, sampleId: number) => {
      labelCalls.push(sampleId);
      next(script.labels, null);
      return { labels_used: 4, current_accuracy: 0.8, curve_tail: [] };
    },
    getCurve: async (_: string) => next<CurvePayload>(script.curves, curve(1)),
  };
}

describe('fetchAndRenderQuery', () => {
  it('loads the pending query and the curve', async () => {
    const client = fakeClient({ queries: [query(7)], curves: [curve(2)] });
    const state = await fetchAndRenderQuery(client, initialState('s', []));
    expect(state.currentQuery?.sample_id).toBe(7);
    expect(state.curve.points).toHaveLength(2);
    expect(state.banner).toBeNull();
  });

  it('repeated fetch while pending renders the same sample', async () => {
    const client = fakeClient({ queries: [query(7), query(7)] });
    let state = await fetchAndRenderQuery(client, initialState('s', []));
    state = await fetchAndRenderQuery(client, state);
    expect(state.currentQuery?.sample_id).toBe(7);
  });

  it('pool exhaustion completes the session with a banner', async () => {
    const client = fakeClient({
      queries: [new GatewayError('pool_exhausted', 'pool is empty', 409)],
    });
    const state = await fetchAndRenderQuery(client, initialState('s', []));
    expect(state.complete).toBe(true);
    expect(state.banner).toBe('session complete');
    expect(state.currentQuery).toBeNull();
    expect(canLabel(state)).toBe(false);
  });

  it('network errors surface as a banner and leave state unchanged', async () => {
    const client = fakeClient({
      queries: [query(7), new GatewayError('unknown_session', 'gone', 404)],
    });
    const loaded = await fetchAndRenderQuery(client, initialState('s', []));
    const after = await fetchAndRenderQuery(client, loaded);
    expect(after.banner).toContain('unknown_session');
    expect(after.currentQuery?.sample_id).toBe(7);
    expect(after.complete).toBe(false);
  });
});

describe('submitLabelAction', () => {
  it('posts the label, clears the query, and auto-fetches the next one', async () => {
    const client = fakeClient({ queries: [query(3), query(8)] });
    let state = await fetchAndRenderQuery(client, initialState('s', ['a', 'b']));
    state = await submitLabelAction(client, state, 1);
    expect(client.labelCalls).toEqual([3]);
    expect(state.currentQuery?.sample_id).toBe(8);
  });

  it('ignores clicks while busy (double-click race)', async () => {
    const client = fakeClient({ queries: [query(3)] });
    const loaded = await fetchAndRenderQuery(client, initialState('s', ['a', 'b']));
    const busy = { ...loaded, busy: true };
    const after = await submitLabelAction(client, busy, 0);
    expect(after).toBe(busy);
    expect(client.labelCalls).toHaveLength(0);
  });

  it('ignores clicks when no query is pending', async () => {
    const client = fakeClient({});
    const state = initialState('s', ['a', 'b']);
    const after = await submitLabelAction(client, state, 0);
    expect(after).toBe(state);
    expect(client.labelCalls).toHaveLength(0);
  });

  it('recovers from stale_query by refetching the real pending query', async () => {
    const client = fakeClient({
      queries: [query(3), query(5)],
      labels: [new GatewayError('stale_query', 'not pending', 409)],
    });
    let state = await fetchAndRenderQuery(client, initialState('s', ['a', 'b']));
    state = await submitLabelAction(client, state, 0);
    expect(state.currentQuery?.sample_id).toBe(5);
    expect(state.busy).toBe(false);
    expect(state.complete).toBe(false);
  });

  it('budget exhaustion after the final label completes the session', async () => {
    const client = fakeClient({
      queries: [query(3), new GatewayError('budget_exhausted', 'done', 409)],
    });
    let state = await fetchAndRenderQuery(client, initialState('s', ['a', 'b']));
    state = await submitLabelAction(client, state, 1);
    expect(client.labelCalls).toEqual([3]);
    expect(state.complete).toBe(true);
    expect(state.banner).toBe('session complete');
  });
});
