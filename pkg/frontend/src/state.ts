/**
 * View-state transitions for the annotation loop.
 *
 * Pure-ish async functions: each takes the current ViewState and returns
 * the next one, talking to the gateway through the injected client. The
 * busy flag serializes user actions (single in-flight request); label
 * buttons are usable only when a query is pending and nothing is in
 * flight.
 */

import {
  CurvePayload,
  GatewayClient,
  GatewayError,
  QueryPayload,
} from './api';

export interface ViewState {
  sessionId: string;
  currentQuery: QueryPayload | null;
  curve: CurvePayload;
  classNames: string[];
  busy: boolean;
  banner: string | null;
  complete: boolean;
}

/** A minimal client surface so tests can substitute a fake gateway. */
export type Client = Pick<GatewayClient, 'getQuery' | 'postLabel' | 'getCurve'>;

export function initialState(sessionId: string, classNames: string[]): ViewState {
  return {
    sessionId,
    currentQuery: null,
    curve: { points: [], partial: false },
    classNames,
    busy: false,
    banner: null,
    complete: false,
  };
}

export function canLabel(state: ViewState): boolean {
  return !state.busy && !state.complete && state.currentQuery !== null;
}

function isSessionOver(error: unknown): boolean {
  return (
    error instanceof GatewayError &&
    (error.errorCode === 'pool_exhausted' || error.errorCode === 'budget_exhausted')
  );
}

/** Fetch the pending query (idempotent server-side) and the latest curve. */
export async function fetchAndRenderQuery(
  client: Client,
  state: ViewState,
): Promise<ViewState> {
  if (state.busy || state.complete) return state;
  try {
    const [query, curve] = await Promise.all([
      client.getQuery(state.sessionId),
      client.getCurve(state.sessionId),
    ]);
    return { ...state, currentQuery: query, curve, banner: null };
  } catch (error) {
    if (isSessionOver(error)) {
      const curve = await client.getCurve(state.sessionId);
      return { ...state, currentQuery: null, curve, complete: true, banner: 'session complete' };
    }
    return { ...state, banner: describe(error) };
  }
}

/**
 * Submit a label for the pending query, then auto-fetch the next one.
 *
 * A second call while busy (double-click race) is a no-op. A stale_query
 * rejection means the server no longer considers our sample pending; the
 * recovery is simply to refetch the real pending query.
 */
export async function submitLabelAction(
  client: Client,
  state: ViewState,
  label: number,
): Promise<ViewState> {
  if (!canLabel(state)) return state;
  const query = state.currentQuery as QueryPayload;
  const inFlight = { ...state, busy: true };
  try {
    await client.postLabel(state.sessionId, query.sample_id, label);
  } catch (error) {
    const settled = { ...inFlight, busy: false };
    if (error instanceof GatewayError && error.errorCode === 'stale_query') {
      return fetchAndRenderQuery(client, { ...settled, currentQuery: null });
    }
    if (isSessionOver(error)) {
      return fetchAndRenderQuery(client, settled);
    }
    return { ...settled, banner: describe(error) };
  }
  const cleared = { ...inFlight, busy: false, currentQuery: null, banner: null };
  return fetchAndRenderQuery(client, cleared);
}

function describe(error: unknown): string {
  if (error instanceof GatewayError) return `${error.errorCode}: ${error.message}`;
  return error instanceof Error ? error.message : String(error);
}
