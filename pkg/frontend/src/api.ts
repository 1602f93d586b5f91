/**
 * Typed client for the alpool gateway JSON API.
 *
 * The UI performs no learning computation: every number it shows comes
 * from these endpoints verbatim.
 */

export interface QueryPayload {
  sample_id: number;
  features: number[];
  render_hint: 'scatter2d' | 'bloch' | 'bar';
  strategy_score: number;
  round: number;
  labels_used: number;
  budget_remaining: number;
  class_names: string[];
  pool_features: number[][];
}

/** [labels_used, accuracy, fidelity_spent] straight from the gateway. */
export type CurvePoint = [number, number, number];

export interface CurvePayload {
  points: CurvePoint[];
  partial: boolean;
}

export interface SessionInfo {
  session_id: string;
  mode: string;
  strategy: string;
  n_classes: number;
  class_names: string[];
  render_hint: string;
  labels_used: number;
  budget_remaining: number;
}

export interface LabelResponse {
  labels_used: number;
  current_accuracy: number | null;
  curve_tail: CurvePoint[];
}

/** An error response from the gateway: { error_code, message }. */
export class GatewayError extends Error {
  constructor(
    public readonly errorCode: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
    this.name = 'GatewayError';
  }
}

async function parse<T>(response: Response): Promise<T> {
  const body = await response.json();
  if (!response.ok) {
    throw new GatewayError(
      body.error_code ?? 'unknown_error',
      body.message ?? response.statusText,
      response.status,
    );
  }
  return body as T;
}

export class GatewayClient {
  constructor(private readonly baseUrl: string) {}

  createSession(config: Record<string, unknown>): Promise<SessionInfo> {
    return fetch(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(config),
    }).then((r) => parse<SessionInfo>(r));
  }

  getQuery(sessionId: string): Promise<QueryPayload> {
    return fetch(`${this.baseUrl}/sessions/${sessionId}/query`).then((r) =>
      parse<QueryPayload>(r),
    );
  }

  postLabel(sessionId: string, sampleId: number, label: number): Promise<LabelResponse> {
    return fetch(`${this.baseUrl}/sessions/${sessionId}/label`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ sample_id: sampleId, label }),
    }).then((r) => parse<LabelResponse>(r));
  }

  getCurve(sessionId: string): Promise<CurvePayload> {
    return fetch(`${this.baseUrl}/sessions/${sessionId}/curve`).then((r) =>
      parse<CurvePayload>(r),
    );
  }

  async exportCsv(sessionId: string): Promise<string> {
    const r = await fetch(`${this.baseUrl}/sessions/${sessionId}/export?format=csv`);
    if (!r.ok) {
      const body = await r.json();
      throw new GatewayError(body.error_code ?? 'unknown_error', body.message, r.status);
    }
    return r.text();
  }
}
