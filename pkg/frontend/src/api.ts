/* Typed client for the pcmcomplete session service. */

export type Position = [number, number];

export interface SessionState {
  id: string;
  order: number;
  judgments: [number, number, number][];
  connected: boolean;
  components: number[][];
  warnings: string[];
}

export interface MethodResult {
  matrix: { order: number; entries: number[][] };
  filled: [number, number, number][];
  weights: number[];
  lambda_max: number;
  ci: number;
  gci: number;
}

export interface Comparison {
  per_entry: [number, number, number][];
  max_divergence: number;
  max_position: Position;
  coincide: boolean;
  tolerance: number;
}

export interface CompletionPayload {
  id: string;
  order: number;
  method: string;
  connected: boolean;
  warnings: string[];
  given: [number, number, number][];
  components?: number[][];
  llsm?: MethodResult;
  ev?: MethodResult;
  comparison?: Comparison;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class Client {
  constructor(
    private baseUrl: string,
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, body.detail ?? response.statusText);
    }
    return body as T;
  }

  health(): Promise<{ ok: boolean }> {
    return this.request("/healthz");
  }

  createSession(order: number): Promise<SessionState> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify({ order }),
    });
  }

  getSession(id: string): Promise<SessionState> {
    return this.request(`/sessions/${id}`);
  }

  /** value = null removes the judgment. */
  submitJudgment(id: string, i: number, j: number, value: number | null): Promise<SessionState> {
    return this.request(`/sessions/${id}/judgments`, {
      method: "PUT",
      body: JSON.stringify({ i, j, value }),
    });
  }

  getCompletion(id: string, method = "both", tol = 1e-6): Promise<CompletionPayload> {
    return this.request(`/sessions/${id}/completion?method=${method}&tol=${tol}`);
  }

  getSuggestion(id: string): Promise<{ suggestion: Position | null }> {
    return this.request(`/sessions/${id}/suggestion`);
  }
}

/** Parse an analyst-entered judgment: positive decimal or fraction "p/q". */
export function parseJudgment(text: string): number | null {
  const trimmed = text.trim();
  if (trimmed === "") return null;
  const fraction = trimmed.match(/^(\d+(?:\.\d+)?)\s*\/\s*(\d+(?:\.\d+)?)$/);
  let value: number;
  if (fraction) {
    value = Number(fraction[1]) / Number(fraction[2]);
  } else {
    value = Number(trimmed);
  }
  return Number.isFinite(value) && value > 0 ? value : null;
}
