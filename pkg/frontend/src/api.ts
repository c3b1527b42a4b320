/** Thin typed wrapper over the game service HTTP API.
 *
 * The client never inspects URLs or decides anything about them; every
 * verdict, feedback line and tip it displays arrives in a response payload.
 */

export interface RoundView {
  url: string;
  round_index: number;
  score: number;
  lives: number;
  time_remaining: number;
  tip: string | null;
  total_rounds: number;
}

export interface Outcome {
  kind: string;
  feedback: string;
  tip: string | null;
  score_delta: number;
  time_delta: number;
  lives_delta: number;
}

export interface FinalResult {
  phase: string;
  score: number;
  lives: number;
  time_remaining: number;
}

export interface CreateGameResponse {
  session_id: string;
  seed: number;
  view: RoundView;
}

export interface StateResponse {
  phase: string;
  view?: RoundView;
  result?: FinalResult;
}

export interface ActionResponse {
  outcome: Outcome;
  phase: string;
  view?: RoundView;
  result?: FinalResult;
}

export interface MetricsResponse {
  accuracy: number | null;
  false_positive_count: number;
  false_negative_count: number;
  teacher_ask_count: number;
  mean_time_per_decision: number | null;
  final_score: number;
  final_phase: string;
}

export type PlayerAction = "eat" | "avoid" | "ask_teacher";

export interface CreateGameRequest {
  deck?: string;
  seed?: number;
  config?: Record<string, number>;
}

/** Non-2xx response, decoded from the service's {error, message} wire shape.
 *
 * A 409 carries the final result so the caller can land on the result
 * screen without another round trip.
 */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly result: FinalResult | null;

  constructor(status: number, code: string, message: string, result: FinalResult | null = null) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
    this.result = result;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    // bind so a bare window.fetch keeps its receiver
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  async listDecks(): Promise<{ decks: string[] }> {
    return this.request("GET", "/decks");
  }

  async createGame(body: CreateGameRequest = {}): Promise<CreateGameResponse> {
    return this.request("POST", "/games", body);
  }

  async getState(sessionId: string): Promise<StateResponse> {
    return this.request("GET", `/games/${encodeURIComponent(sessionId)}`);
  }

  async postAction(sessionId: string, action: PlayerAction, elapsed: number): Promise<ActionResponse> {
    return this.request("POST", `/games/${encodeURIComponent(sessionId)}/actions`, {
      action,
      elapsed,
    });
  }

  async getMetrics(sessionId: string): Promise<MetricsResponse> {
    return this.request("GET", `/games/${encodeURIComponent(sessionId)}/metrics`);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    let payload: unknown = null;
    try {
      payload = await response.json();
    } catch {
      payload = null;
    }
    if (!response.ok) {
      const record = (payload ?? {}) as Record<string, unknown>;
      const code = typeof record.error === "string" ? record.error : "http_error";
      const message = typeof record.message === "string" ? record.message : `HTTP ${response.status}`;
      const result = (record.result as FinalResult | undefined) ?? null;
      throw new ApiError(response.status, code, message, result);
    }
    return payload as T;
  }
}
