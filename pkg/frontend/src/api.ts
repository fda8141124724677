import type {
  AnnotationRow,
  BatchResponse,
  CurveResponse,
  RoundMetrics,
  SessionSummary,
} from "./types";

/** HTTP error with the service's status code and error message. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

/** Transport-level failure (server unreachable, connection dropped). */
export class NetworkError extends Error {}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}${path}`, {
        method,
        headers: body === undefined ? {} : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new NetworkError(err instanceof Error ? err.message : String(err));
    }
    let payload: unknown;
    try {
      payload = await response.json();
    } catch {
      payload = {};
    }
    if (!response.ok) {
      const message =
        typeof payload === "object" && payload !== null && "error" in payload
          ? String((payload as { error: unknown }).error)
          : `HTTP ${response.status}`;
      throw new ApiError(response.status, message);
    }
    return payload as T;
  }

  listDatasets(): Promise<{ datasets: string[] }> {
    return this.request("GET", "/datasets");
  }

  listSessions(): Promise<{ sessions: SessionSummary[] }> {
    return this.request("GET", "/sessions");
  }

  createSession(dataset: string, config: Record<string, unknown>): Promise<SessionSummary> {
    return this.request("POST", "/sessions", { dataset, config });
  }

  getSession(sessionId: string): Promise<SessionSummary> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  getBatch(sessionId: string): Promise<BatchResponse> {
    return this.request("GET", `/sessions/${sessionId}/batch`);
  }

  submitAnnotations(
    sessionId: string,
    annotations: AnnotationRow[],
  ): Promise<{ metrics: RoundMetrics }> {
    return this.request("POST", `/sessions/${sessionId}/annotations`, { annotations });
  }

  getMetrics(sessionId: string): Promise<CurveResponse> {
    return this.request("GET", `/sessions/${sessionId}/metrics`);
  }
}
