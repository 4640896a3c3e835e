import type {
  AxiomsResponse,
  ExtractResponse,
  OptionsResponse,
  SessionView,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client over the loopback service; the fetch implementation
 * is injectable so tests can substitute a network-level double. */
export class Client {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const text = await response.text();
    const payload = text ? JSON.parse(text) : null;
    if (!response.ok) {
      const detail =
        payload && typeof payload.detail === "string" ? payload.detail : text;
      throw new ApiError(response.status, detail);
    }
    return payload as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  axioms(): Promise<AxiomsResponse> {
    return this.request("GET", "/axioms");
  }

  createSession(premises: string): Promise<SessionView> {
    return this.request("POST", "/sessions", { premises });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${id}`);
  }

  getOptions(id: string): Promise<OptionsResponse> {
    return this.request("GET", `/sessions/${id}/options`);
  }

  apply(id: string, option: number, revision?: number): Promise<SessionView> {
    const body: { option: number; revision?: number } = { option };
    if (revision !== undefined) {
      body.revision = revision;
    }
    return this.request("POST", `/sessions/${id}/apply`, body);
  }

  undo(id: string): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/undo`);
  }

  extract(id: string): Promise<ExtractResponse> {
    return this.request("POST", `/sessions/${id}/extract`);
  }
}
