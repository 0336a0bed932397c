/** Typed client for the learning-path HTTP service. */

export interface EdgeStat {
  from: string;
  to: string;
  frequency: number;
  association: boolean;
  tau: number;
}

export interface PathDoc {
  query: string;
  path: string[];
  recommended: string[];
  associations: number;
  iterations: number;
  seed: number;
  version: number;
  edges: EdgeStat[];
  session?: string;
  history_length?: number;
}

export interface SessionDoc {
  id: string;
  known: string[];
}

export interface TermEntry {
  term: string;
  data_list_size: number;
  in_degree: number;
  out_degree: number;
}

export interface ErrorBody {
  error: string;
  detail: string;
  suggestions?: string[];
  dead_ends?: string[];
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ErrorBody,
  ) {
    super(`${body.error}: ${body.detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  private readonly fetchFn: FetchLike;

  constructor(
    public readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const doc = (await response.json()) as T | ErrorBody;
    if (!response.ok) {
      throw new ApiError(response.status, doc as ErrorBody);
    }
    return doc as T;
  }

  async createSession(known: string[] = []): Promise<SessionDoc> {
    return this.post<SessionDoc>("/sessions", { known });
  }

  async query(
    term: string,
    session: string,
    seed?: number,
  ): Promise<PathDoc> {
    const body: Record<string, unknown> = { term, session };
    if (seed !== undefined) body.seed = seed;
    return this.post<PathDoc>("/query", body);
  }

  async drilldown(
    session: string,
    term: string,
    seed?: number,
  ): Promise<PathDoc> {
    const body: Record<string, unknown> = { term };
    if (seed !== undefined) body.seed = seed;
    return this.post<PathDoc>(`/sessions/${session}/drilldown`, body);
  }

  async markKnown(session: string, term: string): Promise<SessionDoc> {
    return this.post<SessionDoc>(`/sessions/${session}/known`, { term });
  }

  async terms(): Promise<TermEntry[]> {
    const response = await this.fetchFn(`${this.baseUrl}/terms`);
    const doc = (await response.json()) as { terms: TermEntry[] } | ErrorBody;
    if (!response.ok) {
      throw new ApiError(response.status, doc as ErrorBody);
    }
    return (doc as { terms: TermEntry[] }).terms;
  }
}
