/**
 * Low-level HTTP client for the dynwfa service.
 *
 * Values travel in their printed forms: automata as the text format,
 * expressions and weights as the strings the command line prints.
 * Domain failures arrive as HTTP 400 with the full error text in
 * `detail` and are rethrown as ServiceError, so callers see the same
 * enriched messages in-process users get.
 */

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ServiceError";
  }
}

export interface PipelineReport {
  states: number;
  expression: string;
}

export interface WeightResult {
  weightset: string;
  weight: string;
}

export interface RegistryEntry {
  known: string[];
  calls: Record<string, number>;
}

export type RegistryOverview = Record<string, RegistryEntry>;

export interface CacheStats {
  compiles: number;
  cache_hits: number;
  entries: number;
  root: string;
}

export class ServiceClient {
  constructor(readonly baseUrl: string) {}

  private async request<T>(
    method: "GET" | "POST",
    path: string,
    body?: unknown,
  ): Promise<T> {
    const resp = await fetch(this.baseUrl + path, {
      method,
      headers:
        body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload: unknown = await resp.json();
    if (resp.status === 400) {
      const detail = (payload as { detail: string }).detail;
      throw new ServiceError(resp.status, detail);
    }
    if (!resp.ok) {
      throw new ServiceError(resp.status, JSON.stringify(payload));
    }
    return payload as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>("POST", path, body);
  }

  async health(): Promise<{ status: string; version: string }> {
    return this.request("GET", "/health");
  }

  async context(spec: string): Promise<string> {
    const out = await this.post<{ context: string }>("/context", { spec });
    return out.context;
  }

  async expression(context: string, text: string): Promise<string> {
    const out = await this.post<{ expression: string }>("/expression", {
      context,
      text,
    });
    return out.expression;
  }

  async evaluate(automaton: string, word: string): Promise<string> {
    const out = await this.post<{ weight: string }>("/evaluate", {
      automaton,
      word,
    });
    return out.weight;
  }

  async isProper(automaton: string): Promise<boolean> {
    const out = await this.post<{ is_proper: boolean }>("/is-proper", {
      automaton,
    });
    return out.is_proper;
  }

  async proper(automaton: string): Promise<string> {
    const out = await this.post<{ automaton: string }>("/proper", { automaton });
    return out.automaton;
  }

  async thompson(context: string, text: string): Promise<string> {
    const out = await this.post<{ automaton: string }>("/thompson", {
      context,
      text,
    });
    return out.automaton;
  }

  async determinize(automaton: string): Promise<string> {
    const out = await this.post<{ automaton: string }>("/determinize", {
      automaton,
    });
    return out.automaton;
  }

  async minimize(automaton: string, algo = "auto"): Promise<string> {
    const out = await this.post<{ automaton: string }>("/minimize", {
      automaton,
      algo,
    });
    return out.automaton;
  }

  async product(automata: string[]): Promise<string> {
    const out = await this.post<{ automaton: string }>("/product", { automata });
    return out.automaton;
  }

  async union(automata: string[]): Promise<string> {
    const out = await this.post<{ automaton: string }>("/union", { automata });
    return out.automaton;
  }

  async focus(automaton: string, tape: number): Promise<string> {
    const out = await this.post<{ automaton: string }>("/focus", {
      automaton,
      tape,
    });
    return out.automaton;
  }

  async toExpression(automaton: string): Promise<string> {
    const out = await this.post<{ expression: string }>("/to-expression", {
      automaton,
    });
    return out.expression;
  }

  async pipeline(context: string, expr: string): Promise<PipelineReport> {
    return this.post("/pipeline", { context, expr });
  }

  async addWeights(
    left: { context: string; weight: string },
    right: { context: string; weight: string },
  ): Promise<WeightResult> {
    return this.post("/add-weights", { left, right });
  }

  async dot(automaton: string): Promise<string> {
    const out = await this.post<{ dot: string }>("/dot", { automaton });
    return out.dot;
  }

  async registries(): Promise<RegistryOverview> {
    return this.request("GET", "/registries");
  }

  async cacheStats(): Promise<CacheStats> {
    return this.request("GET", "/cache/stats");
  }

  async cacheClear(): Promise<void> {
    await this.post("/cache/clear", {});
  }
}
