/**
 * Entry point: a `Dynwfa` handle bound to one service URL, plus the
 * wrapper classes for callers that want to hold them directly.
 */

import {
  CacheStats,
  PipelineReport,
  RegistryOverview,
  ServiceClient,
} from "./client.js";
import {
  LazyConjunction,
  ScriptAutomaton,
  ScriptContext,
  ScriptExpression,
  ScriptWeight,
} from "./facade.js";

export * from "./client.js";
export * from "./facade.js";

export class Dynwfa {
  readonly client: ServiceClient;

  constructor(baseUrl: string) {
    this.client = new ServiceClient(baseUrl);
  }

  /** Parse a context spec and wrap its canonical form. */
  async context(spec: string): Promise<ScriptContext> {
    return new ScriptContext(this.client, await this.client.context(spec));
  }

  async expression(
    context: ScriptContext | string,
    text: string,
  ): Promise<ScriptExpression> {
    const spec = typeof context === "string" ? context : context.name;
    const printed = await this.client.expression(spec, text);
    return new ScriptExpression(this.client, spec, printed);
  }

  /** Wrap automaton text; the service sees it on first operation. */
  automaton(text: string): ScriptAutomaton {
    return new ScriptAutomaton(this.client, text);
  }

  weight(contextSpec: string, text: string): ScriptWeight {
    return new ScriptWeight(this.client, contextSpec, text);
  }

  conjunction(operands: ScriptAutomaton[]): LazyConjunction {
    return new LazyConjunction(this.client, operands);
  }

  pipeline(contextSpec: string, expr: string): Promise<PipelineReport> {
    return this.client.pipeline(contextSpec, expr);
  }

  registries(): Promise<RegistryOverview> {
    return this.client.registries();
  }

  cacheStats(): Promise<CacheStats> {
    return this.client.cacheStats();
  }
}
