/**
 * Object facade over the service client.
 *
 * Each wrapper holds one printed value (an automaton's text, an
 * expression's printed form, a weight's printed form) and delegates
 * every operation to the service, so results match the command line
 * byte for byte. No algorithm logic lives on this side.
 */

import { ServiceClient, WeightResult } from "./client.js";

export class ScriptContext {
  /** `name` is the canonical form, as printed by the service. */
  constructor(
    private readonly client: ServiceClient,
    readonly name: string,
  ) {}

  toString(): string {
    return this.name;
  }

  async expression(text: string): Promise<ScriptExpression> {
    const printed = await this.client.expression(this.name, text);
    return new ScriptExpression(this.client, this.name, printed);
  }

  weight(text: string): ScriptWeight {
    return new ScriptWeight(this.client, this.name, text);
  }
}

export class ScriptExpression {
  constructor(
    private readonly client: ServiceClient,
    readonly contextSpec: string,
    readonly text: string,
  ) {}

  toString(): string {
    return this.text;
  }

  async thompson(): Promise<ScriptAutomaton> {
    const text = await this.client.thompson(this.contextSpec, this.text);
    return new ScriptAutomaton(this.client, text);
  }
}

export class ScriptWeight {
  /**
   * `weightset` is only known once the service has computed the value;
   * locally created weights carry their context spec instead.
   */
  constructor(
    private readonly client: ServiceClient,
    readonly contextSpec: string,
    readonly value: string,
    readonly weightset?: string,
  ) {}

  toString(): string {
    return this.value;
  }

  async add(other: ScriptWeight): Promise<ScriptWeight> {
    const out: WeightResult = await this.client.addWeights(
      { context: this.contextSpec, weight: this.value },
      { context: other.contextSpec, weight: other.value },
    );
    // the labelset plays no part in weight arithmetic, so any context
    // carrying the result weightset works for further additions
    const spec = `lal_char(ab), ${out.weightset}`;
    return new ScriptWeight(this.client, spec, out.weight, out.weightset);
  }
}

export class ScriptAutomaton {
  constructor(
    private readonly client: ServiceClient,
    readonly text: string,
  ) {}

  toString(): string {
    return this.text;
  }

  toText(): string {
    return this.text;
  }

  /** The context spec from the text header. */
  contextSpec(): string {
    const header = this.text.split("\n", 1)[0];
    return header.replace(/^context = /, "");
  }

  async evaluate(word: string): Promise<string> {
    return this.client.evaluate(this.text, word);
  }

  async isProper(): Promise<boolean> {
    return this.client.isProper(this.text);
  }

  async proper(): Promise<ScriptAutomaton> {
    return new ScriptAutomaton(this.client, await this.client.proper(this.text));
  }

  async determinize(): Promise<ScriptAutomaton> {
    return new ScriptAutomaton(
      this.client,
      await this.client.determinize(this.text),
    );
  }

  async minimize(algo = "auto"): Promise<ScriptAutomaton> {
    return new ScriptAutomaton(
      this.client,
      await this.client.minimize(this.text, algo),
    );
  }

  async union(other: ScriptAutomaton): Promise<ScriptAutomaton> {
    const text = await this.client.union([this.text, other.text]);
    return new ScriptAutomaton(this.client, text);
  }

  /** Start a lazy conjunction; chain with .and() on the result. */
  and(other: ScriptAutomaton): LazyConjunction {
    return new LazyConjunction(this.client, [this, other]);
  }

  async focus(tape: number): Promise<ScriptAutomaton> {
    return new ScriptAutomaton(
      this.client,
      await this.client.focus(this.text, tape),
    );
  }

  async toExpression(): Promise<ScriptExpression> {
    const printed = await this.client.toExpression(this.text);
    return new ScriptExpression(this.client, this.contextSpec(), printed);
  }

  async toDot(): Promise<string> {
    return this.client.dot(this.text);
  }
}

/**
 * A chain of automata waiting to be multiplied.
 *
 * `a.and(b).and(c)` collects operands without touching the service;
 * the first use (evaluate, text, value) issues one variadic product
 * call for the whole chain, and the result is kept, so repeated uses
 * of the same chain dispatch no further products.
 */
export class LazyConjunction {
  private materialized?: Promise<ScriptAutomaton>;

  constructor(
    private readonly client: ServiceClient,
    readonly operands: readonly ScriptAutomaton[],
  ) {}

  and(other: ScriptAutomaton): LazyConjunction {
    return new LazyConjunction(this.client, [...this.operands, other]);
  }

  value(): Promise<ScriptAutomaton> {
    if (!this.materialized) {
      const texts = this.operands.map((a) => a.text);
      this.materialized = this.client
        .product(texts)
        .then((text) => new ScriptAutomaton(this.client, text));
    }
    return this.materialized;
  }

  async evaluate(word: string): Promise<string> {
    return (await this.value()).evaluate(word);
  }

  async text(): Promise<string> {
    return (await this.value()).text;
  }
}
