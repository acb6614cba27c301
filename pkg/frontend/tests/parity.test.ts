/**
 * The binding must not add or lose anything relative to the command
 * line: the same inputs produce byte-identical printed results, and a
 * chained conjunction costs exactly one variadic product dispatch.
 */

import { spawnSync } from "node:child_process";
import { mkdtemp, rm, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterAll, beforeAll, expect, it } from "vitest";

import { Dynwfa } from "../src/index";
import { BASE_URL, REPO_ROOT } from "./config";
import { A1_TEXT, A2_TEXT } from "./fixtures";

const api = new Dynwfa(BASE_URL);
let workDir: string;

function cli(args: string[]): string {
  const run = spawnSync("python3", ["-m", "dynwfa", ...args], {
    cwd: REPO_ROOT,
    encoding: "utf8",
    env: { ...process.env, DYNWFA_PLUGINS: join(workDir, "cli-plugins") },
  });
  expect(run.status, run.stderr).toBe(0);
  return run.stdout;
}

beforeAll(async () => {
  workDir = await mkdtemp(join(tmpdir(), "dynwfa-parity-"));
  await writeFile(join(workDir, "a1.txt"), A1_TEXT);
  await writeFile(join(workDir, "a2.txt"), A2_TEXT);
});

afterAll(async () => {
  await rm(workDir, { recursive: true, force: true });
});

it("evaluates the binary machine exactly as the CLI prints it", async () => {
  const viaBinding = await api.automaton(A2_TEXT).evaluate("bb");
  expect(viaBinding).toBe("3");

  const viaCli = cli(["evaluate", "--automaton", join(workDir, "a2.txt"), "bb"]);
  expect(viaBinding + "\n").toBe(viaCli);
});

it("materializes a chained conjunction with one 3-way product dispatch", async () => {
  const a1 = api.automaton(A1_TEXT);
  const chain = a1.and(a1).and(a1);
  expect(chain.operands).toHaveLength(3);

  const before = (await api.registries())["product"]?.calls ?? {};
  const text = await chain.text();
  const weight = await chain.evaluate("bb"); // same chain: cached product
  const after = (await api.registries())["product"].calls;

  const keys = new Set([...Object.keys(before), ...Object.keys(after)]);
  const deltas: Record<string, number> = {};
  for (const key of keys) {
    const d = (after[key] ?? 0) - (before[key] ?? 0);
    if (d !== 0) {
      deltas[key] = d;
    }
  }
  const signatures = Object.keys(deltas);
  expect(signatures).toHaveLength(1);
  expect(deltas[signatures[0]]).toBe(1);
  const operandCount = signatures[0].match(/mutable_automaton</g) ?? [];
  expect(operandCount).toHaveLength(3);

  const a1Path = join(workDir, "a1.txt");
  const viaCli = cli(["product", a1Path, a1Path, a1Path]);
  expect(text).toBe(viaCli);

  expect(weight).toBe("1");
  await writeFile(join(workDir, "product.txt"), text);
  const cliWeight = cli([
    "evaluate",
    "--automaton",
    join(workDir, "product.txt"),
    "bb",
  ]);
  expect(weight + "\n").toBe(cliWeight);
});

it("adds weights across weightsets exactly as the CLI prints them", async () => {
  const two = api.weight("lal_char(ab), z", "2");
  const half = api.weight("lal_char(ab), q", "1/2");
  const sum = await two.add(half);
  expect(sum.weightset).toBe("q");
  expect(sum.value).toBe("5/2");

  const viaCli = cli([
    "add-weights",
    "--left-context", "lal_char(ab), z",
    "--left", "2",
    "--right-context", "lal_char(ab), q",
    "--right", "1/2",
  ]);
  expect(`weightset: ${sum.weightset}\nweight: ${sum.value}\n`).toBe(viaCli);
});
