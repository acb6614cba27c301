import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    globalSetup: ["tests/globalSetup.ts"],
    // one service, deterministic registry counters: keep files serial
    fileParallelism: false,
    testTimeout: 30_000,
    hookTimeout: 60_000,
  },
});
