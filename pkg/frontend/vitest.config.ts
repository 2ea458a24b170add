import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    // integration tests spawn the Python service and wait for completions
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
