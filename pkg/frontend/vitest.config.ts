import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    environment: "node",
    // e2e spawns the Python service and waits for it to come up
    testTimeout: 30_000,
    hookTimeout: 30_000,
  },
});
