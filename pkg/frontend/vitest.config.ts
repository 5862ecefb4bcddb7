import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    globalSetup: ["tests/e2e-setup.ts"],
    testTimeout: 20000,
    hookTimeout: 60000,
  },
});
