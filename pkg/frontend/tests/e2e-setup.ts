// Global setup for the end-to-end flow test: boots the real Python gateway
// on a scratch database and hands its base URL to the tests.

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import type { TestProject } from "vitest/node";

let server: ChildProcess | undefined;

export default async function setup(project: TestProject): Promise<() => void> {
  const port = 8700 + Math.floor(Math.random() * 800);
  const base = `http://127.0.0.1:${port}`;
  const scratch = mkdtempSync(join(tmpdir(), "ctidesk-e2e-"));

  server = spawn("python3", ["-m", "ctidesk.cli", "serve"], {
    env: {
      ...process.env,
      HOST: "127.0.0.1",
      PORT: String(port),
      DB_PATH: join(scratch, "e2e.db"),
    },
    stdio: "ignore",
  });

  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const response = await fetch(`${base}/api/catalog`);
      if (response.ok) break;
    } catch {
      /* not up yet */
    }
    if (Date.now() > deadline) {
      server.kill("SIGTERM");
      throw new Error("gateway did not come up within 30s");
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }

  project.provide("e2eBase", base);
  return () => {
    server?.kill("SIGTERM");
  };
}

declare module "vitest" {
  export interface ProvidedContext {
    e2eBase: string;
  }
}
