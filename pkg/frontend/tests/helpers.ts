// Shared test harness: fixture loading, a fake fetch that replays recorded
// gateway responses, and DOM helpers for driving the app in jsdom.

import { readFileSync } from "node:fs";
import { join } from "node:path";

import { ApiClient } from "../src/api";
import { App } from "../src/app";

export function fixture<T = any>(name: string): T {
  const path = join(process.cwd(), "tests", "fixtures", name);
  return JSON.parse(readFileSync(path, "utf8")) as T;
}

export interface FakeReply {
  status?: number;
  json: unknown;
}

export type Responder = (url: URL, body: any) => FakeReply | unknown;

export interface FakeRoute {
  method: string;
  path: string | RegExp;
  reply: Responder;
}

export interface FakeFetch {
  calls: { method: string; path: string; body: any }[];
  restore(): void;
}

export function installFakeFetch(routes: FakeRoute[]): FakeFetch {
  const original = globalThis.fetch;
  const calls: FakeFetch["calls"] = [];

  globalThis.fetch = (async (input: any, init?: any) => {
    const url = new URL(String(input), "http://testhost");
    const method = (init?.method ?? "GET").toUpperCase();
    const body = init?.body ? JSON.parse(init.body) : undefined;
    calls.push({ method, path: url.pathname + url.search, body });

    for (const route of routes) {
      if (route.method.toUpperCase() !== method) continue;
      const matches =
        typeof route.path === "string"
          ? route.path === url.pathname
          : route.path.test(url.pathname);
      if (!matches) continue;
      const result = route.reply(url, body);
      const reply: FakeReply =
        result && typeof result === "object" && "json" in (result as object)
          ? (result as FakeReply)
          : { json: result };
      return new Response(JSON.stringify(reply.json), {
        status: reply.status ?? 200,
        headers: { "Content-Type": "application/json" },
      });
    }
    return new Response(JSON.stringify({ code: "not-found", message: "no such resource" }), {
      status: 404,
      headers: { "Content-Type": "application/json" },
    });
  }) as typeof fetch;

  return {
    calls,
    restore() {
      globalThis.fetch = original;
    },
  };
}

/** Standard logged-in routes most views need. */
export function baseRoutes(): FakeRoute[] {
  const vocabularies = fixture<Record<string, string[]>>("vocabularies.json");
  return [
    { method: "GET", path: "/api/catalog", reply: () => fixture("catalog.json") },
    { method: "GET", path: "/api/me", reply: () => fixture("me.json") },
    {
      method: "GET",
      path: /^\/api\/catalog\/vocabularies\/.+$/,
      reply: (url) => {
        const name = decodeURIComponent(url.pathname.split("/").pop()!);
        const entries = vocabularies[name];
        return entries
          ? { json: { name, entries } }
          : { status: 404, json: { code: "unknown-vocabulary", message: name } };
      },
    },
  ];
}

/** Mount the real app in jsdom; install a fake fetch (or real base) first. */
export async function mountApp(hash = "#/dashboard") {
  document.body.innerHTML = '<div id="app"></div>';
  window.location.hash = hash;
  const root = document.getElementById("app")!;
  const api = new ApiClient("");
  const app = new App(root, api);
  await app.start();
  return { root, app, api };
}

export async function waitFor<T>(
  probe: () => T | null | undefined | false,
  timeoutMs = 3000,
): Promise<T> {
  const start = Date.now();
  for (;;) {
    const result = probe();
    if (result) return result;
    if (Date.now() - start > timeoutMs) {
      throw new Error("waitFor timed out");
    }
    await new Promise((resolve) => setTimeout(resolve, 10));
  }
}

export function click(element: Element): void {
  (element as HTMLElement).dispatchEvent(
    new MouseEvent("click", { bubbles: true, cancelable: true }));
}

export function submit(form: Element): void {
  form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
}

export function setValue(input: HTMLInputElement | HTMLTextAreaElement | HTMLSelectElement, value: string): void {
  input.value = value;
  input.dispatchEvent(new Event("input", { bubbles: true }));
}
