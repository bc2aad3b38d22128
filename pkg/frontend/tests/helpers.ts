import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { ApiClient } from "../src/api.js";

// happy-dom's global URL mishandles file:// bases; resolve with node:path.
const HERE = dirname(fileURLToPath(import.meta.url));

export function fixture(name: string): string {
  return readFileSync(join(HERE, "fixtures", name), "utf-8");
}

export function jsonFixture<T>(name: string): T {
  return JSON.parse(fixture(name)) as T;
}

export type RecordedCall = { url: string; init?: RequestInit };

/** ApiClient backed by canned responses keyed by "METHOD path". */
export function fakeApi(
  routes: Record<string, { status?: number; body: string; json?: boolean }>,
): { api: ApiClient; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    const method = init?.method ?? "GET";
    const key = `${method} ${url}`;
    const route = routes[key];
    if (!route) {
      return new Response(JSON.stringify({ detail: `no fixture for ${key}` }), {
        status: 404,
        headers: { "Content-Type": "application/json" },
      });
    }
    const headers = route.json === false ? {} : { "Content-Type": "application/json" };
    return new Response(route.body, { status: route.status ?? 200, headers });
  };
  return { api: new ApiClient("", fetchFn), calls };
}
