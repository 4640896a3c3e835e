import { readFileSync } from "node:fs";
import { resolve } from "node:path";

export interface TraceEntry {
  method: string;
  path: string;
  body: unknown;
  status: number;
  response: unknown;
}

export interface Fixture {
  premises: string;
  steps: { connection: string; conclusion: string }[];
  listing: string;
  theorem: string;
  redundant: number[];
  trace: TraceEntry[];
}

export function loadFixture(name: string): Fixture {
  const path = resolve(process.cwd(), "tests", "fixtures", name);
  return JSON.parse(readFileSync(path, "utf8")) as Fixture;
}

/** A network-level double: replays a recorded request/response trace and
 * fails loudly if the client deviates from it.  This is what guarantees
 * the UI computes nothing locally - every displayed row has to come out
 * of a recorded service response. */
export function traceFetch(trace: TraceEntry[]) {
  let cursor = 0;
  const fetchLike = async (input: string, init?: RequestInit): Promise<Response> => {
    const expected = trace[cursor];
    if (!expected) {
      throw new Error(`unexpected request ${init?.method ?? "GET"} ${input}`);
    }
    cursor += 1;
    const method = init?.method ?? "GET";
    if (method !== expected.method || input !== expected.path) {
      throw new Error(
        `request ${cursor} was ${method} ${input}, ` +
          `recorded ${expected.method} ${expected.path}`,
      );
    }
    const body = init?.body ? JSON.parse(init.body as string) : null;
    if (JSON.stringify(body) !== JSON.stringify(expected.body)) {
      throw new Error(
        `request ${cursor} body ${JSON.stringify(body)} != ` +
          JSON.stringify(expected.body),
      );
    }
    return new Response(JSON.stringify(expected.response), {
      status: expected.status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return {
    fetch: fetchLike,
    remaining: () => trace.length - cursor,
  };
}

export function tableTokensFromDom(root: HTMLElement): string[] {
  const tokens: string[] = [];
  for (const row of root.querySelectorAll("#proof-table tr")) {
    for (const selector of [".num", ".stmt", ".conn", ".annot"]) {
      const text = row.querySelector(selector)?.textContent?.trim();
      if (text) {
        tokens.push(text);
      }
    }
  }
  return tokens;
}
