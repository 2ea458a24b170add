/* End-to-end tests against a live session service.
 *
 * Each run spawns `python3 -m pcmcomplete.cli serve` on a random port and
 * drives it through the typed client, then checks the rendered HTML for the
 * same states an analyst would see in the browser. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { Client } from "../src/api.js";
import { buildViewModel } from "../src/viewmodel.js";
import { renderView } from "../src/render.js";

const port = 18000 + Math.floor(Math.random() * 10000);
const baseUrl = `http://127.0.0.1:${port}`;
let server: ChildProcess;
const client = new Client(baseUrl);

async function waitForService(): Promise<void> {
  const deadline = Date.now() + 60_000;
  while (Date.now() < deadline) {
    try {
      const health = await client.health();
      if (health.ok) return;
    } catch {
      await new Promise((r) => setTimeout(r, 200));
    }
  }
  throw new Error(`service did not come up on ${baseUrl}`);
}

beforeAll(async () => {
  const journal = join(mkdtempSync(join(tmpdir(), "pcm-")), "journal.jsonl");
  server = spawn(
    "python3",
    ["-m", "pcmcomplete.cli", "serve", "--port", String(port), "--journal", journal],
    { cwd: join(dirname(fileURLToPath(import.meta.url)), "..", ".."), stdio: "ignore" },
  );
  await waitForService();
});

afterAll(() => {
  server?.kill();
});

describe("order 3 elicitation", () => {
  it("fills the transitive entry and reports coincidence", async () => {
    const session = await client.createSession(3);
    await client.submitJudgment(session.id, 1, 2, 2);
    await client.submitJudgment(session.id, 2, 3, 3);

    const payload = await client.getCompletion(session.id, "both");
    expect(payload.connected).toBe(true);
    expect(payload.llsm!.filled).toHaveLength(1);
    const [i, j, value] = payload.llsm!.filled[0];
    expect([i, j]).toEqual([1, 3]);
    expect(value).toBeCloseTo(6, 6);
    expect(payload.comparison!.coincide).toBe(true);

    const html = renderView(buildViewModel(payload, null));
    expect(html).toContain("methods coincide");
    expect(html).toContain("6.0000");
  });

  it("suggests nothing once every pair is judged", async () => {
    const session = await client.createSession(3);
    await client.submitJudgment(session.id, 1, 2, 2);
    await client.submitJudgment(session.id, 2, 3, 3);
    await client.submitJudgment(session.id, 1, 3, 6);
    const { suggestion } = await client.getSuggestion(session.id);
    expect(suggestion).toBeNull();
  });
});

describe("order 5 divergence", () => {
  const judgments: [number, number, number][] = [
    [1, 2, 1 / 2], [1, 3, 5], [1, 4, 1 / 6],
    [2, 3, 4], [2, 4, 1 / 2], [2, 5, 1 / 6],
    [3, 4, 1 / 6], [3, 5, 1 / 7],
    [4, 5, 1 / 2],
  ];

  it("shows distinct fills 0.1705 and 0.1798 at (1,5)", async () => {
    const session = await client.createSession(5);
    for (const [i, j, v] of judgments) {
      await client.submitJudgment(session.id, i, j, v);
    }

    const payload = await client.getCompletion(session.id, "both");
    expect(payload.comparison!.coincide).toBe(false);
    expect(payload.comparison!.max_position).toEqual([1, 5]);
    expect(payload.llsm!.filled[0][2]).toBeCloseTo(0.1705, 3);
    expect(payload.ev!.filled[0][2]).toBeCloseTo(0.1798, 3);

    const html = renderView(buildViewModel(payload, null));
    expect(html).toContain("methods diverge");
    expect(html).toContain("0.1705");
    expect(html).toContain("0.1798");
  });
});

describe("disconnected and error states", () => {
  it("reports components until the graph is connected", async () => {
    const session = await client.createSession(4);
    await client.submitJudgment(session.id, 1, 2, 3);
    const payload = await client.getCompletion(session.id, "both");
    expect(payload.connected).toBe(false);

    const { suggestion } = await client.getSuggestion(session.id);
    expect(suggestion).not.toBeNull();
    // the suggested pair bridges two components
    const [i, j] = suggestion!;
    const inFirst = (k: number) => k === 1 || k === 2;
    expect(inFirst(i) !== inFirst(j)).toBe(true);

    const html = renderView(buildViewModel(payload, suggestion));
    expect(html).toContain("disconnected");
  });

  it("rejects bad judgments and unknown sessions", async () => {
    const session = await client.createSession(3);
    await expect(client.submitJudgment(session.id, 1, 1, 2)).rejects.toMatchObject({ status: 400 });
    await expect(client.submitJudgment(session.id, 1, 2, -4)).rejects.toMatchObject({ status: 400 });
    await expect(client.getSession("nope")).rejects.toMatchObject({ status: 404 });
  });

  it("removing a judgment restores the missing state", async () => {
    const session = await client.createSession(3);
    await client.submitJudgment(session.id, 1, 2, 2);
    await client.submitJudgment(session.id, 2, 3, 3);
    const after = await client.submitJudgment(session.id, 2, 3, null);
    expect(after.judgments).toHaveLength(1);
    expect(after.connected).toBe(false);
  });
});
