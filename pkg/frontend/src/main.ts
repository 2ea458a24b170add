/* Browser entry: wires the matrix grid to the session service.
 *
 * Every edit awaits the service round-trip before re-rendering; the grid
 * state after an edit always equals a fresh GET of the session. */

import { Client, parseJudgment, Position } from "./api.js";
import { buildViewModel } from "./viewmodel.js";
import { renderView } from "./render.js";

const serviceUrl = (window as any).PCM_SERVICE_URL ?? "http://127.0.0.1:8000";
const client = new Client(serviceUrl);

let sessionId: string | null = null;

async function refresh(): Promise<void> {
  const root = document.getElementById("app")!;
  if (!sessionId) return;
  try {
    const payload = await client.getCompletion(sessionId, "both");
    let suggestion: Position | null = null;
    try {
      suggestion = (await client.getSuggestion(sessionId)).suggestion;
    } catch {
      suggestion = null;
    }
    root.innerHTML = renderView(buildViewModel(payload, suggestion));
    attachEditors(root);
  } catch (err) {
    root.innerHTML = `<div class="banner error">service error: ${String(err)}</div>`;
  }
}

function attachEditors(root: HTMLElement): void {
  for (const input of Array.from(root.querySelectorAll<HTMLInputElement>("input.judgment"))) {
    input.addEventListener("change", async () => {
      const i = Number(input.dataset.i);
      const j = Number(input.dataset.j);
      const [ui, uj] = i < j ? [i, j] : [j, i];
      const raw = input.value.trim();
      if (raw === "") {
        await client.submitJudgment(sessionId!, ui, uj, null);
        await refresh();
        return;
      }
      let value = parseJudgment(raw);
      if (value === null) {
        input.classList.add("invalid"); // no request for non-positive input
        return;
      }
      input.classList.remove("invalid");
      if (i > j) value = 1 / value; // grid edits below the diagonal
      await client.submitJudgment(sessionId!, ui, uj, value);
      await refresh();
    });
  }
}

async function start(): Promise<void> {
  const orderInput = document.getElementById("order") as HTMLInputElement;
  const order = Number(orderInput.value);
  const session = await client.createSession(order);
  sessionId = session.id;
  await refresh();
}

document.getElementById("start")?.addEventListener("click", () => void start());
