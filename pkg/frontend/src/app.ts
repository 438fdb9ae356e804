/** DOM wiring: renders the session, talks to the API, persists the
 * session in localStorage. Suggestions render in server-given order and
 * are never re-sorted client-side. */

import { ApiClient, ApiError } from "./api.js";
import {
  acceptSuggestion,
  addGeneratedLines,
  addOwnLine,
  canRequestSuggestions,
  contextTexts,
  dismissSuggestions,
  editLine,
  exportJson,
  exportText,
  importJson,
  newSession,
  setIncludeNn5,
  setKeywords,
  setPending,
  tierOf,
} from "./session.js";
import type { SessionState } from "./types.js";

const STORAGE_KEY = "versecraft-session";

const api = new ApiClient("");
let state: SessionState = restore();
let showScores = false;
let suggestBusy = false;

function restore(): SessionState {
  try {
    const raw = localStorage.getItem(STORAGE_KEY);
    if (raw) {
      return importJson(raw);
    }
  } catch {
    // fall through to a fresh session
  }
  return newSession();
}

function persist() {
  localStorage.setItem(STORAGE_KEY, exportJson(state));
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function setState(next: SessionState) {
  state = next;
  persist();
  render();
}

function banner(message: string) {
  const box = el<HTMLDivElement>("banner");
  box.textContent = message;
  box.hidden = !message;
}

function render() {
  banner("");
  const list = el<HTMLOListElement>("lines");
  list.replaceChildren();
  state.lines.forEach((line, index) => {
    const item = document.createElement("li");
    item.className = `line ${line.origin}`;
    const text = document.createElement("span");
    text.textContent = line.text;
    item.appendChild(text);
    const credit = document.createElement("span");
    credit.className = "credit";
    credit.textContent =
      line.origin === "machine"
        ? ` (${line.artist} - ${line.title})`
        : " (you)";
    item.appendChild(credit);
    const edit = document.createElement("button");
    edit.textContent = "edit";
    edit.addEventListener("click", () => {
      const replacement = window.prompt("Edit line", line.text);
      if (replacement && replacement.trim()) {
        setState(editLine(state, index, replacement));
      }
    });
    item.appendChild(edit);
    list.appendChild(item);
  });

  const suggestions = el<HTMLOListElement>("suggestions");
  suggestions.replaceChildren();
  el<HTMLDivElement>("suggestion-panel").hidden = state.pending === null;
  if (state.pending) {
    state.pending.items.forEach((s, displayIndex) => {
      const item = document.createElement("li");
      const pick = document.createElement("button");
      pick.className = "pick";
      pick.textContent = s.line;
      pick.addEventListener("click", () => onSelect(displayIndex));
      item.appendChild(pick);
      if (showScores) {
        const score = document.createElement("span");
        score.className = "score";
        score.textContent = ` ${s.score.toFixed(2)}`;
        item.appendChild(score);
      }
      suggestions.appendChild(item);
    });
  }

  el<HTMLButtonElement>("suggest").disabled =
    suggestBusy || !canRequestSuggestions(state);
  el<HTMLInputElement>("nn5-toggle").checked = state.includeNn5;
  el<HTMLInputElement>("keywords").value = state.keywords.join(", ");
}

async function onSuggest() {
  suggestBusy = true;
  render();
  try {
    const resp = await api.suggest(contextTexts(state), tierOf(state));
    setState(setPending(state, resp.request_id, resp.suggestions));
  } catch (err) {
    if ((err as Error).name !== "AbortError") {
      banner(
        err instanceof ApiError
          ? `service error: ${err.message}`
          : "service unreachable",
      );
    }
  } finally {
    suggestBusy = false;
    render();
  }
}

async function onSelect(displayIndex: number) {
  const { state: next, feedback } = acceptSuggestion(
    state,
    displayIndex,
    Date.now() / 1000,
  );
  setState(next);
  try {
    await api.sendFeedback(feedback);
  } catch {
    banner("feedback could not be logged");
  }
}

function onAddOwnLine() {
  const input = el<HTMLInputElement>("own-line");
  try {
    setState(addOwnLine(state, input.value));
    input.value = "";
  } catch {
    banner("write something first");
  }
}

async function onGenerateRest() {
  const count = Number(el<HTMLInputElement>("generate-count").value) || 8;
  const hasSeed = state.lines.length > 0;
  try {
    const resp = await api.generate({
      seed_line: hasSeed ? state.lines.at(-1)!.text : undefined,
      // with a seed, the first returned line echoes it
      num_lines: hasSeed ? count + 1 : count,
      keywords: state.keywords,
      tier: tierOf(state),
    });
    const fresh = hasSeed ? resp.lines.slice(1) : resp.lines;
    setState(addGeneratedLines(state, fresh));
  } catch (err) {
    banner(
      err instanceof ApiError
        ? `service error: ${err.message}`
        : "service unreachable",
    );
  }
}

function download(filename: string, payload: string, type: string) {
  const blob = new Blob([payload], { type });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}

function wire() {
  el<HTMLButtonElement>("suggest").addEventListener("click", onSuggest);
  el<HTMLButtonElement>("dismiss").addEventListener("click", () =>
    setState(dismissSuggestions(state)),
  );
  el<HTMLButtonElement>("add-line").addEventListener("click", onAddOwnLine);
  el<HTMLButtonElement>("generate-rest").addEventListener(
    "click",
    onGenerateRest,
  );
  el<HTMLInputElement>("own-line").addEventListener("keydown", (ev) => {
    if (ev.key === "Enter") {
      onAddOwnLine();
    }
  });
  el<HTMLInputElement>("show-scores").addEventListener("change", (ev) => {
    showScores = (ev.target as HTMLInputElement).checked;
    render();
  });
  el<HTMLInputElement>("nn5-toggle").addEventListener("change", (ev) =>
    setState(setIncludeNn5(state, (ev.target as HTMLInputElement).checked)),
  );
  el<HTMLInputElement>("keywords").addEventListener("change", (ev) =>
    setState(
      setKeywords(state, (ev.target as HTMLInputElement).value.split(",")),
    ),
  );
  el<HTMLButtonElement>("export-text").addEventListener("click", () =>
    download("verse.txt", exportText(state), "text/plain"),
  );
  el<HTMLButtonElement>("export-json").addEventListener("click", () =>
    download("session.json", exportJson(state), "application/json"),
  );
  el<HTMLInputElement>("import-json").addEventListener("change", async (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (!file) {
      return;
    }
    try {
      setState(importJson(await file.text()));
    } catch {
      banner("that file is not a session export");
    }
  });
  el<HTMLButtonElement>("new-session").addEventListener("click", () =>
    setState(newSession()),
  );

  api
    .health()
    .then(() => banner(""))
    .catch(() => banner("service unreachable"));
  render();
}

wire();
