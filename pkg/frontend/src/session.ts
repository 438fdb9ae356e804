/** Pure session-state logic: composing lines, accepting suggestions,
 * building feedback records, export/import. No DOM, no network. */

import type {
  ComposedLine,
  FeedbackRecord,
  PairwisePreference,
  PendingSuggestions,
  SessionState,
  Suggestion,
} from "./types.js";

export function randomSessionId(): string {
  const bytes = new Uint8Array(12);
  crypto.getRandomValues(bytes);
  return Array.from(bytes, (b) => b.toString(16).padStart(2, "0")).join("");
}

export function newSession(sessionId?: string): SessionState {
  return {
    sessionId: sessionId ?? randomSessionId(),
    lines: [],
    pending: null,
    keywords: [],
    includeNn5: false,
  };
}

export function contextTexts(state: SessionState): string[] {
  return state.lines.map((l) => l.text);
}

export function canRequestSuggestions(state: SessionState): boolean {
  return state.lines.length >= 1;
}

/** Append a line the user wrote. Empty input is rejected client-side. */
export function addOwnLine(state: SessionState, text: string): SessionState {
  const trimmed = text.trim();
  if (!trimmed) {
    throw new Error("empty line");
  }
  const line: ComposedLine = {
    text: trimmed,
    origin: "human",
    artist: "you",
    title: "",
    score: null,
  };
  // A new line invalidates whatever suggestions were pending.
  return { ...state, lines: [...state.lines, line], pending: null };
}

export function setPending(
  state: SessionState,
  requestId: string,
  items: Suggestion[],
): SessionState {
  const pending: PendingSuggestions = { requestId, items };
  return { ...state, pending };
}

/** Drop pending suggestions without selecting (no feedback is sent). */
export function dismissSuggestions(state: SessionState): SessionState {
  return { ...state, pending: null };
}

/** Replace a previously composed line; stale suggestions are dropped. */
export function editLine(
  state: SessionState,
  index: number,
  text: string,
): SessionState {
  const trimmed = text.trim();
  if (!trimmed) {
    throw new Error("empty line");
  }
  if (index < 0 || index >= state.lines.length) {
    throw new Error("no such line");
  }
  const lines = state.lines.slice();
  lines[index] = { ...lines[index], text: trimmed };
  return { ...state, lines, pending: null };
}

export interface AcceptResult {
  state: SessionState;
  feedback: FeedbackRecord;
}

/** Accept the suggestion at a display position. Returns the new state
 * and the one feedback record the caller must POST. */
export function acceptSuggestion(
  state: SessionState,
  displayIndex: number,
  timestamp: number,
): AcceptResult {
  if (!state.pending) {
    throw new Error("no pending suggestions");
  }
  const items = state.pending.items;
  if (displayIndex < 0 || displayIndex >= items.length) {
    throw new Error("selection out of range");
  }
  const picked = items[displayIndex];
  const feedback: FeedbackRecord = {
    session_id: state.sessionId,
    timestamp,
    context: contextTexts(state),
    shown: items.map((s) => ({
      line_id: s.line_id,
      score: s.score,
      rank: s.rank,
    })),
    selected_index: displayIndex,
  };
  const line: ComposedLine = {
    text: picked.line,
    origin: "machine",
    artist: picked.artist,
    title: picked.title,
    score: picked.score,
  };
  return {
    state: { ...state, lines: [...state.lines, line], pending: null },
    feedback,
  };
}

/** The preferences a logged selection implies: the chosen line beats
 * every line displayed above it (lines below are not judged). */
export function extractPairs(record: FeedbackRecord): PairwisePreference[] {
  const chosen = record.shown[record.selected_index];
  const pairs: PairwisePreference[] = [];
  for (let i = 0; i < record.selected_index; i++) {
    pairs.push({ preferred: chosen.line_id, rejected: record.shown[i].line_id });
  }
  return pairs;
}

export function setKeywords(
  state: SessionState,
  keywords: string[],
): SessionState {
  const cleaned = keywords.map((k) => k.trim().toLowerCase()).filter(Boolean);
  return { ...state, keywords: cleaned };
}

/** Append machine lines returned by the generate endpoint. */
export function addGeneratedLines(
  state: SessionState,
  generated: { text: string; artist: string; title: string;
               score: number }[],
): SessionState {
  const lines: ComposedLine[] = generated.map((g) => ({
    text: g.text,
    origin: "machine",
    artist: g.artist,
    title: g.title,
    score: Number.isFinite(g.score) ? g.score : null,
  }));
  return { ...state, lines: [...state.lines, ...lines], pending: null };
}

export function setIncludeNn5(
  state: SessionState,
  enabled: boolean,
): SessionState {
  return { ...state, includeNn5: enabled };
}

export function tierOf(state: SessionState): string {
  return state.includeNn5 ? "FastFeatsNN5" : "FastFeats";
}

// ---------------------------------------------------------------------------
// Export / import. The JSON carries the whole session state; its
// `lines` array matches the service's generate format plus origin tags.
// ---------------------------------------------------------------------------

export function exportText(state: SessionState): string {
  return state.lines.map((l) => l.text).join("\n") + "\n";
}

export function exportJson(state: SessionState): string {
  return JSON.stringify(
    {
      version: 1,
      session_id: state.sessionId,
      lines: state.lines.map((l) => ({
        text: l.text,
        artist: l.artist,
        title: l.title,
        score: l.score,
        origin: l.origin,
      })),
      pending: state.pending,
      keywords: state.keywords,
      include_nn5: state.includeNn5,
    },
    null,
    2,
  );
}

export function importJson(payload: string): SessionState {
  const data = JSON.parse(payload);
  if (data.version !== 1 || typeof data.session_id !== "string"
      || !Array.isArray(data.lines)) {
    throw new Error("not a versecraft session export");
  }
  const lines: ComposedLine[] = data.lines.map((l: ComposedLine) => {
    if (typeof l.text !== "string" || !l.text) {
      throw new Error("malformed line in export");
    }
    return {
      text: l.text,
      origin: l.origin === "human" ? "human" : "machine",
      artist: String(l.artist ?? ""),
      title: String(l.title ?? ""),
      score: l.score === null ? null : Number(l.score),
    };
  });
  return {
    sessionId: data.session_id,
    lines,
    pending: data.pending ?? null,
    keywords: Array.isArray(data.keywords) ? data.keywords.map(String) : [],
    includeNn5: Boolean(data.include_nn5),
  };
}
