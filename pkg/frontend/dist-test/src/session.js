/** Pure session-state logic: composing lines, accepting suggestions,
 * building feedback records, export/import. No DOM, no network. */
export function randomSessionId() {
    const bytes = new Uint8Array(12);
    crypto.getRandomValues(bytes);
    return Array.from(bytes, (b) => b.toString(16).padStart(2, "0")).join("");
}
export function newSession(sessionId) {
    return {
        sessionId: sessionId ?? randomSessionId(),
        lines: [],
        pending: null,
        keywords: [],
        includeNn5: false,
    };
}
export function contextTexts(state) {
    return state.lines.map((l) => l.text);
}
export function canRequestSuggestions(state) {
    return state.lines.length >= 1;
}
/** Append a line the user wrote. Empty input is rejected client-side. */
export function addOwnLine(state, text) {
    const trimmed = text.trim();
    if (!trimmed) {
        throw new Error("empty line");
    }
    const line = {
        text: trimmed,
        origin: "human",
        artist: "you",
        title: "",
        score: null,
    };
    // A new line invalidates whatever suggestions were pending.
    return { ...state, lines: [...state.lines, line], pending: null };
}
export function setPending(state, requestId, items) {
    const pending = { requestId, items };
    return { ...state, pending };
}
/** Drop pending suggestions without selecting (no feedback is sent). */
export function dismissSuggestions(state) {
    return { ...state, pending: null };
}
/** Replace a previously composed line; stale suggestions are dropped. */
export function editLine(state, index, text) {
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
/** Accept the suggestion at a display position. Returns the new state
 * and the one feedback record the caller must POST. */
export function acceptSuggestion(state, displayIndex, timestamp) {
    if (!state.pending) {
        throw new Error("no pending suggestions");
    }
    const items = state.pending.items;
    if (displayIndex < 0 || displayIndex >= items.length) {
        throw new Error("selection out of range");
    }
    const picked = items[displayIndex];
    const feedback = {
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
    const line = {
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
export function extractPairs(record) {
    const chosen = record.shown[record.selected_index];
    const pairs = [];
    for (let i = 0; i < record.selected_index; i++) {
        pairs.push({ preferred: chosen.line_id, rejected: record.shown[i].line_id });
    }
    return pairs;
}
export function setKeywords(state, keywords) {
    const cleaned = keywords.map((k) => k.trim().toLowerCase()).filter(Boolean);
    return { ...state, keywords: cleaned };
}
/** Append machine lines returned by the generate endpoint. */
export function addGeneratedLines(state, generated) {
    const lines = generated.map((g) => ({
        text: g.text,
        origin: "machine",
        artist: g.artist,
        title: g.title,
        score: Number.isFinite(g.score) ? g.score : null,
    }));
    return { ...state, lines: [...state.lines, ...lines], pending: null };
}
export function setIncludeNn5(state, enabled) {
    return { ...state, includeNn5: enabled };
}
export function tierOf(state) {
    return state.includeNn5 ? "FastFeatsNN5" : "FastFeats";
}
// ---------------------------------------------------------------------------
// Export / import. The JSON carries the whole session state; its
// `lines` array matches the service's generate format plus origin tags.
// ---------------------------------------------------------------------------
export function exportText(state) {
    return state.lines.map((l) => l.text).join("\n") + "\n";
}
export function exportJson(state) {
    return JSON.stringify({
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
    }, null, 2);
}
export function importJson(payload) {
    const data = JSON.parse(payload);
    if (data.version !== 1 || typeof data.session_id !== "string"
        || !Array.isArray(data.lines)) {
        throw new Error("not a versecraft session export");
    }
    const lines = data.lines.map((l) => {
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
