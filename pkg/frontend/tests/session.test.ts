import assert from "node:assert/strict";
import { test } from "node:test";

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
  extractPairs,
  importJson,
  newSession,
  setIncludeNn5,
  setKeywords,
  setPending,
  tierOf,
} from "../src/session.js";
import type { Suggestion } from "../src/types.js";

function suggestion(id: number, rank: number): Suggestion {
  return {
    line: `candidate line ${id}`,
    artist: `artist ${id}`,
    title: `title ${id}`,
    score: 10 - rank,
    rank,
    line_id: id,
  };
}

function suggestions(n: number): Suggestion[] {
  // display order deliberately differs from rank order
  return Array.from({ length: n }, (_, i) => suggestion(100 + i, n - i));
}

test("new sessions have distinct ids and empty state", () => {
  const a = newSession();
  const b = newSession();
  assert.notEqual(a.sessionId, b.sessionId);
  assert.deepEqual(a.lines, []);
  assert.equal(a.pending, null);
  assert.equal(canRequestSuggestions(a), false);
});

test("addOwnLine appends a human line and enables suggestions", () => {
  const state = addOwnLine(newSession("s"), "  my opening line  ");
  assert.equal(state.lines.length, 1);
  assert.equal(state.lines[0].text, "my opening line");
  assert.equal(state.lines[0].origin, "human");
  assert.equal(canRequestSuggestions(state), true);
});

test("empty own lines are rejected client-side", () => {
  assert.throws(() => addOwnLine(newSession("s"), "   "));
});

test("alternating human and machine lines keep origin tags", () => {
  let state = addOwnLine(newSession("s"), "line one by me");
  for (let round = 0; round < 4; round++) {
    state = setPending(state, `r${round}`, suggestions(20));
    const result = acceptSuggestion(state, 3, 1000 + round);
    state = addOwnLine(result.state, `line ${round} by me again`);
  }
  const origins = state.lines.map((l) => l.origin);
  assert.deepEqual(
    origins,
    ["human", "machine", "human", "machine", "human",
     "machine", "human", "machine", "human"],
  );
});

test("accepting a suggestion builds exactly one feedback record", () => {
  let state = addOwnLine(newSession("sess"), "context line");
  state = setPending(state, "req1", suggestions(20));
  const { state: next, feedback } = acceptSuggestion(state, 4, 123.5);
  assert.equal(feedback.session_id, "sess");
  assert.equal(feedback.timestamp, 123.5);
  assert.deepEqual(feedback.context, ["context line"]);
  assert.equal(feedback.shown.length, 20);
  assert.equal(feedback.selected_index, 4);
  // display order is preserved in the record
  assert.deepEqual(
    feedback.shown.map((s) => s.line_id),
    state.pending!.items.map((s) => s.line_id),
  );
  assert.equal(next.pending, null);
  assert.equal(next.lines.at(-1)!.origin, "machine");
  assert.equal(next.lines.at(-1)!.text, "candidate line 104");
});

test("selection at display position i yields i-1 extractable pairs", () => {
  let state = addOwnLine(newSession("s"), "context");
  state = setPending(state, "r", suggestions(20));
  for (const displayIndex of [0, 1, 4, 19]) {
    const { feedback } = acceptSuggestion(state, displayIndex, 1);
    const pairs = extractPairs(feedback);
    // 0-based displayIndex is display position i = displayIndex + 1
    assert.equal(pairs.length, displayIndex);
    const chosen = feedback.shown[displayIndex].line_id;
    for (let j = 0; j < pairs.length; j++) {
      assert.equal(pairs[j].preferred, chosen);
      assert.equal(pairs[j].rejected, feedback.shown[j].line_id);
    }
  }
});

test("selection at the top of the list yields no pairs", () => {
  let state = addOwnLine(newSession("s"), "context");
  state = setPending(state, "r", suggestions(5));
  const { feedback } = acceptSuggestion(state, 0, 1);
  assert.deepEqual(extractPairs(feedback), []);
});

test("dismissing suggestions produces no feedback record", () => {
  let state = addOwnLine(newSession("s"), "context");
  state = setPending(state, "r", suggestions(5));
  const next = dismissSuggestions(state);
  assert.equal(next.pending, null);
  assert.equal(next.lines.length, 1);
});

test("editing a prior line invalidates pending suggestions", () => {
  let state = addOwnLine(newSession("s"), "first draft");
  state = setPending(state, "r", suggestions(5));
  const next = editLine(state, 0, "second draft");
  assert.equal(next.pending, null);
  assert.equal(next.lines[0].text, "second draft");
});

test("adding a line also invalidates pending suggestions", () => {
  let state = addOwnLine(newSession("s"), "one");
  state = setPending(state, "r", suggestions(5));
  assert.equal(addOwnLine(state, "two").pending, null);
});

test("tier follows the nn5 toggle", () => {
  const state = newSession("s");
  assert.equal(tierOf(state), "FastFeats");
  assert.equal(tierOf(setIncludeNn5(state, true)), "FastFeatsNN5");
});

test("keywords are trimmed and lowercased", () => {
  const state = setKeywords(newSession("s"), [" Galaxy ", "", "HARBOR"]);
  assert.deepEqual(state.keywords, ["galaxy", "harbor"]);
});

test("export/import round-trip preserves the whole session", () => {
  let state = addOwnLine(newSession("round-trip"), "a line of mine");
  state = setPending(state, "req9", suggestions(20));
  state = acceptSuggestion(state, 2, 7).state;
  state = setKeywords(state, ["galaxy"]);
  state = setIncludeNn5(state, true);
  state = setPending(state, "req10", suggestions(3));
  const restored = importJson(exportJson(state));
  assert.deepEqual(restored, state);
});

test("sixteen-line session exports sixteen lines", () => {
  let state = addOwnLine(newSession("s"), "line 0");
  for (let i = 1; i < 16; i++) {
    state = setPending(state, `r${i}`, suggestions(20));
    state = acceptSuggestion(state, i % 20, i).state;
  }
  assert.equal(state.lines.length, 16);
  assert.equal(exportText(state).trim().split("\n").length, 16);
  const exported = JSON.parse(exportJson(state));
  assert.equal(exported.lines.length, 16);
  // machine lines carry their source attribution
  for (const line of exported.lines.slice(1)) {
    assert.equal(line.origin, "machine");
    assert.match(line.artist, /^artist /);
    assert.match(line.title, /^title /);
  }
});

test("context for the next request ends with the latest line", () => {
  let state = addOwnLine(newSession("s"), "first");
  state = setPending(state, "r", suggestions(4));
  state = acceptSuggestion(state, 1, 1).state;
  state = addOwnLine(state, "third");
  assert.deepEqual(contextTexts(state).at(-1), "third");
  assert.equal(contextTexts(state).length, 3);
});

test("import rejects foreign payloads", () => {
  assert.throws(() => importJson("{}"));
  assert.throws(() => importJson('{"version": 2, "session_id": "x"}'));
  assert.throws(() => importJson("not json"));
});

test("generated lines append as attributed machine lines", () => {
  let state = addOwnLine(newSession("s"), "my seed line");
  state = setPending(state, "r", suggestions(3));
  state = addGeneratedLines(state, [
    { text: "gen one", artist: "a1", title: "t1", score: 1.5 },
    { text: "gen two", artist: "a2", title: "t2", score: NaN },
  ]);
  assert.equal(state.pending, null);
  assert.deepEqual(
    state.lines.map((l) => l.origin),
    ["human", "machine", "machine"],
  );
  assert.equal(state.lines[1].artist, "a1");
  assert.equal(state.lines[2].score, null); // fallback picks have no score
  const restored = importJson(exportJson(state));
  assert.deepEqual(restored, state);
});
