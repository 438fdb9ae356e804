/** Shared types mirroring the versecraft HTTP API wire format. */

export type Origin = "human" | "machine";

export interface Suggestion {
  line: string;
  artist: string;
  title: string;
  score: number;
  rank: number;
  line_id: number;
}

export interface SuggestResponse {
  request_id: string;
  suggestions: Suggestion[];
}

export interface ComposedLine {
  text: string;
  origin: Origin;
  artist: string;
  title: string;
  score: number | null;
}

/** Suggestions currently on screen, in server-given display order. */
export interface PendingSuggestions {
  requestId: string;
  items: Suggestion[];
}

export interface SessionState {
  sessionId: string;
  lines: ComposedLine[];
  pending: PendingSuggestions | null;
  keywords: string[];
  includeNn5: boolean;
}

export interface ShownLine {
  line_id: number;
  score: number;
  rank: number;
}

export interface FeedbackRecord {
  session_id: string;
  timestamp: number;
  context: string[];
  shown: ShownLine[];
  selected_index: number;
}

export interface PairwisePreference {
  preferred: number;
  rejected: number;
}

export interface GenerateResponseLine {
  text: string;
  artist: string;
  title: string;
  score: number;
}
