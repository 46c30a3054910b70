/**
 * Typed client for the annotation service. Everything the UI knows
 * about the backend goes through this module, so the no-look-ahead
 * rule only needs checking here: the only utterance endpoint used is
 * the masked transcript view.
 */

import type { RecordJson, SlotName } from "./vocab.js";

export interface SessionSummary {
  sessionId: string;
  dialogDate: string;
  cursor: number;
  utteranceCount: number;
  recordCount: number;
  allowRevisit: boolean;
}

export interface UtteranceRow {
  index: number;
  label: string;
  masked: boolean;
  speaker: string | null;
  text: string | null;
}

export interface TranscriptView {
  dialogDate: string;
  cursor: number;
  utterances: UtteranceRow[];
}

export interface Diagnostic {
  code: string;
  severity: "error" | "warning";
  message: string;
  label: string | null;
  fieldPath: string | null;
}

export interface Suggestion {
  fieldPath: SlotName;
  proposedValue: string;
  rule: string;
  confidence: "forced" | "contextual";
}

export interface PutRecordResponse {
  record: RecordJson;
  diagnostics: Diagnostic[];
  suggestions: Suggestion[];
}

export interface GetRecordResponse {
  record: RecordJson;
  diagnostics: Diagnostic[];
}

export interface MonthPayload {
  year: number;
  month: string;
  title: string;
  weekdays: string[];
  weeks: (number | null)[][];
  lines: string[];
}

export interface HelpCard {
  id: string;
  title: string;
  body: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly diagnostics: Diagnostic[] = [],
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function toApiError(response: Response): Promise<ApiError> {
  let message = `${response.status} ${response.statusText}`;
  let diagnostics: Diagnostic[] = [];
  try {
    const body = await response.json();
    if (typeof body.error === "string") message = body.error;
    if (Array.isArray(body.diagnostics)) diagnostics = body.diagnostics;
  } catch {
    // non-JSON error body; the status line will have to do
  }
  return new ApiError(response.status, message, diagnostics);
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) throw await toApiError(response);
    return (await response.json()) as T;
  }

  createSession(transcript: unknown): Promise<SessionSummary> {
    return this.json("/session", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(transcript),
    });
  }

  session(id: string): Promise<SessionSummary> {
    return this.json(`/session/${encodeURIComponent(id)}`);
  }

  transcript(id: string): Promise<TranscriptView> {
    return this.json(`/session/${encodeURIComponent(id)}/transcript`);
  }

  records(id: string): Promise<{ records: RecordJson[] }> {
    return this.json(`/session/${encodeURIComponent(id)}/records`);
  }

  getRecord(id: string, label: string): Promise<GetRecordResponse> {
    return this.json(
      `/session/${encodeURIComponent(id)}/record/${encodeURIComponent(label)}`);
  }

  putRecord(id: string, label: string, record: RecordJson): Promise<PutRecordResponse> {
    return this.json(
      `/session/${encodeURIComponent(id)}/record/${encodeURIComponent(label)}`, {
        method: "PUT",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(record),
      });
  }

  advance(id: string): Promise<{ cursor: number }> {
    return this.json(`/session/${encodeURIComponent(id)}/advance`,
                     { method: "POST" });
  }

  async exportText(id: string): Promise<string> {
    const response = await fetch(
      `${this.base}/session/${encodeURIComponent(id)}/export`);
    if (!response.ok) throw await toApiError(response);
    return response.text();
  }

  calendarMonth(year: number, month: string | number): Promise<MonthPayload> {
    return this.json(`/calendar/${year}/${month}`);
  }

  helpCards(): Promise<{ cards: HelpCard[] }> {
    return this.json("/help");
  }
}
