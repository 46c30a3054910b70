/**
 * View model for the transcript pane: what each row shows and which
 * one is under the cursor. Masked rows are stripped defensively even
 * though the service already sends them without text.
 */

import type { TranscriptView, UtteranceRow } from "./api.js";

export interface PaneRow {
  index: number;
  label: string;
  speaker: string | null;
  text: string | null;
  masked: boolean;
  current: boolean;
  coded: boolean;
}

export function paneRows(
  view: TranscriptView, codedLabels: Iterable<string>,
): PaneRow[] {
  const coded = new Set(codedLabels);
  return view.utterances.map((u: UtteranceRow) => ({
    index: u.index,
    label: u.label,
    speaker: u.masked ? null : u.speaker,
    text: u.masked ? null : u.text,
    masked: u.masked,
    current: u.index === view.cursor,
    coded: coded.has(u.label),
  }));
}

export function progress(view: TranscriptView): { done: number; total: number } {
  return { done: view.cursor, total: view.utterances.length };
}

export function finished(view: TranscriptView): boolean {
  return view.cursor >= view.utterances.length;
}

export function currentRow(rows: PaneRow[]): PaneRow | null {
  return rows.find((r) => r.current) ?? null;
}
