/**
 * Record form state and the pure transitions behind the UI buttons.
 *
 * The state is immutable; every transition returns a fresh object so
 * the DOM layer can re-render from scratch without bookkeeping.
 */

import type { Diagnostic, Suggestion } from "./api.js";
import {
  isQualifier,
  isValidValue,
  SLOTS,
  slotEndpoint,
} from "./vocab.js";
import type { Endpoint, FieldJson, RecordJson, SlotName } from "./vocab.js";

export interface FieldState {
  qualifiers: string[];
  value: string | null;
}

export interface RecordFormState {
  label: string;
  fields: Record<SlotName, FieldState>;
  diagnostics: Diagnostic[];
  suggestions: Suggestion[];
}

const NULL_FIELD: FieldState = { qualifiers: [], value: null };

export function emptyForm(label: string): RecordFormState {
  const fields = {} as Record<SlotName, FieldState>;
  for (const slot of SLOTS) fields[slot] = NULL_FIELD;
  return { label, fields, diagnostics: [], suggestions: [] };
}

export function withField(
  form: RecordFormState, slot: SlotName, field: FieldState,
): RecordFormState {
  return { ...form, fields: { ...form.fields, [slot]: field } };
}

export function withFeedback(
  form: RecordFormState, diagnostics: Diagnostic[], suggestions: Suggestion[],
): RecordFormState {
  return { ...form, diagnostics, suggestions };
}

/**
 * Build the JSON record the service expects. Throws on any token
 * outside the closed vocabularies; with dropdown-driven state that can
 * only mean a programming error, not a coder mistake.
 */
export function formToRecord(form: RecordFormState): RecordJson {
  const record = { Label: form.label } as RecordJson;
  for (const slot of SLOTS) {
    const { qualifiers, value } = form.fields[slot];
    for (const q of qualifiers) {
      if (!isQualifier(q)) throw new Error(`not a qualifier: ${q}`);
    }
    if (value !== null && !isValidValue(slot, value)) {
      throw new Error(`not a ${slot} value: ${value}`);
    }
    const field: FieldJson = { qualifiers: [...qualifiers], value };
    record[slot] = field;
  }
  return record;
}

export function formFromRecord(record: RecordJson): RecordFormState {
  const form = emptyForm(record.Label);
  for (const slot of SLOTS) {
    const field = record[slot];
    form.fields[slot] = {
      qualifiers: [...field.qualifiers],
      value: field.value,
    };
  }
  return form;
}

/** Set the suggested value and retire the accepted suggestion. */
export function applySuggestion(
  form: RecordFormState, suggestion: Suggestion,
): RecordFormState {
  const slot = suggestion.fieldPath;
  const next = withField(form, slot, {
    qualifiers: form.fields[slot].qualifiers,
    value: suggestion.proposedValue,
  });
  next.suggestions = form.suggestions.filter((s) => s !== suggestion);
  return next;
}

/** A calendar click fills weekday, month, and date of one endpoint. */
export function fillFromCalendar(
  form: RecordFormState, endpoint: Endpoint,
  weekday: string, month: string, date: string,
): RecordFormState {
  let next = form;
  const values: [SlotName, string][] = [
    [`${endpoint}WeekDay`, weekday],
    [`${endpoint}Month`, month],
    [`${endpoint}Date`, date],
  ];
  for (const [slot, value] of values) {
    next = withField(next, slot, {
      qualifiers: next.fields[slot].qualifiers,
      value,
    });
  }
  return next;
}

export function slotsOf(endpoint: Endpoint): SlotName[] {
  return SLOTS.filter((s) => slotEndpoint(s) === endpoint);
}

const LABEL_PATTERN = /^([0-9]+[a-z]*)(?:_(alt|and)([1-9][0-9]*))?$/;

export interface LabelParts {
  base: string;
  kind: "alt" | "and" | null;
  index: number | null;
}

export function splitLabel(label: string): LabelParts | null {
  const m = LABEL_PATTERN.exec(label);
  if (!m) return null;
  return {
    base: m[1],
    kind: (m[2] as "alt" | "and" | undefined) ?? null,
    index: m[3] ? Number(m[3]) : null,
  };
}

/**
 * Label for the next alternative ("or") or conjunct ("and") record of
 * a base utterance: one past the highest suffix already taken.
 */
export function conjunctLabel(
  base: string, kind: "alt" | "and", taken: Iterable<string>,
): string {
  let highest = 0;
  for (const label of taken) {
    const parts = splitLabel(label);
    if (parts && parts.base === base && parts.kind === kind) {
      highest = Math.max(highest, parts.index ?? 0);
    }
  }
  return `${base}_${kind}${highest + 1}`;
}

export function hasErrors(diagnostics: Diagnostic[]): boolean {
  return diagnostics.some((d) => d.severity === "error");
}
