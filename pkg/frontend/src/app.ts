/**
 * DOM wiring for the annotation page: transcript on the left, the
 * record form in the middle, calendar and help cards on the right.
 * All state lives in one object; every change re-renders the page
 * from it.
 */

import { ApiClient, ApiError } from "./api.js";
import type {
  Diagnostic,
  HelpCard,
  MonthPayload,
  SessionSummary,
  Suggestion,
  TranscriptView,
} from "./api.js";
import { fillForDay, isDialogDay, monthNumber } from "./calendar.js";
import {
  applySuggestion,
  conjunctLabel,
  emptyForm,
  fillFromCalendar,
  formFromRecord,
  formToRecord,
  hasErrors,
  splitLabel,
  withFeedback,
  withField,
} from "./form.js";
import type { RecordFormState } from "./form.js";
import { currentRow, finished, paneRows, progress } from "./transcript.js";
import { QUALIFIERS, SLOTS, slotEndpoint, valueChoices } from "./vocab.js";
import type { Endpoint, RecordJson, SlotName } from "./vocab.js";

interface AppState {
  client: ApiClient;
  summary: SessionSummary | null;
  view: TranscriptView | null;
  records: RecordJson[];
  form: RecordFormState | null;
  focused: Endpoint;
  calendar: MonthPayload | null;
  cards: HelpCard[];
  showNegotiated: boolean;
  banner: string | null;
  exportText: string | null;
  exportBlocked: Diagnostic[] | null;
}

const state: AppState = {
  client: new ApiClient(""),
  summary: null,
  view: null,
  records: [],
  form: null,
  focused: "S",
  calendar: null,
  cards: [],
  showNegotiated: false,
  banner: null,
  exportText: null,
  exportBlocked: null,
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  if (err instanceof Error) return `service unreachable: ${err.message}`;
  return String(err);
}

async function guarded(work: () => Promise<void>): Promise<void> {
  try {
    await work();
    state.banner = null;
  } catch (err) {
    state.banner = describeError(err);
  }
  render();
}

async function refresh(): Promise<void> {
  const id = state.summary?.sessionId;
  if (!id) return;
  state.summary = await state.client.session(id);
  state.view = await state.client.transcript(id);
  state.records = (await state.client.records(id)).records;
  const row = currentRow(paneRows(state.view, []));
  if (row && state.form?.label !== row.label) {
    const existing = state.records.find((r) => r.Label === row.label);
    state.form = existing ? formFromRecord(existing) : emptyForm(row.label);
  }
  if (!row && finished(state.view)) state.form = null;
}

async function openSession(id: string): Promise<void> {
  state.summary = await state.client.session(id);
  const [year, month] = state.summary.dialogDate.split("-").map(Number);
  state.calendar = await state.client.calendarMonth(year, month);
  state.cards = (await state.client.helpCards()).cards;
  await refresh();
  window.location.hash = `session=${id}`;
}

async function submitForm(): Promise<void> {
  if (!state.form || !state.summary) return;
  const record = formToRecord(state.form);
  const response = await state.client.putRecord(
    state.summary.sessionId, state.form.label, record);
  state.form = withFeedback(state.form, response.diagnostics,
                            response.suggestions);
  state.records = (await state.client.records(state.summary.sessionId)).records;
}

async function acceptForced(suggestion: Suggestion): Promise<void> {
  if (!state.form) return;
  state.form = applySuggestion(state.form, suggestion);
  await submitForm();
}

// ---------------------------------------------------------------- rendering

function renderBanner(root: HTMLElement): void {
  if (!state.banner) return;
  const banner = el("div", "banner", state.banner);
  const retry = el("button", "", "retry");
  retry.addEventListener("click", () => guarded(refresh));
  banner.append(" ", retry);
  root.append(banner);
}

function renderConnect(root: HTMLElement): void {
  const pane = el("section", "connect");
  pane.append(el("h2", "", "open a session"));
  const idInput = el("input");
  idInput.placeholder = "session id";
  const openButton = el("button", "", "open");
  openButton.addEventListener("click", () =>
    guarded(() => openSession(idInput.value.trim())));
  const row = el("div", "row");
  row.append(idInput, openButton);
  pane.append(row);

  pane.append(el("h2", "", "or start one from a transcript"));
  const area = el("textarea");
  area.placeholder = '{"dialogDate": "1993-03-05", "utterances": [...]}';
  const startButton = el("button", "", "create session");
  startButton.addEventListener("click", () => guarded(async () => {
    const summary = await state.client.createSession(JSON.parse(area.value));
    await openSession(summary.sessionId);
  }));
  pane.append(area, startButton);
  root.append(pane);
}

function recordSummary(record: RecordJson): string {
  const parts: string[] = [];
  for (const slot of SLOTS) {
    const f = record[slot];
    if (f.value !== null || f.qualifiers.length > 0) {
      const value = [...f.qualifiers, f.value ?? "null"].join(" ");
      parts.push(`${slot}=${value}`);
    }
  }
  return parts.length ? parts.join(", ") : "all null";
}

function renderTranscript(root: HTMLElement): void {
  if (!state.view) return;
  const pane = el("section", "transcript");
  const { done, total } = progress(state.view);
  pane.append(el("h2", "", `transcript (${done}/${total} coded)`));
  const list = el("ul");
  const byLabel = new Map(state.records.map((r) => [r.Label, r]));
  for (const row of paneRows(state.view, byLabel.keys())) {
    const item = el("li", row.masked ? "masked" : row.current ? "current" : "");
    if (row.masked) {
      item.append(el("span", "label", row.label), el("span", "", "· · ·"));
    } else {
      item.append(el("span", "label", row.label),
                  el("span", "speaker", row.speaker ?? ""),
                  el("span", "", row.text ?? ""));
      const record = byLabel.get(row.label);
      if (record) item.append(el("div", "coded", recordSummary(record)));
    }
    list.append(item);
  }
  pane.append(list);

  const controls = el("div", "row");
  const advanceButton = el("button", "", "advance →");
  const coded = state.form !== null
    && byLabel.has(state.form.label)
    && !hasErrors(state.form.diagnostics);
  advanceButton.disabled = finished(state.view) || !coded;
  advanceButton.addEventListener("click", () => guarded(async () => {
    await state.client.advance(state.summary!.sessionId);
    await refresh();
  }));
  const exportButton = el("button", "", "export");
  exportButton.addEventListener("click", () => guarded(async () => {
    state.exportBlocked = null;
    try {
      state.exportText = await state.client.exportText(state.summary!.sessionId);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        state.exportText = null;
        state.exportBlocked = err.diagnostics;
        return;
      }
      throw err;
    }
  }));
  controls.append(advanceButton, exportButton);
  pane.append(controls);

  if (state.exportText !== null) {
    pane.append(el("pre", "export", state.exportText));
  }
  if (state.exportBlocked !== null) {
    const blocked = el("div", "diagnostics");
    blocked.append(el("p", "diag-error", "export blocked:"));
    for (const d of state.exportBlocked) {
      blocked.append(el("p", "diag-error", `${d.code} ${d.label ?? ""} ${d.message}`));
    }
    pane.append(blocked);
  }
  root.append(pane);
}

function fieldRow(form: RecordFormState, slot: SlotName): HTMLElement {
  const row = el("div", "field-row");
  row.append(el("span", "slot-name", slot));

  const qualifierBox = el("span", "qualifiers");
  for (const q of QUALIFIERS) {
    const label = el("label");
    const box = el("input");
    box.type = "checkbox";
    box.checked = form.fields[slot].qualifiers.includes(q);
    box.addEventListener("change", () => {
      const current = form.fields[slot];
      const qualifiers = box.checked
        ? [...current.qualifiers, q]
        : current.qualifiers.filter((x) => x !== q);
      state.form = withField(form, slot, { ...current, qualifiers });
      render();
    });
    label.append(box, q);
    qualifierBox.append(label);
  }
  row.append(qualifierBox);

  const choices = valueChoices(slot);
  if (choices === null) {
    // constrained hour text, e.g. "8" or "8:00"; the null button is the
    // explicit way back to no value
    const input = el("input", "hour");
    input.value = form.fields[slot].value ?? "";
    input.placeholder = "h or h:mm";
    input.addEventListener("change", () => {
      const text = input.value.trim();
      const current = form.fields[slot];
      if (text === "" ) {
        state.form = withField(form, slot, { ...current, value: null });
      } else if (/^(1[0-2]|[1-9])(:[0-5][0-9])?$/.test(text)) {
        state.form = withField(form, slot, { ...current, value: text });
      } else {
        input.classList.add("invalid");
        return;
      }
      render();
    });
    const nullButton = el("button", "", "null");
    nullButton.addEventListener("click", () => {
      state.form = withField(form, slot, {
        ...form.fields[slot], value: null,
      });
      render();
    });
    const hint = el("a", "hour-help", "?");
    hint.href = "#help";
    hint.title = "when to infer a time of day from a bare hour";
    row.append(input, nullButton, hint);
  } else {
    const select = el("select");
    const nullOption = el("option", "", "null");
    nullOption.value = "";
    select.append(nullOption);
    for (const choice of choices) {
      const option = el("option", "", choice);
      option.value = choice;
      select.append(option);
    }
    select.value = form.fields[slot].value ?? "";
    select.addEventListener("change", () => {
      state.form = withField(form, slot, {
        ...form.fields[slot],
        value: select.value === "" ? null : select.value,
      });
      render();
    });
    row.append(select);
  }
  return row;
}

function renderSuggestions(pane: HTMLElement, form: RecordFormState): void {
  if (!form.suggestions.length) return;
  const box = el("div", "suggestions");
  for (const s of form.suggestions) {
    const chip = el("span", `chip chip-${s.confidence}`);
    chip.append(el("span", "", `${s.fieldPath} ← ${s.proposedValue} (${s.rule})`));
    const button = el("button", "",
                      s.confidence === "forced" ? "apply" : "confirm");
    button.addEventListener("click", () => guarded(async () => {
      if (s.confidence === "forced") {
        await acceptForced(s);
      } else {
        state.form = applySuggestion(form, s);
      }
    }));
    chip.append(button);
    box.append(chip);
  }
  pane.append(box);
}

function renderForm(root: HTMLElement): void {
  const pane = el("section", "record-form");
  if (!state.form) {
    if (state.view && finished(state.view)) {
      pane.append(el("h2", "", "dialog fully coded"));
    }
    root.append(pane);
    return;
  }
  const form = state.form;
  pane.append(el("h2", "", `record ${form.label}`));

  const focus = el("div", "row", "calendar fills: ");
  for (const endpoint of ["S", "E"] as Endpoint[]) {
    const label = el("label");
    const radio = el("input");
    radio.type = "radio";
    radio.name = "focused-endpoint";
    radio.checked = state.focused === endpoint;
    radio.addEventListener("change", () => {
      state.focused = endpoint;
      render();
    });
    label.append(radio, endpoint === "S" ? "start" : "end");
    focus.append(label);
  }
  pane.append(focus);

  for (const group of ["S", "E"] as Endpoint[]) {
    const fieldset = el("fieldset");
    fieldset.append(el("legend", "", group === "S" ? "start" : "end"));
    for (const slot of SLOTS) {
      if (slotEndpoint(slot) === group) fieldset.append(fieldRow(form, slot));
    }
    pane.append(fieldset);
  }

  const controls = el("div", "row");
  const submit = el("button", "", "submit");
  submit.addEventListener("click", () => guarded(submitForm));
  controls.append(submit);
  for (const kind of ["alt", "and"] as const) {
    const button = el("button", "",
                      kind === "alt" ? "add alternative" : "add conjunct");
    button.addEventListener("click", () => {
      const parts = splitLabel(form.label);
      if (!parts) return;
      const taken = [...state.records.map((r) => r.Label), form.label];
      const label = conjunctLabel(parts.base, kind, taken);
      const clone = { ...form, label, diagnostics: [], suggestions: [] };
      state.form = clone;
      render();
    });
    controls.append(button);
  }
  pane.append(controls);

  if (form.diagnostics.length) {
    const box = el("div", "diagnostics");
    for (const d of form.diagnostics) {
      box.append(el("p", `diag-${d.severity}`,
                    `${d.code} ${d.fieldPath ?? ""}: ${d.message}`));
    }
    pane.append(box);
  } else if (state.records.some((r) => r.Label === form.label)) {
    pane.append(el("p", "stored", "stored, no diagnostics"));
  }
  renderSuggestions(pane, form);
  root.append(pane);
}

function negotiatedDate(): string | null {
  // most recent stored record with a concrete start date, as a hint of
  // the date currently under discussion
  for (const record of [...state.records].reverse().slice(0, 10)) {
    const month = record.SMonth, date = record.SDate;
    if (month.value && date.value
        && !month.qualifiers.length && !date.qualifiers.length) {
      const weekday = record.SWeekDay.value;
      return [weekday, month.value, date.value].filter(Boolean).join(" ");
    }
  }
  return null;
}

function renderSide(root: HTMLElement): void {
  const pane = el("aside", "side");
  if (state.summary) {
    pane.append(el("h2", "", `dialog of ${state.summary.dialogDate}`));
  }

  const toggle = el("label", "toggle");
  const box = el("input");
  box.type = "checkbox";
  box.checked = state.showNegotiated;
  box.addEventListener("change", () => {
    state.showNegotiated = box.checked;
    render();
  });
  toggle.append(box, "show date under discussion");
  pane.append(toggle);
  if (state.showNegotiated) {
    const hint = negotiatedDate();
    pane.append(el("div", "negotiated",
                   hint ? `under discussion: ${hint}` : "no concrete date yet"));
  }

  if (state.calendar && state.summary) {
    const cal = state.calendar;
    pane.append(el("h3", "", cal.title));
    const table = el("table", "calendar");
    const head = el("tr");
    for (const weekday of cal.weekdays) {
      head.append(el("th", "", weekday.slice(0, 2)));
    }
    table.append(head);
    for (const week of cal.weeks) {
      const tr = el("tr");
      for (const day of week) {
        const td = el("td");
        if (day !== null) {
          const button = el("button", "day", String(day));
          if (isDialogDay(cal, state.summary.dialogDate, day)) {
            button.classList.add("dialog-day");
          }
          button.addEventListener("click", () => {
            if (!state.form) return;
            const fill = fillForDay(cal, day);
            if (fill) {
              state.form = fillFromCalendar(
                state.form, state.focused, fill.weekday, fill.month, fill.date);
              render();
            }
          });
          td.append(button);
        }
        tr.append(td);
      }
      table.append(tr);
    }
    pane.append(table);

    const nav = el("div", "row");
    for (const [text, delta] of [["←", -1], ["→", 1]] as const) {
      const button = el("button", "", text);
      button.addEventListener("click", () => guarded(async () => {
        let month = monthNumber(cal.month) + delta;
        let year = cal.year;
        if (month === 0) { month = 12; year -= 1; }
        if (month === 13) { month = 1; year += 1; }
        state.calendar = await state.client.calendarMonth(year, month);
      }));
      nav.append(button);
    }
    pane.append(nav);
  }

  if (state.cards.length) {
    const help = el("div", "help");
    help.id = "help";
    help.append(el("h3", "", "judgment calls"));
    for (const card of state.cards) {
      const block = el("details");
      block.append(el("summary", "", card.title), el("p", "", card.body));
      help.append(block);
    }
    pane.append(help);
  }
  root.append(pane);
}

function render(): void {
  const root = document.getElementById("app");
  if (!root) return;
  root.replaceChildren();
  renderBanner(root);
  if (!state.summary) {
    renderConnect(root);
    return;
  }
  const main = el("div", "columns");
  renderTranscript(main);
  renderForm(main);
  renderSide(main);
  root.append(main);
}

function main(): void {
  const match = /session=([^&]+)/.exec(window.location.hash);
  if (match) {
    void guarded(() => openSession(decodeURIComponent(match[1])));
  }
  render();
}

window.addEventListener("DOMContentLoaded", main);
