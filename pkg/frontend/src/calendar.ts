/**
 * Month-grid view model and the click-to-fill mapping. The weekday of
 * a clicked day comes straight from its column, so the fill can never
 * disagree with the grid the coder is looking at.
 */

import type { MonthPayload } from "./api.js";
import { MONTHS } from "./vocab.js";

export interface DayCell {
  day: number;
  weekday: string;
  row: number;
  col: number;
}

export function gridCells(payload: MonthPayload): (DayCell | null)[][] {
  return payload.weeks.map((week, row) =>
    week.map((day, col) =>
      day === null ? null : {
        day,
        weekday: payload.weekdays[col],
        row,
        col,
      }));
}

/** Field values a click on `day` contributes to the focused endpoint. */
export function fillForDay(
  payload: MonthPayload, day: number,
): { weekday: string; month: string; date: string } | null {
  for (const row of gridCells(payload)) {
    for (const cell of row) {
      if (cell !== null && cell.day === day) {
        return { weekday: cell.weekday, month: payload.month, date: String(day) };
      }
    }
  }
  return null;
}

export function monthNumber(token: string): number {
  const index = (MONTHS as readonly string[]).indexOf(token);
  if (index < 0) throw new Error(`not a month: ${token}`);
  return index + 1;
}

/** Dialog dates arrive as ISO yyyy-mm-dd strings from the service. */
export function isDialogDay(
  payload: MonthPayload, dialogDateIso: string, day: number,
): boolean {
  const [year, month, dayOfMonth] = dialogDateIso.split("-").map(Number);
  return payload.year === year
    && monthNumber(payload.month) === month
    && day === dayOfMonth;
}
