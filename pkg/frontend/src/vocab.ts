/**
 * Closed vocabularies for the ten record fields.
 *
 * Every value the form can submit comes from these lists, except clock
 * hours, which go through a constrained text input checked against
 * HOUR_PATTERN. Null is always an explicit choice in the dropdowns,
 * never an empty string.
 */

export const WEEKDAYS = [
  "sunday", "monday", "tuesday", "wednesday", "thursday", "friday", "saturday",
] as const;

export const MONTHS = [
  "january", "february", "march", "april", "may", "june",
  "july", "august", "september", "october", "november", "december",
] as const;

export const DATES: readonly string[] =
  Array.from({ length: 31 }, (_, i) => String(i + 1));

export const TIMES_OF_DAY = [
  "morning", "afternoon", "evening", "breakfast", "lunch", "dinner", "all-day",
] as const;

export const QUALIFIERS = [
  "before", "after", "during", "early", "mid", "late",
] as const;

// 12-hour clock, optional two-digit minutes, no am/pm marker.
export const HOUR_PATTERN = /^(1[0-2]|[1-9])(?::[0-5][0-9])?$/;

export const SLOTS = [
  "SWeekDay", "SMonth", "SDate", "SHourSpec", "STimeOfDay",
  "EWeekDay", "EMonth", "EDate", "EHourSpec", "ETimeOfDay",
] as const;

export type SlotName = (typeof SLOTS)[number];
export type Endpoint = "S" | "E";
export type FieldKind = "weekday" | "month" | "date" | "hour" | "timeOfDay";

export interface FieldJson {
  qualifiers: string[];
  value: string | null;
}

export type RecordJson = { Label: string } & Record<SlotName, FieldJson>;

export function slotKind(slot: SlotName): FieldKind {
  if (slot.endsWith("WeekDay")) return "weekday";
  if (slot.endsWith("HourSpec")) return "hour";
  if (slot.endsWith("Month")) return "month";
  if (slot.endsWith("Date")) return "date";
  return "timeOfDay";
}

export function slotEndpoint(slot: SlotName): Endpoint {
  return slot.startsWith("S") ? "S" : "E";
}

/** Dropdown choices for a slot; null means "free text, hour-shaped". */
export function valueChoices(slot: SlotName): readonly string[] | null {
  switch (slotKind(slot)) {
    case "weekday": return WEEKDAYS;
    case "month": return MONTHS;
    case "date": return DATES;
    case "timeOfDay": return TIMES_OF_DAY;
    case "hour": return null;
  }
}

export function isValidValue(slot: SlotName, value: string): boolean {
  const choices = valueChoices(slot);
  if (choices === null) return HOUR_PATTERN.test(value);
  return choices.includes(value);
}

export function isQualifier(token: string): boolean {
  return (QUALIFIERS as readonly string[]).includes(token);
}
